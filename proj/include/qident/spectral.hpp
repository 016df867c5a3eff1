// Copyright 2026 The qident Authors.
// SPDX-License-Identifier: Apache-2.0

// Distance from a unitary to the global phases {e^{i phi} 1}, the identity
// and equivalence decisions built on it, and restriction to an invariant
// subspace described by a membership circuit.
//
// For a unitary U the operator U - e^{i phi} 1 is normal, so its norm is the
// largest chord |e^{i theta_j} - e^{i phi}| over the spectrum. Minimizing over
// phi puts e^{i phi} at the midpoint of the shortest arc covering every
// eigenphase; with arc length L the distance is 2 sin(L/4).

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qident/circuit.hpp"
#include "qident/dense_sim.hpp"
#include "qident/error.hpp"

namespace qident {

struct CoveringArc {
    double start = 0.0;   ///< in [0, 2pi)
    double length = 0.0;  ///< in [0, 2pi)
};

/// Shortest circular arc containing every phase: 2pi minus the largest gap
/// between circularly consecutive phases. Equal gaps resolve to the
/// smallest arc start.
inline CoveringArc minimal_covering_arc(std::vector<double> phases) {
    if (phases.empty()) throw InvalidArgument("minimal_covering_arc: empty phase list");
    for (auto& p : phases) p = wrap_phase(p);
    std::sort(phases.begin(), phases.end());

    constexpr double kTie = 1e-12;
    const std::size_t n = phases.size();
    double best_gap = -1.0;
    double best_start = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        // gap from phases[i] forward to the next phase; the arc starts after it
        const std::size_t j = (i + 1) % n;
        const double gap = j == 0 ? phases[0] + kTwoPi - phases[i] : phases[j] - phases[i];
        const double start = phases[j];
        const bool longer = gap > best_gap + kTie;
        const bool tie = !longer && std::abs(gap - best_gap) <= kTie && start < best_start;
        if (longer || tie) {
            best_gap = longer ? gap : std::max(gap, best_gap);
            best_start = start;
        }
    }
    return {best_start, std::clamp(kTwoPi - best_gap, 0.0, std::nextafter(kTwoPi, 0.0))};
}

struct SpectralReport {
    std::vector<double> eigenphases;
    double arc_start = 0.0;
    double arc_length = 0.0;
    double optimal_phase = 0.0;
    double distance = 0.0;
};

inline SpectralReport spectral_report(std::vector<double> phases) {
    std::sort(phases.begin(), phases.end());
    const CoveringArc arc = minimal_covering_arc(phases);
    SpectralReport r;
    r.eigenphases = std::move(phases);
    r.arc_start = arc.start;
    r.arc_length = arc.length;
    r.optimal_phase = wrap_phase(arc.start + arc.length / 2);
    r.distance = 2.0 * std::sin(arc.length / 4);
    return r;
}

/// min over phi of ||U - e^{i phi} 1||, with the minimizing phase.
inline SpectralReport distance_to_phase_multiple(const ComplexMatrix& u) {
    return spectral_report(eigenphases(u));
}

/// Brute-force reference: minimum of ||U - e^{i phi} 1|| over the grid
/// phi_k = 2 pi k / points, each norm taken from a Hermitian eigen-solve of
/// M^dagger M. Lipschitz pruning (|f(a) - f(b)| <= |a - b|) skips grid
/// blocks that cannot beat the incumbent, so the result equals the full
/// grid minimum. Does not use the spectrum of U.
struct GridMinimum {
    double value = 0.0;
    double phi = 0.0;
    std::size_t evaluations = 0;
};

inline GridMinimum grid_distance(const ComplexMatrix& u, std::size_t points) {
    if (points == 0) throw InvalidArgument("grid_distance: need at least one grid point");
    const auto dim = u.rows();
    const double h = kTwoPi / static_cast<double>(points);
    GridMinimum best{std::numeric_limits<double>::infinity(), 0.0, 0};

    auto eval = [&](std::size_t k) {
        const double phi = h * static_cast<double>(k);
        const ComplexMatrix m = u - std::polar(1.0, phi) * ComplexMatrix::Identity(dim, dim);
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m.adjoint() * m, Eigen::EigenvaluesOnly);
        const double value = std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
        ++best.evaluations;
        if (value < best.value) {
            best.value = value;
            best.phi = phi;
        }
        return value;
    };

    const auto block = std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(static_cast<double>(points))));
    const std::size_t blocks = (points + block - 1) / block;
    std::vector<double> anchor(blocks);
    for (std::size_t b = 0; b < blocks; ++b) anchor[b] = eval(b * block);

    std::vector<std::pair<double, std::size_t>> bounds;
    for (std::size_t b = 0; b < blocks; ++b) {
        const std::size_t first = b * block;
        const std::size_t end = std::min(first + block, points);
        const double right = anchor[(b + 1) % blocks];
        const double span = static_cast<double>(end - first) * h;  // distance to the next anchor
        // lower bound of a 1-Lipschitz function on an interval with known endpoints
        bounds.emplace_back((anchor[b] + right - span) / 2, b);
    }
    std::sort(bounds.begin(), bounds.end());
    for (const auto& [lower, b] : bounds) {
        if (lower > best.value) break;
        const std::size_t first = b * block;
        const std::size_t end = std::min(first + block, points);
        for (std::size_t k = first + 1; k < end; ++k) eval(k);
    }
    return best;
}

// ---------------------------------------------------------------------------
// Decisions
// ---------------------------------------------------------------------------

enum class Verdict { Far, Near, PromiseViolated };

constexpr std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Far: return "FAR";
        case Verdict::Near: return "NEAR";
        case Verdict::PromiseViolated: return "PROMISE_VIOLATED";
    }
    return "?";
}

struct IdentityVerdict {
    Verdict verdict = Verdict::Near;
    double distance = 0.0;
    double optimal_phase = 0.0;
    double delta = 0.0;
    double mu = 0.0;
    SpectralReport report;
};

inline void check_thresholds(double delta, double mu) {
    if (!(mu >= 0.0 && mu < delta && delta <= 2.0))
        throw InvalidArgument("thresholds must satisfy 0 <= mu < delta <= 2 (got delta=" + format_angle(delta) +
                              ", mu=" + format_angle(mu) + ")");
}

inline IdentityVerdict classify_distance(const SpectralReport& report, double delta, double mu) {
    check_thresholds(delta, mu);
    IdentityVerdict v;
    v.distance = report.distance;
    v.optimal_phase = report.optimal_phase;
    v.delta = delta;
    v.mu = mu;
    v.report = report;
    if (report.distance >= delta) {
        v.verdict = Verdict::Far;
    } else if (report.distance <= mu) {
        v.verdict = Verdict::Near;
    } else {
        v.verdict = Verdict::PromiseViolated;
    }
    return v;
}

/// Identity check on the circuit's exact unitary. Inputs that fall between
/// mu and delta are reported as PROMISE_VIOLATED.
inline IdentityVerdict decide_identity(const Circuit& c, double delta, double mu) {
    check_thresholds(delta, mu);
    return classify_distance(distance_to_phase_multiple(circuit_unitary(c)), delta, mu);
}

// ---------------------------------------------------------------------------
// Subspaces
// ---------------------------------------------------------------------------

/// Membership circuit V on n + m qubits: psi (on the first n qubits) is in
/// the subspace iff V (psi (x) |0^m>) has its last qubit in |1>.
struct SubspaceSpec {
    Circuit v;
    std::size_t n = 0;
    std::size_t m = 0;

    std::size_t flag_qubit() const { return n + m - 1; }

    void validate() const {
        if (m == 0) throw InvalidArgument("subspace spec needs at least one ancilla (the membership flag)");
        if (v.n_qubits != n + m)
            throw InvalidArgument("subspace circuit has " + std::to_string(v.n_qubits) + " qubits, expected n + m = " +
                                  std::to_string(n + m));
        validate_circuit(v);
    }
};

struct SubspaceProjection {
    ComplexMatrix membership;  ///< M_V on the input register
    ComplexMatrix basis;       ///< orthonormal columns spanning the subspace

    ComplexMatrix projector() const { return basis * basis.adjoint(); }
    std::size_t dimension() const { return static_cast<std::size_t>(basis.cols()); }
};

inline constexpr double kMembershipTolerance = 1e-6;

/// M_V = (1 (x) <0^m|) V^dagger (1 (x) |1><1|_last) V (1 (x) |0^m>), its
/// eigenvalue-1 eigenspace as the subspace. Intermediate eigenvalues mean V
/// is not a clean membership test and raise SubspaceError.
inline SubspaceProjection subspace_projector(const SubspaceSpec& s) {
    s.validate();
    check_state_cap(s.n + s.m);
    const auto in_dim = static_cast<Eigen::Index>(dim_of(s.n));
    const std::size_t full = dim_of(s.n + s.m);
    const std::size_t flag = std::size_t{1} << s.flag_qubit();

    // rows: basis states of the full register with the flag set
    ComplexMatrix flagged(static_cast<Eigen::Index>(full / 2), in_dim);
    for (Eigen::Index j = 0; j < in_dim; ++j) {
        const StateVector out = apply_circuit(basis_state(s.n + s.m, static_cast<std::size_t>(j)), s.v);
        Eigen::Index row = 0;
        for (std::size_t k = 0; k < full; ++k)
            if (k & flag) flagged(row++, j) = out(static_cast<Eigen::Index>(k));
    }
    SubspaceProjection p;
    p.membership = flagged.adjoint() * flagged;

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(p.membership);
    if (es.info() != Eigen::Success) throw NumericalFailure("subspace_projector: eigen-solve failed");
    std::vector<Eigen::Index> keep;
    for (Eigen::Index j = 0; j < in_dim; ++j) {
        const double lambda = es.eigenvalues()(j);
        if (lambda > kMembershipTolerance && lambda < 1.0 - kMembershipTolerance)
            throw SubspaceError(SubspaceError::Kind::NotCleanMembership,
                                "subspace circuit is not a clean membership test (eigenvalue " + format_angle(lambda) + ")");
        if (lambda >= 1.0 - kMembershipTolerance) keep.push_back(j);
    }
    p.basis.resize(in_dim, static_cast<Eigen::Index>(keep.size()));
    for (std::size_t c = 0; c < keep.size(); ++c) p.basis.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(keep[c]);
    return p;
}

inline constexpr double kInvarianceTolerance = 1e-7;

/// U_x U_y^dagger as a matrix (U_y^dagger applied first).
inline ComplexMatrix relative_unitary(const Circuit& ux, const Circuit& uy) {
    if (ux.n_qubits != uy.n_qubits) throw InvalidArgument("circuits act on different qubit counts");
    return circuit_unitary(concat(inverse(uy), ux));
}

/// B^dagger (U_x U_y^dagger) B for the subspace basis B. Throws
/// SubspaceError when the subspace is empty or not invariant.
inline ComplexMatrix restrict_to(const ComplexMatrix& a, const SubspaceProjection& p) {
    if (p.dimension() == 0) throw SubspaceError(SubspaceError::Kind::Empty, "subspace is {0}");
    const ComplexMatrix leak = a * p.basis - p.basis * (p.basis.adjoint() * a * p.basis);
    const double leakage = operator_norm(leak);
    if (leakage > kInvarianceTolerance)
        throw SubspaceError(SubspaceError::Kind::NotInvariant,
                            "subspace not invariant under U_x U_y^dagger (leakage " + format_angle(leakage) + ")");
    ComplexMatrix restricted = p.basis.adjoint() * a * p.basis;
    if (unitarity_error(restricted) > kInvarianceTolerance)
        throw SubspaceError(SubspaceError::Kind::NotInvariant, "restricted operator is not unitary");
    return restricted;
}

inline ComplexMatrix restricted_operator(const Circuit& ux, const Circuit& uy, const SubspaceSpec& s) {
    if (ux.n_qubits != s.n || uy.n_qubits != s.n) throw InvalidArgument("circuits and subspace spec disagree on n");
    return restrict_to(relative_unitary(ux, uy), subspace_projector(s));
}

/// Identity check on U_x U_y^dagger, restricted to the subspace when one is given.
inline IdentityVerdict decide_equivalence(const Circuit& ux, const Circuit& uy, const std::optional<SubspaceSpec>& s,
                                          double delta, double mu) {
    check_thresholds(delta, mu);
    const ComplexMatrix a = s ? restricted_operator(ux, uy, *s) : relative_unitary(ux, uy);
    return classify_distance(distance_to_phase_multiple(a), delta, mu);
}

}  // namespace qident
