// Copyright 2026 The qident Authors.
// SPDX-License-Identifier: Apache-2.0

// QMA acceptance semantics and the two-witness phase-estimation verifier
// for "U_x U_y^dagger is far from every global phase on V".
//
// A verifier acts on input (witness) qubits [0, n_input) followed by
// ancillas [n_input, n_input + m_ancilla), the ancillas starting in |0...0>.
// It accepts when the output qubit reads 1.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qident/circuit.hpp"
#include "qident/dense_sim.hpp"
#include "qident/error.hpp"
#include "qident/spectral.hpp"

namespace qident {

struct VerifierSpec {
    Circuit circuit;
    std::size_t n_input = 0;
    std::size_t m_ancilla = 0;
    std::size_t output_qubit = 0;
    std::optional<double> epsilon;

    void validate() const {
        validate_circuit(circuit);
        if (n_input + m_ancilla != circuit.n_qubits)
            throw InvalidArgument("verifier: n_input + m_ancilla must equal the circuit's qubit count");
        if (output_qubit >= circuit.n_qubits) throw InvalidArgument("verifier: output qubit out of range");
        if (epsilon && !(*epsilon > 0.0 && *epsilon <= 1.0 / 3.0))
            throw InvalidArgument("verifier: epsilon must lie in (0, 1/3]");
    }

    /// Reads the register split from the circuit's `output` and `ancillas`
    /// directives; both are required.
    static VerifierSpec from_circuit(const Circuit& c) {
        if (!c.output_qubit) throw InvalidArgument("verifier circuit lacks an 'output' directive");
        if (!c.ancilla_count) throw InvalidArgument("verifier circuit lacks an 'ancillas' directive");
        VerifierSpec v{c, c.n_qubits - *c.ancilla_count, *c.ancilla_count, *c.output_qubit, std::nullopt};
        v.validate();
        return v;
    }
};

/// Pure state or finite mixture of pure states on the input register.
struct WitnessState {
    std::vector<std::pair<double, StateVector>> components;

    static WitnessState pure(StateVector psi) {
        WitnessState w;
        w.components.emplace_back(1.0, std::move(psi));
        return w;
    }

    void validate(std::size_t dim) const {
        if (components.empty()) throw InvalidArgument("witness has no components");
        double total = 0.0;
        for (const auto& [weight, psi] : components) {
            if (weight < 0.0) throw InvalidArgument("witness mixture weight is negative");
            if (static_cast<std::size_t>(psi.size()) != dim)
                throw DimensionMismatch("witness dimension " + std::to_string(psi.size()) + " does not match input register " +
                                        std::to_string(dim));
            if (std::abs(psi.norm() - 1.0) > kNormTolerance) throw InvalidArgument("witness component is not normalized");
            total += weight;
        }
        if (std::abs(total - 1.0) > kNormTolerance) throw InvalidArgument("witness mixture weights do not sum to 1");
    }
};

/// Probability that the output qubit reads 1.
inline double output_one_probability(const StateVector& psi, std::size_t output_qubit) {
    const std::size_t bit = std::size_t{1} << output_qubit;
    double p = 0.0;
    for (Eigen::Index k = 0; k < psi.size(); ++k)
        if (static_cast<std::size_t>(k) & bit) p += std::norm(psi(k));
    return p;
}

/// psi on the input register padded with |0^m> ancillas.
inline StateVector with_clean_ancillas(const StateVector& psi, std::size_t m_ancilla) {
    StateVector full = StateVector::Zero(psi.size() * static_cast<Eigen::Index>(dim_of(m_ancilla)));
    full.head(psi.size()) = psi;
    return full;
}

/// tr(U (rho (x) |0..0><0..0|) U^dagger P_1), mixtures by linearity.
inline double acceptance_probability(const VerifierSpec& v, const WitnessState& w) {
    v.validate();
    w.validate(dim_of(v.n_input));
    check_state_cap(v.circuit.n_qubits);
    double p = 0.0;
    for (const auto& [weight, psi] : w.components) {
        if (weight == 0.0) continue;
        const StateVector out = apply_circuit(with_clean_ancillas(psi, v.m_ancilla), v.circuit);
        p += weight * output_one_probability(out, v.output_qubit);
    }
    return std::clamp(p, 0.0, 1.0);
}

inline double acceptance_probability(const VerifierSpec& v, const StateVector& psi) {
    return acceptance_probability(v, WitnessState::pure(psi));
}

struct MaxAcceptance {
    double p_max = 0.0;
    StateVector witness;
};

inline constexpr std::size_t kMaxWitnessQubits = 10;

/// Largest eigenvalue of Q = (1 (x) <0^m|) U^dagger P_1 U (1 (x) |0^m>) and
/// its eigenvector; no witness, pure or mixed, is accepted with higher
/// probability.
inline MaxAcceptance max_acceptance(const VerifierSpec& v) {
    v.validate();
    if (v.n_input > kMaxWitnessQubits)
        throw CapExceeded("max_acceptance limited to " + std::to_string(kMaxWitnessQubits) + " input qubits");
    check_state_cap(v.circuit.n_qubits);
    const auto in_dim = static_cast<Eigen::Index>(dim_of(v.n_input));
    const std::size_t full = dim_of(v.circuit.n_qubits);
    const std::size_t bit = std::size_t{1} << v.output_qubit;

    ComplexMatrix accepted(static_cast<Eigen::Index>(full / 2), in_dim);
    for (Eigen::Index j = 0; j < in_dim; ++j) {
        const StateVector out = apply_circuit(basis_state(v.circuit.n_qubits, static_cast<std::size_t>(j)), v.circuit);
        Eigen::Index row = 0;
        for (std::size_t k = 0; k < full; ++k)
            if (k & bit) accepted(row++, j) = out(static_cast<Eigen::Index>(k));
    }
    const ComplexMatrix q = accepted.adjoint() * accepted;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(q);
    if (es.info() != Eigen::Success) throw NumericalFailure("max_acceptance: eigen-solve failed");
    MaxAcceptance out;
    out.p_max = std::clamp(es.eigenvalues()(in_dim - 1), 0.0, 1.0);
    out.witness = es.eigenvectors().col(in_dim - 1);
    return out;
}

enum class QmaCase { Case1, Case2, PromiseViolated };

constexpr std::string_view to_string(QmaCase c) {
    switch (c) {
        case QmaCase::Case1: return "CASE1";
        case QmaCase::Case2: return "CASE2";
        case QmaCase::PromiseViolated: return "PROMISE_VIOLATED";
    }
    return "?";
}

inline QmaCase classify_acceptance(double p_max, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 0.5)) throw InvalidArgument("epsilon must lie in (0, 1/2)");
    if (p_max >= 1.0 - epsilon) return QmaCase::Case1;
    if (p_max <= epsilon) return QmaCase::Case2;
    return QmaCase::PromiseViolated;
}

inline QmaCase classify_verifier(const VerifierSpec& v, double epsilon) {
    return classify_acceptance(max_acceptance(v).p_max, epsilon);
}

// ---------------------------------------------------------------------------
// Phase estimation
// ---------------------------------------------------------------------------

/// |2^-t sum_{k < 2^t} e^{i k (theta - 2 pi y / 2^t)}|^2
inline double qpe_kernel(double theta, std::size_t y, std::size_t t) {
    const std::size_t m = dim_of(t);
    const double x = theta - kTwoPi * static_cast<double>(y) / static_cast<double>(m);
    Complex sum = 0.0;
    for (std::size_t k = 0; k < m; ++k) sum += std::polar(1.0, static_cast<double>(k) * x);
    return std::norm(sum) / static_cast<double>(m * m);
}

/// Kernel table K(theta_j, y) for every phase and outcome.
inline Eigen::MatrixXd qpe_kernel_table(const std::vector<double>& phases, std::size_t t) {
    const std::size_t m = dim_of(t);
    Eigen::MatrixXd table(static_cast<Eigen::Index>(phases.size()), static_cast<Eigen::Index>(m));
    for (std::size_t j = 0; j < phases.size(); ++j)
        for (std::size_t y = 0; y < m; ++y)
            table(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(y)) = qpe_kernel(phases[j], y, t);
    return table;
}

/// Outcome distribution of t-bit phase estimation of `a` on `psi`, from the
/// eigen-expansion psi = sum_j c_j |v_j>.
inline std::vector<double> qpe_distribution(const ComplexMatrix& a, const StateVector& psi, std::size_t t) {
    if (a.rows() != psi.size()) throw DimensionMismatch("qpe_distribution: operator and state dimensions differ");
    if (std::abs(psi.norm() - 1.0) > kNormTolerance) throw InvalidArgument("qpe_distribution: state is not normalized");
    const UnitarySpectrum spec = unitary_spectrum(a);
    const StateVector c = spec.vectors.adjoint() * psi;
    const Eigen::MatrixXd table = qpe_kernel_table(spec.phases, t);
    std::vector<double> dist(dim_of(t), 0.0);
    for (Eigen::Index j = 0; j < c.size(); ++j) {
        const double w = std::norm(c(j));
        for (std::size_t y = 0; y < dist.size(); ++y) dist[y] += w * table(j, static_cast<Eigen::Index>(y));
    }
    return dist;
}

/// Quantum Fourier transform |y> -> 2^{-t/2} sum_k e^{2 pi i y k / 2^t} |k>
/// on the listed qubits (first listed = least significant) of an
/// n_total-qubit register.
inline Circuit qft_circuit(std::size_t n_total, const std::vector<std::size_t>& reg) {
    using std::numbers::pi;
    Circuit c(n_total);
    const std::size_t t = reg.size();
    for (std::size_t jj = t; jj-- > 0;) {
        c.add(Gate::single(GateKind::H, reg[jj]));
        for (std::size_t l = jj; l-- > 0;)
            c.add(Gate::phase(pi / static_cast<double>(dim_of(jj - l)), {{reg[l], Polarity::One}}, {reg[jj]}));
    }
    for (std::size_t i = 0; i < t / 2; ++i) c.add(Gate::two(GateKind::Swap, reg[i], reg[t - 1 - i]));
    return c;
}

namespace detail {

inline void append(Circuit& dst, const Circuit& src) {
    dst.gates.insert(dst.gates.end(), src.gates.begin(), src.gates.end());
}

}  // namespace detail

/// Textbook phase estimation of the n-qubit circuit `a` acting on `target`
/// qubits, read into `phase` qubits: Hadamards, controlled a^{2^j} from
/// phase bit j, inverse QFT.
inline Circuit qpe_circuit(std::size_t n_total, const Circuit& a, const std::vector<std::size_t>& target,
                           const std::vector<std::size_t>& phase) {
    Circuit c(n_total);
    for (auto q : phase) c.add(Gate::single(GateKind::H, q));
    const Circuit placed = embed(a, n_total, target);
    for (std::size_t j = 0; j < phase.size(); ++j) {
        Circuit once(n_total);
        for (const auto& g : placed.gates) append_controlled(once, g, phase[j]);
        for (std::size_t rep = 0; rep < dim_of(j); ++rep) detail::append(c, once);
    }
    detail::append(c, inverse(qft_circuit(n_total, phase)));
    return c;
}

// ---------------------------------------------------------------------------
// Two-witness equivalence verifier
// ---------------------------------------------------------------------------

/// Phase-register size and promise thresholds.
struct Fig1Params {
    std::size_t t = 4;
    double delta = 1.0;
    double mu = 0.0;

    /// Accept when the half-angle chord sqrt(2 (1 - cos(D/2))) of the
    /// estimated phase difference D reaches sqrt((delta^2 + mu^2) / 2).
    double chord_threshold() const { return std::sqrt((delta * delta + mu * mu) / 2); }

    /// Smallest t with pi / 2^t <= (delta^2 - mu^2) / 8, and at least 4.
    static std::size_t required_bits(double delta, double mu) {
        check_thresholds(delta, mu);
        const double bits = std::ceil(std::log2(8 * std::numbers::pi / (delta * delta - mu * mu)));
        return std::max<std::size_t>(4, static_cast<std::size_t>(std::max(0.0, bits)));
    }

    static Fig1Params sized(double delta, double mu) { return {required_bits(delta, mu), delta, mu}; }

    bool meets_accuracy_rule() const { return t >= required_bits(delta, mu); }

    void validate() const {
        check_thresholds(delta, mu);
        if (t < 2) throw InvalidArgument("phase register needs at least 2 bits");
    }
};

/// Circular difference 2 pi ((y_a - y_b) mod 2^t) / 2^t, as a representative in (-pi, pi].
inline double circular_difference(std::size_t y_a, std::size_t y_b, std::size_t t) {
    const std::size_t m = dim_of(t);
    const std::size_t d = (y_a + m - y_b) % m;
    double delta = kTwoPi * static_cast<double>(d) / static_cast<double>(m);
    if (delta > std::numbers::pi) delta -= kTwoPi;
    return delta;
}

/// sqrt(2 (1 - cos(D/2))) = 2 |sin(D/4)|, the distance of a two-phase
/// spectrum with separation D from the global phases.
inline double half_angle_chord(double difference) { return 2.0 * std::abs(std::sin(difference / 4)); }

/// Classical accept predicate on one pair of phase readouts.
inline bool accepts_difference(std::size_t y_a, std::size_t y_b, const Fig1Params& p) {
    return half_angle_chord(circular_difference(y_a, y_b, p.t)) >= p.chord_threshold();
}

struct ExtremalPair {
    StateVector psi_a;
    StateVector psi_b;
    double alpha = 0.0;
    double beta = 0.0;
};

inline constexpr double kDegenerateArc = 1e-9;

/// Eigenvectors of `a` at the two endpoints of its minimal covering arc.
inline ExtremalPair find_extremal_eigenvectors(const ComplexMatrix& a) {
    const UnitarySpectrum spec = unitary_spectrum(a);
    const CoveringArc arc = minimal_covering_arc(spec.phases);
    if (arc.length < kDegenerateArc) throw InvalidArgument("degenerate spectrum: no separating witnesses exist");
    const double end = wrap_phase(arc.start + arc.length);
    auto nearest = [&](double target) {
        std::size_t best = 0;
        double best_gap = 10.0;
        for (std::size_t j = 0; j < spec.phases.size(); ++j) {
            const double gap = std::abs(std::remainder(spec.phases[j] - target, kTwoPi));
            if (gap < best_gap) {
                best_gap = gap;
                best = j;
            }
        }
        return best;
    };
    const std::size_t ia = nearest(arc.start);
    const std::size_t ib = nearest(end);
    return {spec.vectors.col(static_cast<Eigen::Index>(ia)), spec.vectors.col(static_cast<Eigen::Index>(ib)),
            spec.phases[ia], spec.phases[ib]};
}

/// Register layout of the emitted verifier circuit.
struct Fig1Layout {
    std::size_t n = 0;  ///< qubits per witness
    std::size_t t = 0;  ///< phase bits per witness
    std::size_t m = 0;  ///< membership ancillas per witness (0 = full space)

    std::size_t witness_a(std::size_t i) const { return i; }
    std::size_t witness_b(std::size_t i) const { return n + i; }
    std::size_t phase_a(std::size_t i) const { return 2 * n + i; }
    std::size_t phase_b(std::size_t i) const { return 2 * n + t + i; }
    std::size_t member_a(std::size_t i) const { return 2 * n + 2 * t + i; }
    std::size_t member_b(std::size_t i) const { return 2 * n + 2 * t + m + i; }
    std::size_t flag_a() const { return 2 * n + 2 * t + 2 * m; }
    std::size_t flag_b() const { return flag_a() + 1; }
    std::size_t output() const { return m > 0 ? flag_b() + 1 : 2 * n + 2 * t; }
    std::size_t total() const { return output() + 1; }

    static std::vector<std::size_t> range(std::size_t first, std::size_t count) { return contiguous_map(count, first); }
};

/// The phase-estimation equivalence verifier, evaluated in the eigenbasis
/// of A = U_x U_y^dagger restricted to the subspace.
///
/// Both witness registers pass the membership check (V, copy the flag,
/// V^dagger), which for a clean membership test projects each register onto
/// the subspace. Each register then undergoes t-bit phase estimation of A;
/// the verifier accepts when both flags are set and the readout pair passes
/// accepts_difference. With B the lifted eigenbasis of A on the subspace and
/// S_jk the accept mass of the product kernel, a witness w (register a on the
/// low qubits) is accepted with probability sum_jk |(B^dagger W conj(B))_jk|^2 S_jk,
/// where W is w reshaped to a 2^n x 2^n matrix.
class EquivalenceVerifier {
public:
    EquivalenceVerifier(const Circuit& ux, const Circuit& uy, const std::optional<SubspaceSpec>& subspace, Fig1Params params)
        : ux_(ux), uy_(uy), subspace_(subspace), params_(params) {
        params_.validate();
        if (ux.n_qubits != uy.n_qubits) throw InvalidArgument("circuits act on different qubit counts");
        n_ = ux.n_qubits;
        const ComplexMatrix a = relative_unitary(ux, uy);
        ComplexMatrix basis;
        if (subspace_) {
            if (subspace_->n != n_) throw InvalidArgument("subspace spec and circuits disagree on n");
            const SubspaceProjection proj = subspace_projector(*subspace_);
            restricted_ = restrict_to(a, proj);
            basis = proj.basis;
        } else {
            restricted_ = a;
            basis = ComplexMatrix::Identity(a.rows(), a.cols());
        }
        const UnitarySpectrum spec = unitary_spectrum(restricted_);
        phases_ = spec.phases;
        lifted_ = basis * spec.vectors;

        const std::size_t mm = dim_of(params_.t);
        const Eigen::MatrixXd kernel = qpe_kernel_table(phases_, params_.t);
        Eigen::MatrixXd accept = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(mm), static_cast<Eigen::Index>(mm));
        for (std::size_t ya = 0; ya < mm; ++ya)
            for (std::size_t yb = 0; yb < mm; ++yb)
                if (accepts_difference(ya, yb, params_)) accept(static_cast<Eigen::Index>(ya), static_cast<Eigen::Index>(yb)) = 1.0;
        accept_mass_ = kernel * accept * kernel.transpose();
    }

    const Fig1Params& params() const { return params_; }
    std::size_t witness_qubits() const { return n_; }
    const std::vector<double>& restricted_phases() const { return phases_; }
    const ComplexMatrix& restricted_operator() const { return restricted_; }

    /// Coefficients of the (subspace-projected) witness in the product eigenbasis.
    ComplexMatrix coefficients(const StateVector& w) const {
        const auto d = static_cast<Eigen::Index>(dim_of(n_));
        if (w.size() != d * d) throw DimensionMismatch("pair witness must live on 2n qubits");
        const ComplexMatrix wm = Eigen::Map<const ComplexMatrix>(w.data(), d, d);
        return lifted_.adjoint() * wm * lifted_.conjugate();
    }

    double acceptance(const StateVector& w) const {
        if (std::abs(w.norm() - 1.0) > kNormTolerance) throw InvalidArgument("pair witness is not normalized");
        const ComplexMatrix c = coefficients(w);
        return std::clamp((c.cwiseAbs2().array() * accept_mass_.array()).sum(), 0.0, 1.0);
    }

    double acceptance(const WitnessState& w) const {
        w.validate(dim_of(2 * n_));
        double p = 0.0;
        for (const auto& [weight, psi] : w.components) p += weight * acceptance(psi);
        return p;
    }

    /// Pr[flags set, readouts (y_a, y_b)] as a 2^t x 2^t matrix.
    Eigen::MatrixXd joint_distribution(const StateVector& w) const {
        const Eigen::MatrixXd kernel = qpe_kernel_table(phases_, params_.t);
        const Eigen::MatrixXd weights = coefficients(w).cwiseAbs2();
        return kernel.transpose() * weights * kernel;
    }

    /// Best acceptance over all witnesses: the largest product-eigenbasis
    /// accept mass, found by enumerating eigenphase pairs.
    double max_acceptance() const { return std::clamp(accept_mass_.maxCoeff(), 0.0, 1.0); }

    /// Arc-endpoint eigenvectors of the restricted operator, lifted to the
    /// input register, as the product |psi_a> (x) |psi_b>.
    StateVector honest_witness() const {
        const ExtremalPair pair = find_extremal_eigenvectors(restricted_);
        const ComplexMatrix basis = subspace_ ? subspace_projector(*subspace_).basis
                                              : ComplexMatrix::Identity(restricted_.rows(), restricted_.cols());
        const StateVector a = basis * pair.psi_a;
        const StateVector b = basis * pair.psi_b;
        return kron(a.normalized(), b.normalized());
    }

    Fig1Layout layout() const { return {n_, params_.t, subspace_ ? subspace_->m : 0}; }

    /// Gate-level verifier. Input register: the two witnesses; everything
    /// else is ancilla; the last qubit is the accept flag.
    VerifierSpec build() const;

private:
    Circuit ux_;
    Circuit uy_;
    std::optional<SubspaceSpec> subspace_;
    Fig1Params params_;
    std::size_t n_ = 0;
    ComplexMatrix restricted_;
    std::vector<double> phases_;
    ComplexMatrix lifted_;
    Eigen::MatrixXd accept_mass_;
};

inline constexpr std::size_t kMaxFig1WitnessQubits = 5;

inline VerifierSpec EquivalenceVerifier::build() const {
    using std::numbers::pi;
    if (n_ > kMaxFig1WitnessQubits)
        throw CapExceeded("equivalence verifier limited to " + std::to_string(kMaxFig1WitnessQubits) + "-qubit circuits");
    const Fig1Layout lay = layout();
    const std::size_t total = lay.total();
    check_state_cap(total);
    const std::size_t t = params_.t;
    const std::size_t mm = dim_of(t);

    Circuit c(total);
    const auto reg_a = Fig1Layout::range(lay.witness_a(0), n_);
    const auto reg_b = Fig1Layout::range(lay.witness_b(0), n_);
    const auto ph_a = Fig1Layout::range(lay.phase_a(0), t);
    const auto ph_b = Fig1Layout::range(lay.phase_b(0), t);

    // membership: V, copy the flag out, V^dagger
    if (subspace_) {
        const std::size_t m = subspace_->m;
        for (int side = 0; side < 2; ++side) {
            auto map = side == 0 ? reg_a : reg_b;
            const auto anc = Fig1Layout::range(side == 0 ? lay.member_a(0) : lay.member_b(0), m);
            map.insert(map.end(), anc.begin(), anc.end());
            detail::append(c, embed(subspace_->v, total, map));
            c.add(Gate::two(GateKind::CX, anc.back(), side == 0 ? lay.flag_a() : lay.flag_b()));
            detail::append(c, embed(inverse(subspace_->v), total, map));
        }
    }

    // A = U_x U_y^dagger: U_y^dagger first
    const Circuit a = concat(inverse(uy_), ux_);
    detail::append(c, qpe_circuit(total, a, reg_a, ph_a));
    detail::append(c, qpe_circuit(total, a, reg_b, ph_b));

    // D: phase_a <- phase_a - phase_b (mod 2^t), Fourier-space subtraction
    detail::append(c, qft_circuit(total, ph_a));
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; i + j < t; ++j)
            c.add(Gate::phase(-kTwoPi * static_cast<double>(dim_of(i + j)) / static_cast<double>(mm),
                              {{ph_a[i], Polarity::One}, {ph_b[j], Polarity::One}}));
    detail::append(c, inverse(qft_circuit(total, ph_a)));

    // C: flip the output for every accepted difference with both flags set
    const std::size_t out = lay.output();
    c.add(Gate::single(GateKind::H, out));
    for (std::size_t d = 0; d < mm; ++d) {
        if (!accepts_difference(d, 0, params_)) continue;
        std::vector<SignedControl> ctl;
        for (std::size_t i = 0; i < t; ++i) ctl.push_back({ph_a[i], (d >> i) & 1 ? Polarity::One : Polarity::Zero});
        if (subspace_) {
            ctl.push_back({lay.flag_a(), Polarity::One});
            ctl.push_back({lay.flag_b(), Polarity::One});
        }
        c.add(Gate::phase(pi, std::move(ctl), {out}));
    }
    c.add(Gate::single(GateKind::H, out));

    c.output_qubit = out;
    c.ancilla_count = total - 2 * n_;
    return VerifierSpec{std::move(c), 2 * n_, total - 2 * n_, out, std::nullopt};
}

/// Acceptance probability of the equivalence verifier on a pair witness.
inline double fig1_acceptance(const Circuit& ux, const Circuit& uy, const std::optional<SubspaceSpec>& s,
                              const StateVector& w, const Fig1Params& p) {
    return EquivalenceVerifier(ux, uy, s, p).acceptance(w);
}

inline VerifierSpec build_equivalence_verifier(const Circuit& ux, const Circuit& uy, const std::optional<SubspaceSpec>& s,
                                               const Fig1Params& p) {
    return EquivalenceVerifier(ux, uy, s, p).build();
}

}  // namespace qident
