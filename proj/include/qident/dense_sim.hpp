// Copyright 2026 The qident Authors.
// SPDX-License-Identifier: Apache-2.0

// Exact dense simulation: statevectors, full unitaries, operator norms and
// unitary spectra.

#pragma once

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qident/circuit.hpp"
#include "qident/error.hpp"

namespace qident {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

inline constexpr std::size_t kMaxUnitaryQubits = 12;
inline constexpr std::size_t kMaxStateQubits = 24;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline std::size_t dim_of(std::size_t n_qubits) { return std::size_t{1} << n_qubits; }

/// log2 of a power-of-two dimension; throws otherwise.
inline std::size_t qubits_of(std::size_t dim) {
    if (dim == 0 || (dim & (dim - 1)) != 0) throw DimensionMismatch("dimension " + std::to_string(dim) + " is not a power of two");
    return static_cast<std::size_t>(std::countr_zero(dim));
}

inline StateVector basis_state(std::size_t n_qubits, std::size_t index) {
    StateVector psi = StateVector::Zero(static_cast<Eigen::Index>(dim_of(n_qubits)));
    psi(static_cast<Eigen::Index>(index)) = 1.0;
    return psi;
}

/// Tensor product with `low` on the least-significant qubits.
inline StateVector kron(const StateVector& low, const StateVector& high) {
    StateVector out(low.size() * high.size());
    for (Eigen::Index h = 0; h < high.size(); ++h) out.segment(h * low.size(), low.size()) = high(h) * low;
    return out;
}

inline ComplexMatrix kron(const ComplexMatrix& low, const ComplexMatrix& high) {
    ComplexMatrix out(low.rows() * high.rows(), low.cols() * high.cols());
    for (Eigen::Index r = 0; r < high.rows(); ++r)
        for (Eigen::Index c = 0; c < high.cols(); ++c)
            out.block(r * low.rows(), c * low.cols(), low.rows(), low.cols()) = high(r, c) * low;
    return out;
}

/// max_ij |(M^dagger M - 1)_ij|
inline double unitarity_error(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
    return (m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Gates
// ---------------------------------------------------------------------------

/// Matrix of `g` on its own qubits, in `g.qubits()` order (first listed
/// qubit is the least-significant bit of the local index).
inline ComplexMatrix gate_matrix(const Gate& g) {
    using std::numbers::pi;
    const Complex i{0.0, 1.0};
    const double s2 = 1.0 / std::sqrt(2.0);
    ComplexMatrix m;
    auto phase_gate = [&](double a) {
        m = ComplexMatrix::Identity(2, 2);
        m(1, 1) = std::polar(1.0, a);
    };
    switch (g.kind) {
        case GateKind::Id: m = ComplexMatrix::Identity(2, 2); break;
        case GateKind::X: m.resize(2, 2); m << 0, 1, 1, 0; break;
        case GateKind::Y: m.resize(2, 2); m << 0, -i, i, 0; break;
        case GateKind::Z: m.resize(2, 2); m << 1, 0, 0, -1; break;
        case GateKind::H: m.resize(2, 2); m << s2, s2, s2, -s2; break;
        case GateKind::S: phase_gate(pi / 2); break;
        case GateKind::Sdg: phase_gate(-pi / 2); break;
        case GateKind::T: phase_gate(pi / 4); break;
        case GateKind::Tdg: phase_gate(-pi / 4); break;
        case GateKind::RX: {
            const double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
            m.resize(2, 2);
            m << c, -i * s, -i * s, c;
            break;
        }
        case GateKind::RY: {
            const double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
            m.resize(2, 2);
            m << c, -s, s, c;
            break;
        }
        case GateKind::RZ:
            m = ComplexMatrix::Zero(2, 2);
            m(0, 0) = std::polar(1.0, -g.angle / 2);
            m(1, 1) = std::polar(1.0, g.angle / 2);
            break;
        case GateKind::CX:
            // local bit 0 = control, bit 1 = target
            m = ComplexMatrix::Zero(4, 4);
            m(0, 0) = m(2, 2) = 1;
            m(3, 1) = m(1, 3) = 1;
            break;
        case GateKind::CZ:
            m = ComplexMatrix::Identity(4, 4);
            m(3, 3) = -1;
            break;
        case GateKind::Swap:
            m = ComplexMatrix::Zero(4, 4);
            m(0, 0) = m(3, 3) = 1;
            m(1, 2) = m(2, 1) = 1;
            break;
        case GateKind::CP: {
            const std::size_t k = g.controls.size() + g.targets.size();
            const std::size_t d = dim_of(k);
            m = ComplexMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
            std::size_t want = 0;
            for (std::size_t b = 0; b < g.controls.size(); ++b)
                if (g.controls[b].polarity == Polarity::One) want |= std::size_t{1} << b;
            for (std::size_t b = g.controls.size(); b < k; ++b) want |= std::size_t{1} << b;
            m(static_cast<Eigen::Index>(want), static_cast<Eigen::Index>(want)) = std::polar(1.0, g.angle);
            break;
        }
    }
    return m;
}

namespace detail {

inline void apply_single(StateVector& psi, const ComplexMatrix& u, std::size_t q) {
    const std::size_t stride = std::size_t{1} << q;
    const std::size_t dim = static_cast<std::size_t>(psi.size());
    const Complex u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t k = base; k < base + stride; ++k) {
            const auto i0 = static_cast<Eigen::Index>(k);
            const auto i1 = static_cast<Eigen::Index>(k + stride);
            const Complex a = psi(i0), b = psi(i1);
            psi(i0) = u00 * a + u01 * b;
            psi(i1) = u10 * a + u11 * b;
        }
    }
}

}  // namespace detail

/// Applies `g` in place. The statevector must have dimension 2^n_qubits.
inline void apply_gate_inplace(StateVector& psi, const Gate& g, std::size_t n_qubits) {
    if (static_cast<std::size_t>(psi.size()) != dim_of(n_qubits))
        throw DimensionMismatch("statevector dimension " + std::to_string(psi.size()) + " does not match " +
                                std::to_string(n_qubits) + " qubits");
    validate_gate(g, n_qubits);
    const std::size_t dim = dim_of(n_qubits);
    switch (g.kind) {
        case GateKind::Id: return;
        case GateKind::CX: {
            const std::size_t cm = std::size_t{1} << g.targets[0];
            const std::size_t tm = std::size_t{1} << g.targets[1];
            for (std::size_t k = 0; k < dim; ++k)
                if ((k & cm) && !(k & tm)) std::swap(psi(static_cast<Eigen::Index>(k)), psi(static_cast<Eigen::Index>(k | tm)));
            return;
        }
        case GateKind::CZ: {
            const std::size_t mask = (std::size_t{1} << g.targets[0]) | (std::size_t{1} << g.targets[1]);
            for (std::size_t k = 0; k < dim; ++k)
                if ((k & mask) == mask) psi(static_cast<Eigen::Index>(k)) = -psi(static_cast<Eigen::Index>(k));
            return;
        }
        case GateKind::Swap: {
            const std::size_t am = std::size_t{1} << g.targets[0];
            const std::size_t bm = std::size_t{1} << g.targets[1];
            for (std::size_t k = 0; k < dim; ++k)
                if ((k & am) && !(k & bm)) std::swap(psi(static_cast<Eigen::Index>(k)), psi(static_cast<Eigen::Index>((k ^ am) | bm)));
            return;
        }
        case GateKind::CP: {
            std::size_t mask = 0, want = 0;
            for (const auto& c : g.controls) {
                mask |= std::size_t{1} << c.qubit;
                if (c.polarity == Polarity::One) want |= std::size_t{1} << c.qubit;
            }
            for (auto q : g.targets) {
                mask |= std::size_t{1} << q;
                want |= std::size_t{1} << q;
            }
            const Complex ph = std::polar(1.0, g.angle);
            for (std::size_t k = 0; k < dim; ++k)
                if ((k & mask) == want) psi(static_cast<Eigen::Index>(k)) *= ph;
            return;
        }
        default: detail::apply_single(psi, gate_matrix(g), g.targets[0]); return;
    }
}

inline StateVector apply_gate(StateVector psi, const Gate& g, std::size_t n_qubits) {
    apply_gate_inplace(psi, g, n_qubits);
    return psi;
}

inline void check_state_cap(std::size_t n_qubits) {
    if (n_qubits > kMaxStateQubits)
        throw CapExceeded("statevector simulation limited to " + std::to_string(kMaxStateQubits) + " qubits, got " +
                          std::to_string(n_qubits));
}

inline void apply_circuit_inplace(StateVector& psi, const Circuit& c) {
    check_state_cap(c.n_qubits);
    for (const auto& g : c.gates) apply_gate_inplace(psi, g, c.n_qubits);
}

inline StateVector apply_circuit(StateVector psi, const Circuit& c) {
    apply_circuit_inplace(psi, c);
    return psi;
}

/// Full unitary; column j is the image of basis state j.
inline ComplexMatrix circuit_unitary(const Circuit& c) {
    if (c.n_qubits > kMaxUnitaryQubits)
        throw CapExceeded("unitary construction limited to " + std::to_string(kMaxUnitaryQubits) + " qubits, got " +
                          std::to_string(c.n_qubits));
    const auto dim = static_cast<Eigen::Index>(dim_of(c.n_qubits));
    ComplexMatrix u(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) u.col(j) = apply_circuit(basis_state(c.n_qubits, static_cast<std::size_t>(j)), c);
    return u;
}

/// Applies the 2^k-dim matrix `m` to the listed qubits (first listed = local
/// LSB), optionally only on the branch where `control` is |1>. The full
/// register operator is never formed.
inline void apply_matrix_inplace(StateVector& psi, const ComplexMatrix& m, std::span<const std::size_t> qubits,
                                 std::optional<std::size_t> control = std::nullopt) {
    const std::size_t k = qubits.size();
    const std::size_t local = dim_of(k);
    if (static_cast<std::size_t>(m.rows()) != local || m.rows() != m.cols())
        throw DimensionMismatch("matrix dimension does not match qubit list");
    std::size_t mask = 0;
    for (auto q : qubits) mask |= std::size_t{1} << q;
    if (control) mask |= std::size_t{1} << *control;
    const std::size_t dim = static_cast<std::size_t>(psi.size());

    std::vector<std::size_t> offsets(local, 0);
    for (std::size_t l = 0; l < local; ++l)
        for (std::size_t b = 0; b < k; ++b)
            if (l & (std::size_t{1} << b)) offsets[l] |= std::size_t{1} << qubits[b];

    StateVector block(static_cast<Eigen::Index>(local));
    for (std::size_t base = 0; base < dim; ++base) {
        if (base & mask) continue;
        const std::size_t origin = control ? base | (std::size_t{1} << *control) : base;
        for (std::size_t l = 0; l < local; ++l) block(static_cast<Eigen::Index>(l)) = psi(static_cast<Eigen::Index>(origin | offsets[l]));
        const StateVector out = m * block;
        for (std::size_t l = 0; l < local; ++l) psi(static_cast<Eigen::Index>(origin | offsets[l])) = out(static_cast<Eigen::Index>(l));
    }
}

// ---------------------------------------------------------------------------
// Norms and spectra
// ---------------------------------------------------------------------------

inline constexpr std::uint64_t kDefaultNormSeed = 0x5eed0f0e7a11ULL;

/// Largest singular value by power iteration on M^dagger M from a seeded
/// random start. Throws NumericalFailure if the Rayleigh quotient has not
/// settled to 1e-12 relative after `max_iterations`.
inline double operator_norm(const ComplexMatrix& m, std::uint64_t seed = kDefaultNormSeed, int max_iterations = 10000) {
    if (m.size() == 0) return 0.0;
    if (!m.allFinite()) throw NumericalFailure("operator_norm: non-finite entries");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    StateVector v(m.cols());
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(gauss(rng), gauss(rng));
    v.normalize();

    double lambda = -1.0;
    int settled = 0;
    for (int it = 1; it <= max_iterations; ++it) {
        const StateVector w = m * v;
        const double next = w.squaredNorm();  // v^dagger M^dagger M v with |v| = 1
        StateVector u = m.adjoint() * w;
        const double un = u.norm();
        if (un == 0.0) return 0.0;
        v = u / un;
        if (std::abs(next - lambda) <= 1e-12 * next) {
            if (++settled >= 2) return std::sqrt(std::max(next, un));
        } else {
            settled = 0;
        }
        lambda = next;
    }
    throw NumericalFailure("operator_norm: power iteration did not converge after " + std::to_string(max_iterations) +
                           " iterations");
}

/// Phase in [0, 2pi).
inline double wrap_phase(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0) t += kTwoPi;
    if (t >= kTwoPi) t = 0.0;
    return t;
}

/// Eigen-decomposition of a unitary: sorted eigenphases and an orthonormal
/// eigenbasis (columns of `vectors`, same order).
struct UnitarySpectrum {
    std::vector<double> phases;
    ComplexMatrix vectors;
};

inline constexpr double kUnitaryTolerance = 1e-8;

inline UnitarySpectrum unitary_spectrum(const ComplexMatrix& u) {
    if (u.rows() != u.cols() || u.rows() == 0) throw DimensionMismatch("unitary_spectrum: matrix must be square and nonempty");
    const double err = unitarity_error(u);
    if (!(err <= kUnitaryTolerance))
        throw NotUnitary("matrix is not unitary (max |U^dagger U - 1| = " + std::to_string(err) + ")");

    // Complex Schur form of a normal matrix is diagonal, so Q is an
    // orthonormal eigenbasis even for degenerate spectra.
    Eigen::ComplexSchur<ComplexMatrix> schur(u);
    if (schur.info() != Eigen::Success) throw NumericalFailure("unitary_spectrum: Schur decomposition failed");
    const ComplexMatrix& t = schur.matrixT();
    const ComplexMatrix& q = schur.matrixU();

    const auto dim = static_cast<std::size_t>(u.rows());
    std::vector<double> raw(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        const Complex lambda = t(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j));
        const double mod = std::abs(lambda);
        if (mod < 1.0 - kUnitaryTolerance || mod > 1.0 + kUnitaryTolerance)
            throw NumericalFailure("unitary_spectrum: eigenvalue off the unit circle (|lambda| = " + std::to_string(mod) + ")");
        raw[j] = wrap_phase(std::arg(lambda));
    }
    std::vector<std::size_t> order(dim);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return raw[a] < raw[b]; });

    UnitarySpectrum out;
    out.phases.reserve(dim);
    out.vectors.resize(u.rows(), u.cols());
    for (std::size_t j = 0; j < dim; ++j) {
        out.phases.push_back(raw[order[j]]);
        out.vectors.col(static_cast<Eigen::Index>(j)) = q.col(static_cast<Eigen::Index>(order[j]));
    }
    return out;
}

inline std::vector<double> eigenphases(const ComplexMatrix& u) { return unitary_spectrum(u).phases; }

/// Cross-check of unit-circle placement through the Hermitian pair
/// H1 = (U + U^dagger)/2 and H2 = (U - U^dagger)/(2i). Returns the largest
/// deviation between the sorted spectrum of H1 and the sorted cosines of
/// the eigenphases, and the same for H2 against the sines.
inline double hermitian_pair_discrepancy(const ComplexMatrix& u, const std::vector<double>& phases) {
    const Complex i{0.0, 1.0};
    const ComplexMatrix h1 = (u + u.adjoint()) / 2.0;
    const ComplexMatrix h2 = (u - u.adjoint()) / (2.0 * i);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> e1(h1, Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> e2(h2, Eigen::EigenvaluesOnly);
    if (e1.info() != Eigen::Success || e2.info() != Eigen::Success) throw NumericalFailure("hermitian pair eigen-solve failed");

    std::vector<double> cosines, sines;
    for (double p : phases) {
        cosines.push_back(std::cos(p));
        sines.push_back(std::sin(p));
    }
    std::sort(cosines.begin(), cosines.end());
    std::sort(sines.begin(), sines.end());
    double worst = 0.0;
    for (std::size_t j = 0; j < phases.size(); ++j) {
        worst = std::max(worst, std::abs(e1.eigenvalues()(static_cast<Eigen::Index>(j)) - cosines[j]));
        worst = std::max(worst, std::abs(e2.eigenvalues()(static_cast<Eigen::Index>(j)) - sines[j]));
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Statevector files
// ---------------------------------------------------------------------------

inline constexpr double kNormTolerance = 1e-9;

/// Reads `dim D` followed by D lines `re im`. Rejects states whose norm
/// differs from 1 by more than 1e-9.
inline StateVector parse_statevector(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        lines.push_back(text.substr(pos, eol - pos));
        pos = eol + 1;
    }
    while (!lines.empty() && detail::tokenize(lines.back()).empty()) lines.pop_back();
    if (lines.empty()) throw ParseError(1, 1, "empty statevector file");

    auto header = detail::tokenize(lines[0]);
    if (header.size() != 2 || header[0].text != "dim") throw ParseError(1, 1, "expected 'dim D' header");
    std::size_t dim = 0;
    {
        auto [p, ec] = std::from_chars(header[1].text.data(), header[1].text.data() + header[1].text.size(), dim);
        if (ec != std::errc() || p != header[1].text.data() + header[1].text.size() || dim == 0 || (dim & (dim - 1)) != 0)
            throw ParseError(1, header[1].column, "dimension must be a positive power of two");
    }
    if (lines.size() != dim + 1)
        throw ParseError(lines.size(), 1, "expected " + std::to_string(dim) + " amplitude lines, got " + std::to_string(lines.size() - 1));

    StateVector psi(static_cast<Eigen::Index>(dim));
    for (std::size_t k = 0; k < dim; ++k) {
        auto toks = detail::tokenize(lines[k + 1]);
        if (toks.size() != 2) throw ParseError(k + 2, 1, "expected 're im'");
        double parts[2];
        for (int c = 0; c < 2; ++c) {
            const auto* first = toks[c].text.data();
            const auto* last = first + toks[c].text.size();
            if (first != last && *first == '+') ++first;
            auto [p, ec] = std::from_chars(first, last, parts[c]);
            if (ec != std::errc() || p != last || !std::isfinite(parts[c]))
                throw ParseError(k + 2, toks[c].column, "invalid number '" + std::string(toks[c].text) + "'");
        }
        psi(static_cast<Eigen::Index>(k)) = Complex(parts[0], parts[1]);
    }
    const double norm = psi.norm();
    if (std::abs(norm - 1.0) > kNormTolerance)
        throw ParseError(1, 1, "statevector norm " + format_angle(norm) + " differs from 1 by more than 1e-9");
    return psi;
}

inline std::string serialize_statevector(const StateVector& psi) {
    std::string out = "dim " + std::to_string(psi.size()) + "\n";
    for (Eigen::Index k = 0; k < psi.size(); ++k)
        out += format_angle(psi(k).real()) + " " + format_angle(psi(k).imag()) + "\n";
    return out;
}

}  // namespace qident
