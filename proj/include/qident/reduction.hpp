// Copyright 2026 The qident Authors.
// SPDX-License-Identifier: Apache-2.0

// The circuit Z = U^dagger W U V built from a verifier U, and numerical
// checks of the norm bounds that tie its distance from the global phases to
// the verifier's maximum acceptance probability.
//
// The register of Z is the verifier's register plus one extra qubit at the
// highest index n + m. V puts e^{i phi} on the extra qubit when every
// ancilla is |0>; W does the same when the output qubit is |1>.

#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "qident/circuit.hpp"
#include "qident/dense_sim.hpp"
#include "qident/error.hpp"
#include "qident/qma_verifier.hpp"
#include "qident/spectral.hpp"

namespace qident {

inline std::size_t extra_qubit(const VerifierSpec& v) { return v.circuit.n_qubits; }

inline Gate ancilla_phase_gate(const VerifierSpec& v, double phi) {
    std::vector<SignedControl> ctl;
    for (std::size_t q = v.n_input; q < v.n_input + v.m_ancilla; ++q) ctl.push_back({q, Polarity::Zero});
    return Gate::phase(phi, std::move(ctl), {extra_qubit(v)});
}

inline Gate accept_phase_gate(const VerifierSpec& v, double phi) {
    return Gate::phase(phi, {{v.output_qubit, Polarity::One}}, {extra_qubit(v)});
}

inline void check_phi(double phi) {
    if (!(phi > 0.0 && phi <= std::numbers::pi)) throw InvalidArgument("phi must lie in (0, pi]");
}

/// Gate list [V, U, W, U^dagger] on n + m + 1 qubits.
inline Circuit build_Z(const VerifierSpec& v, double phi) {
    v.validate();
    check_phi(phi);
    const std::size_t total = v.circuit.n_qubits + 1;
    check_state_cap(total);
    const Circuit u = embed(v.circuit, total, contiguous_map(v.circuit.n_qubits, 0));
    Circuit z(total);
    z.add(ancilla_phase_gate(v, phi));
    z.gates.insert(z.gates.end(), u.gates.begin(), u.gates.end());
    z.add(accept_phase_gate(v, phi));
    const Circuit u_dag = inverse(u);
    z.gates.insert(z.gates.end(), u_dag.gates.begin(), u_dag.gates.end());
    return z;
}

struct TheoremBounds {
    double lower_case1 = 0.0;  ///< lower bound on min_gamma ||Z - e^{i gamma} 1|| when some witness is accepted
    double upper_case2 = 0.0;  ///< upper bound on ||Z - e^{i phi/2} 1|| when every witness is rejected
};

inline double raw_lower_bound(double epsilon, double phi) {
    return std::sqrt(2 * (1 - std::cos(phi))) - 2 * std::sqrt(epsilon);
}

inline double raw_upper_bound(double epsilon, double phi) {
    return 2 * std::sqrt(1 - std::cos(phi / 2)) + 2 * std::sqrt(2 * epsilon);
}

/// Both bounds, the lower one clamped at 0 and the upper one at 2.
inline TheoremBounds theorem_bounds(double epsilon, double phi) {
    if (!(epsilon >= 0.0)) throw InvalidArgument("epsilon must be nonnegative");
    check_phi(phi);
    return {std::max(0.0, raw_lower_bound(epsilon, phi)), std::min(2.0, raw_upper_bound(epsilon, phi))};
}

enum class TheoremCase { Case1, Case2 };

inline constexpr std::string_view to_string(TheoremCase c) { return c == TheoremCase::Case1 ? "CASE1" : "CASE2"; }

inline constexpr double kTheoremTolerance = 1e-9;

struct TheoremReport {
    TheoremCase theorem_case = TheoremCase::Case2;
    double phi = 0.0;
    double p_max = 0.0;
    double epsilon_measured = 0.0;
    std::optional<double> epsilon_declared;
    double measured = 0.0;      ///< case 1: min_gamma distance; case 2: residual at e^{i phi/2}
    double min_distance = 0.0;  ///< min_gamma ||Z - e^{i gamma} 1|| in both cases
    double bound = 0.0;
    bool satisfied = false;
    double margin = 0.0;  ///< signed slack; negative means violated
    std::optional<std::string> warning;
};

/// Measures epsilon from the verifier's exact maximum acceptance, builds Z
/// and checks the bound that applies. p_max >= 1/2 is treated as case 1.
inline TheoremReport check_theorem(const VerifierSpec& v, double phi) {
    check_phi(phi);
    const MaxAcceptance best = max_acceptance(v);
    TheoremReport r;
    r.phi = phi;
    r.p_max = best.p_max;
    r.epsilon_declared = v.epsilon;
    r.theorem_case = best.p_max >= 0.5 ? TheoremCase::Case1 : TheoremCase::Case2;
    r.epsilon_measured = r.theorem_case == TheoremCase::Case1 ? 1.0 - best.p_max : best.p_max;
    if (best.p_max > 1.0 / 3.0 && best.p_max < 2.0 / 3.0)
        r.warning = "p_max = " + format_angle(best.p_max) + " lies in (1/3, 2/3); verifier violates the promise";

    const ComplexMatrix z = circuit_unitary(build_Z(v, phi));
    r.min_distance = distance_to_phase_multiple(z).distance;
    const TheoremBounds bounds = theorem_bounds(r.epsilon_measured, phi);
    if (r.theorem_case == TheoremCase::Case1) {
        r.measured = r.min_distance;
        r.bound = bounds.lower_case1;
        r.margin = r.measured - r.bound;
    } else {
        const auto dim = z.rows();
        r.measured = operator_norm(z - std::polar(1.0, phi / 2) * ComplexMatrix::Identity(dim, dim));
        r.bound = bounds.upper_case2;
        r.margin = r.bound - r.measured;
    }
    r.satisfied = r.margin >= -kTheoremTolerance;
    return r;
}

/// (|0> + |1>)/sqrt(2) on the extra qubit, psi on the inputs, ancillas |0...0>.
inline StateVector case1_witness(const VerifierSpec& v, const StateVector& psi) {
    if (static_cast<std::size_t>(psi.size()) != dim_of(v.n_input)) throw DimensionMismatch("witness does not fit the input register");
    StateVector plus(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    return kron(with_clean_ancillas(psi, v.m_ancilla), plus);
}

struct SeparationReport {
    bool ok = false;
    double gap = 0.0;    ///< lower - upper, unclamped
    double lower = 0.0;  ///< sqrt(2 (1 - cos phi)) - 2 sqrt(eps)
    double upper = 0.0;  ///< 2 sqrt(1 - cos(phi/2)) + 2 sqrt(2 eps)
    double approx_lower = 0.0;  ///< small-angle form sqrt(2) phi - 2 sqrt(eps)
    double approx_upper = 0.0;  ///< small-angle form phi + 2 sqrt(2 eps)
};

/// Gaps within a few ulps of the bounds are rounding noise, not separation
/// (at phi = pi and epsilon = 0 both bounds are exactly 2).
inline double separation_roundoff(double lower, double upper) {
    return 8 * std::numeric_limits<double>::epsilon() * (std::abs(lower) + std::abs(upper));
}

/// Whether the case-1 lower bound exceeds the case-2 upper bound.
inline SeparationReport separation_ok(double epsilon, double phi) {
    if (!(epsilon >= 0.0)) throw InvalidArgument("epsilon must be nonnegative");
    check_phi(phi);
    SeparationReport s;
    s.lower = raw_lower_bound(epsilon, phi);
    s.upper = raw_upper_bound(epsilon, phi);
    s.gap = s.lower - s.upper;
    s.ok = s.gap > separation_roundoff(s.lower, s.upper);
    s.approx_lower = std::sqrt(2.0) * phi - 2 * std::sqrt(epsilon);
    s.approx_upper = phi + 2 * std::sqrt(2 * epsilon);
    return s;
}

/// Supremum of the epsilons for which the bounds separate at this phi:
/// gap(eps) = gap(0) - (2 + 2 sqrt 2) sqrt(eps). Zero when gap(0) <= 0.
inline double separation_threshold(double phi) {
    const SeparationReport at_zero = separation_ok(0.0, phi);
    if (!at_zero.ok) return 0.0;
    const double g0 = at_zero.gap;
    const double root = g0 / (2 + 2 * std::sqrt(2.0));
    return root * root;
}

}  // namespace qident
