// Copyright 2026 The qident Authors.
// SPDX-License-Identifier: Apache-2.0

// Seeded generators for circuits, states and unitaries.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qident/circuit.hpp"
#include "qident/dense_sim.hpp"
#include "qident/qma_verifier.hpp"

namespace qident {

using Rng = std::mt19937_64;

/// Uniform over the gate alphabet (CP gets 0-2 signed controls and 0-1
/// targets); angles uniform in [-pi, pi).
inline Circuit random_circuit(std::size_t n, std::size_t gate_count, Rng& rng) {
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    std::vector<GateKind> kinds;
    for (GateKind k : kAllGateKinds)
        if (fixed_arity(k) <= n || k == GateKind::CP) kinds.push_back(k);
    std::uniform_int_distribution<std::size_t> pick_kind(0, kinds.size() - 1);

    auto distinct = [&](std::size_t count) {
        std::vector<std::size_t> qs(n);
        for (std::size_t i = 0; i < n; ++i) qs[i] = i;
        std::shuffle(qs.begin(), qs.end(), rng);
        qs.resize(count);
        return qs;
    };

    Circuit c(n);
    for (std::size_t i = 0; i < gate_count; ++i) {
        const GateKind kind = kinds[pick_kind(rng)];
        Gate g;
        g.kind = kind;
        if (kind == GateKind::CP) {
            std::uniform_int_distribution<std::size_t> count(1, std::min<std::size_t>(3, n));
            auto qs = distinct(count(rng));
            std::bernoulli_distribution coin(0.5);
            const bool has_target = coin(rng);
            if (has_target) {
                g.targets.push_back(qs.back());
                qs.pop_back();
            }
            for (auto q : qs) g.controls.push_back({q, coin(rng) ? Polarity::One : Polarity::Zero});
        } else {
            g.targets = distinct(fixed_arity(kind));
        }
        if (has_angle(kind)) g.angle = angle(rng);
        c.add(std::move(g));
    }
    return c;
}

/// Haar-distributed unit vector.
inline StateVector random_state(std::size_t dim, Rng& rng) {
    std::normal_distribution<double> gauss;
    StateVector psi(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < psi.size(); ++i) psi(i) = Complex(gauss(rng), gauss(rng));
    return psi.normalized();
}

/// Haar-distributed unitary (QR of a Ginibre matrix with phase-fixed R).
inline ComplexMatrix random_unitary(std::size_t dim, Rng& rng) {
    std::normal_distribution<double> gauss;
    const auto d = static_cast<Eigen::Index>(dim);
    ComplexMatrix g(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < d; ++j) {
        const Complex diag = r(j, j);
        q.col(j) *= std::abs(diag) > 0 ? diag / std::abs(diag) : Complex(1.0);
    }
    return q;
}

/// Random circuit on n_input + m_ancilla qubits with a random output qubit.
inline VerifierSpec random_verifier(std::size_t n_input, std::size_t m_ancilla, std::size_t gate_count, Rng& rng) {
    const std::size_t n = n_input + m_ancilla;
    Circuit c = random_circuit(n, gate_count, rng);
    std::uniform_int_distribution<std::size_t> out(0, n - 1);
    c.output_qubit = out(rng);
    c.ancilla_count = m_ancilla;
    return VerifierSpec::from_circuit(c);
}

}  // namespace qident
