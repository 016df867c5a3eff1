// Copyright 2026 The qident Authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/SVD>

#include "gtest/gtest.h"

#include "qident/dense_sim.hpp"
#include "qident/random.hpp"
#include "test_util.hpp"

using namespace qident;
using qident::testing::identity;
using qident::testing::max_abs_diff;

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

// Full-register matrix of one gate, assembled entry by entry from its local
// matrix. Local index bit b corresponds to g.qubits()[b].
ComplexMatrix full_gate_oracle(const Gate& g, std::size_t n) {
    const ComplexMatrix local = gate_matrix(g);
    const auto qs = g.qubits();
    std::size_t mask = 0;
    for (auto q : qs) mask |= std::size_t{1} << q;
    auto sub = [&](std::size_t x) {
        std::size_t s = 0;
        for (std::size_t b = 0; b < qs.size(); ++b)
            if (x >> qs[b] & 1) s |= std::size_t{1} << b;
        return s;
    };
    const std::size_t dim = dim_of(n);
    ComplexMatrix e = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c)
            if ((r & ~mask) == (c & ~mask))
                e(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                    local(static_cast<Eigen::Index>(sub(r)), static_cast<Eigen::Index>(sub(c)));
    return e;
}

ComplexMatrix circuit_oracle(const Circuit& c) {
    ComplexMatrix u = identity(static_cast<Eigen::Index>(dim_of(c.n_qubits)));
    for (const Gate& g : c.gates) u = full_gate_oracle(g, c.n_qubits) * u;
    return u;
}

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
    ComplexMatrix m(2, 2);
    m << a, b, c, d;
    return m;
}

}  // namespace

TEST(GateMatrix, SingleQubitTable) {
    const double r = 1.0 / std::sqrt(2.0);
    EXPECT_LE(max_abs_diff(gate_matrix(Gate::single(GateKind::X, 0)), mat2(0, 1, 1, 0)), 1e-15);
    EXPECT_LE(max_abs_diff(gate_matrix(Gate::single(GateKind::Y, 0)), mat2(0, -kI, kI, 0)), 1e-15);
    EXPECT_LE(max_abs_diff(gate_matrix(Gate::single(GateKind::Z, 0)), mat2(1, 0, 0, -1)), 1e-15);
    EXPECT_LE(max_abs_diff(gate_matrix(Gate::single(GateKind::H, 0)), mat2(r, r, r, -r)), 1e-15);
    EXPECT_LE(max_abs_diff(gate_matrix(Gate::single(GateKind::S, 0)), mat2(1, 0, 0, kI)), 1e-15);
    EXPECT_LE(max_abs_diff(gate_matrix(Gate::single(GateKind::Sdg, 0)), mat2(1, 0, 0, -kI)), 1e-15);
    EXPECT_LE(max_abs_diff(gate_matrix(Gate::single(GateKind::T, 0)), mat2(1, 0, 0, std::polar(1.0, kPi / 4))), 1e-15);
    EXPECT_LE(max_abs_diff(gate_matrix(Gate::single(GateKind::Tdg, 0)), mat2(1, 0, 0, std::polar(1.0, -kPi / 4))), 1e-15);
    const double t = 0.7;
    const double c = std::cos(t / 2), s = std::sin(t / 2);
    EXPECT_LE(max_abs_diff(gate_matrix(Gate::single(GateKind::RX, 0, t)), mat2(c, -kI * s, -kI * s, c)), 1e-15);
    EXPECT_LE(max_abs_diff(gate_matrix(Gate::single(GateKind::RY, 0, t)), mat2(c, -s, s, c)), 1e-15);
    EXPECT_LE(max_abs_diff(gate_matrix(Gate::single(GateKind::RZ, 0, t)),
                           mat2(std::polar(1.0, -t / 2), 0, 0, std::polar(1.0, t / 2))),
              1e-15);
}

TEST(GateMatrix, PhaseGateIsDiagonal) {
    // cp 0.5 -0 +1 : 2 puts e^{0.5 i} on local index with bit0=0, bit1=1, bit2=1
    const Gate g = Gate::phase(0.5, {{0, Polarity::Zero}, {1, Polarity::One}}, {2});
    const ComplexMatrix m = gate_matrix(g);
    ASSERT_EQ(m.rows(), 8);
    for (Eigen::Index k = 0; k < 8; ++k)
        EXPECT_LE(std::abs(m(k, k) - (k == 0b110 ? std::polar(1.0, 0.5) : Complex(1.0))), 1e-15) << k;
    EXPECT_LE((m - ComplexMatrix(m.diagonal().asDiagonal())).norm(), 1e-15);
    EXPECT_LE(std::abs(gate_matrix(Gate::phase(0.3, {}))(0, 0) - std::polar(1.0, 0.3)), 1e-15);
}

TEST(ApplyGate, Examples) {
    const StateVector x0 = apply_gate(basis_state(1, 0), Gate::single(GateKind::X, 0), 1);
    EXPECT_LE((x0 - basis_state(1, 1)).norm(), 1e-15);

    const StateVector h = apply_gate(basis_state(1, 0), Gate::single(GateKind::H, 0), 1);
    EXPECT_NEAR(h(0).real(), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(h(1).real(), 1 / std::sqrt(2.0), 1e-15);

    // cx 0 1 on two qubits swaps |01> (index 1) and |11> (index 3)
    const ComplexMatrix cx = circuit_unitary(Circuit(2, {Gate::two(GateKind::CX, 0, 1)}));
    ComplexMatrix perm = ComplexMatrix::Zero(4, 4);
    perm(0, 0) = perm(2, 2) = perm(3, 1) = perm(1, 3) = 1;
    EXPECT_LE(max_abs_diff(cx, perm), 1e-15);
}

TEST(ApplyGate, InvalidGateIsRejected) {
    StateVector psi = basis_state(2, 0);
    EXPECT_THROW(apply_gate_inplace(psi, Gate::single(GateKind::X, 2), 2), InvalidArgument);
    EXPECT_THROW(apply_gate_inplace(psi, Gate::two(GateKind::CX, 1, 1), 2), InvalidArgument);
}

TEST(CircuitUnitary, MatchesEntrywiseOracle) {
    Rng rng(21);
    for (int trial = 0; trial < 40; ++trial) {
        const Circuit c = random_circuit(1 + trial % 5, 30, rng);
        const ComplexMatrix u = circuit_unitary(c);
        EXPECT_LE(max_abs_diff(u, circuit_oracle(c)), 1e-12);
        EXPECT_LE(unitarity_error(u), 1e-12);
    }
}

TEST(CircuitUnitary, CapIsEnforced) {
    EXPECT_THROW(circuit_unitary(Circuit(kMaxUnitaryQubits + 1)), CapExceeded);
    EXPECT_THROW(check_state_cap(kMaxStateQubits + 1), CapExceeded);
}

TEST(Statevector, AgreesWithMatrixPathAndPreservesNorm) {
    Rng rng(4);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 1 + trial % 6;
        const Circuit c = random_circuit(n, 50, rng);
        const StateVector psi = random_state(dim_of(n), rng);
        const StateVector out = apply_circuit(psi, c);
        EXPECT_NEAR(out.norm(), 1.0, 1e-12);
        EXPECT_LE((out - circuit_oracle(c) * psi).norm(), 1e-12);
    }
}

TEST(Kron, LowFactorOnLowQubits) {
    const StateVector one = basis_state(1, 1);
    const StateVector zero = basis_state(1, 0);
    // qubit 0 = |1>, qubit 1 = |0> is index 1
    EXPECT_LE((kron(one, zero) - basis_state(2, 1)).norm(), 1e-15);
    const ComplexMatrix x = gate_matrix(Gate::single(GateKind::X, 0));
    EXPECT_LE(max_abs_diff(kron(x, identity(2)), circuit_unitary(Circuit(2, {Gate::single(GateKind::X, 0)}))), 1e-15);
}

TEST(ApplyMatrix, MatchesEmbeddedOracle) {
    Rng rng(8);
    const std::size_t n = 5;
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix m = random_unitary(4, rng);
        const std::vector<std::size_t> qs = {3, 1};
        const StateVector psi = random_state(dim_of(n), rng);

        // oracle: the same block as a 2-qubit "gate" on (3, 1), possibly controlled by 4
        ComplexMatrix full = ComplexMatrix::Zero(32, 32);
        ComplexMatrix full_ctl = ComplexMatrix::Zero(32, 32);
        for (std::size_t r = 0; r < 32; ++r)
            for (std::size_t c = 0; c < 32; ++c) {
                const std::size_t rest = ~((std::size_t{1} << 3) | (std::size_t{1} << 1));
                if ((r & rest) != (c & rest)) continue;
                const Complex v = m(static_cast<Eigen::Index>((r >> 3 & 1) | (r >> 1 & 1) << 1),
                                    static_cast<Eigen::Index>((c >> 3 & 1) | (c >> 1 & 1) << 1));
                full(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
                full_ctl(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                    (r >> 4 & 1) ? v : Complex(r == c ? 1.0 : 0.0);
            }
        StateVector a = psi;
        apply_matrix_inplace(a, m, qs);
        EXPECT_LE((a - full * psi).norm(), 1e-12);
        StateVector b = psi;
        apply_matrix_inplace(b, m, qs, std::size_t{4});
        EXPECT_LE((b - full_ctl * psi).norm(), 1e-12);
    }
    StateVector psi = basis_state(2, 0);
    const std::vector<std::size_t> one = {0};
    EXPECT_THROW(apply_matrix_inplace(psi, identity(4), one), DimensionMismatch);
}

TEST(OperatorNorm, MatchesSvd) {
    Rng rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        const auto d = static_cast<Eigen::Index>(2 + trial % 15);
        ComplexMatrix m(d, d);
        std::normal_distribution<double> gauss;
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < d; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
        const double svd = Eigen::JacobiSVD<ComplexMatrix>(m).singularValues()(0);
        EXPECT_NEAR(operator_norm(m), svd, 1e-8 * svd);
    }
}

TEST(OperatorNorm, UnitaryInvarianceAndExamples) {
    Rng rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix u = random_unitary(8, rng);
        EXPECT_NEAR(operator_norm(u), 1.0, 1e-10);
        const ComplexMatrix m = random_unitary(8, rng) - 0.5 * random_unitary(8, rng);
        const double base = operator_norm(m);
        EXPECT_NEAR(operator_norm(u * m), base, 1e-8);
        EXPECT_NEAR(operator_norm(m * u), base, 1e-8);
    }
    EXPECT_EQ(operator_norm(ComplexMatrix::Zero(4, 4)), 0.0);
    ComplexMatrix diag = ComplexMatrix::Zero(3, 3);
    diag(0, 0) = 0.5;
    diag(1, 1) = Complex(0, -2.0);
    diag(2, 2) = 1.0;
    EXPECT_NEAR(operator_norm(diag), 2.0, 1e-10);
}

TEST(OperatorNorm, RejectsNonFinite) {
    ComplexMatrix m = identity(2);
    m(0, 1) = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(operator_norm(m), NumericalFailure);
}

TEST(Eigenphases, Examples) {
    auto ph = [](const char* text) { return eigenphases(circuit_unitary(parse_circuit(text))); };
    auto expect = [](const std::vector<double>& got, const std::vector<double>& want) {
        ASSERT_EQ(got.size(), want.size());
        for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-12) << i;
    };
    expect(ph("qubits 1\nz 0\n"), {0.0, kPi});
    expect(ph("qubits 1\nt 0\n"), {0.0, kPi / 4});
    expect(ph("qubits 2\ncx 0 1\n"), {0.0, 0.0, 0.0, kPi});
    expect(ph("qubits 1\nid 0\n"), {0.0, 0.0});
    expect(ph("qubits 1\nrz 0 -1\n"), {0.5, kTwoPi - 0.5});
}

TEST(Eigenphases, RejectsNonUnitary) {
    ComplexMatrix m = identity(2);
    m(0, 0) = 1.1;
    EXPECT_THROW(eigenphases(m), NotUnitary);
    EXPECT_THROW(eigenphases(ComplexMatrix(2, 3)), DimensionMismatch);
}

TEST(Eigenphases, ReconstructionAndHermitianCrossCheck) {
    Rng rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 1 + trial % 5;
        const ComplexMatrix u = circuit_unitary(random_circuit(n, 30, rng));
        const UnitarySpectrum spec = unitary_spectrum(u);
        ASSERT_TRUE(std::is_sorted(spec.phases.begin(), spec.phases.end()));
        for (double p : spec.phases) {
            EXPECT_GE(p, 0.0);
            EXPECT_LT(p, kTwoPi);
        }
        ComplexMatrix d = ComplexMatrix::Zero(u.rows(), u.cols());
        for (std::size_t j = 0; j < spec.phases.size(); ++j)
            d(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = std::polar(1.0, spec.phases[j]);
        EXPECT_LE(max_abs_diff(spec.vectors * d * spec.vectors.adjoint(), u), 1e-7);
        EXPECT_LE(unitarity_error(spec.vectors), 1e-10);
        EXPECT_LE(hermitian_pair_discrepancy(u, spec.phases), 1e-8);
    }
}

TEST(Eigenphases, DegenerateSpectrumKeepsOrthonormalBasis) {
    const ComplexMatrix u = circuit_unitary(parse_circuit("qubits 3\ncz 0 1\ncz 1 2\n"));
    const UnitarySpectrum spec = unitary_spectrum(u);
    EXPECT_LE(unitarity_error(spec.vectors), 1e-12);
}

TEST(WrapPhase, Range) {
    EXPECT_DOUBLE_EQ(wrap_phase(-kPi / 2), 1.5 * kPi);
    EXPECT_DOUBLE_EQ(wrap_phase(0.25), 0.25);
    EXPECT_EQ(wrap_phase(kTwoPi), 0.0);
    EXPECT_LT(wrap_phase(-1e-18), kTwoPi);
}

TEST(StatevectorFile, RoundTripAndRejection) {
    Rng rng(31);
    const StateVector psi = random_state(8, rng);
    const std::string text = serialize_statevector(psi);
    const StateVector back = parse_statevector(text);
    EXPECT_EQ((back - psi).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(serialize_statevector(back), text);

    const StateVector plus = parse_statevector("dim 2\n0.70710678118654757 0\n0.70710678118654757 0\n");
    EXPECT_NEAR(plus(1).real(), 1 / std::sqrt(2.0), 1e-15);

    EXPECT_THROW(parse_statevector("dim 2\n1 0\n1 0\n"), ParseError);     // norm sqrt 2
    EXPECT_THROW(parse_statevector("dim 3\n1 0\n0 0\n0 0\n"), ParseError);  // not a power of two
    EXPECT_THROW(parse_statevector("dim 2\n1 0\n"), ParseError);          // short
    EXPECT_THROW(parse_statevector("dim 2\n1 0\nx 0\n"), ParseError);     // bad number
    EXPECT_THROW(parse_statevector("2\n1 0\n0 0\n"), ParseError);         // no header
    EXPECT_THROW(parse_statevector(""), ParseError);
    EXPECT_THROW(parse_statevector("dim 1\n1 0 0\n"), ParseError);
}
