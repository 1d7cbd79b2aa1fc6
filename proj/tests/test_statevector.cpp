#include "oracle.hpp"

#include "qgenome/statevector.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace qgenome;
using cd = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Statevector from(std::initializer_list<cd> amps) {
    Statevector::Amplitudes v(static_cast<Eigen::Index>(amps.size()));
    Eigen::Index i = 0;
    for (const auto &a : amps) {
        v(i++) = a;
    }
    return Statevector::from_amplitudes(v);
}

void expect_state_near(const Statevector &s, const oracle::Vec &expected, double tol) {
    ASSERT_EQ(s.dim(), expected.size());
    for (Eigen::Index i = 0; i < expected.size(); ++i) {
        EXPECT_NEAR(std::abs(s[i] - expected(i)), 0.0, tol) << "amplitude " << i;
    }
}

}  // namespace

TEST(Statevector, HadamardOnZero) {
    const auto s = apply_gate(Statevector::zero(1), Gate::h(0));
    EXPECT_NEAR(std::abs(s[0] - kInvSqrt2), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s[1] - kInvSqrt2), 0.0, 1e-15);
}

TEST(Statevector, FullAngleRzOnPlus) {
    const auto plus = apply_gate(Statevector::zero(1), Gate::h(0));
    const auto s = apply_gate(plus, Gate::rz(0, kPi / 2));
    EXPECT_NEAR(std::abs(s[0] - std::exp(cd(0, -kPi / 2)) * kInvSqrt2), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s[1] - std::exp(cd(0, kPi / 2)) * kInvSqrt2), 0.0, 1e-15);
}

TEST(Statevector, CnotBuildsBellState) {
    // (|00> + |10>)/sqrt2 in |q1 q0> labels: qubit 0 is the control and is set in index 1
    const auto s = apply_gate(from({ kInvSqrt2, kInvSqrt2, 0, 0 }), Gate::cnot(0, 1));
    EXPECT_NEAR(std::abs(s[0] - kInvSqrt2), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s[1]), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s[2]), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s[3] - kInvSqrt2), 0.0, 1e-15);
}

TEST(Statevector, GateValidation) {
    auto s = Statevector::zero(2);
    EXPECT_THROW(s.apply(Gate::h(2)), std::out_of_range);
    EXPECT_THROW(s.apply(Gate::cnot(1, 1)), std::invalid_argument);
    EXPECT_THROW(s.apply(Gate::rx(0, std::nan(""))), std::invalid_argument);
    EXPECT_THROW(s.apply(Gate::rz(0, INFINITY)), std::invalid_argument);
    EXPECT_THROW(Statevector::zero(0), std::invalid_argument);
    EXPECT_THROW(Statevector::zero(kMaxQubits + 1), std::invalid_argument);
}

TEST(Statevector, EmptyCircuitIsIdentity) {
    std::mt19937_64 rng(3);
    const auto s = Statevector::from_amplitudes(oracle::random_state(rng, 3));
    const auto out = run_circuit(Circuit(3), s);
    EXPECT_EQ(out.amplitudes(), s.amplitudes());
}

TEST(Statevector, HadamardSquaredIsIdentity) {
    Circuit c(1);
    c.append(Gate::h(0)).append(Gate::h(0));
    const auto s = run_circuit(c, Statevector::zero(1));
    EXPECT_NEAR(std::abs(s[0] - 1.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(s[1]), 0.0, 1e-12);
}

TEST(Statevector, HadamardsThenCz) {
    Circuit c(2);
    c.append(Gate::h(0)).append(Gate::h(1)).append(Gate::cz(0, 1));
    const auto s = run_circuit(c, Statevector::zero(2));
    oracle::Vec expected(4);
    expected << 0.5, 0.5, 0.5, -0.5;
    expect_state_near(s, expected, 1e-15);
    expect_state_near(s, oracle::run(c, oracle::zero_state(2)), 1e-15);
}

TEST(Statevector, RunCircuitQubitMismatch) {
    EXPECT_THROW((void)run_circuit(Circuit(2), Statevector::zero(3)), std::invalid_argument);
}

TEST(Statevector, InnerProducts) {
    std::mt19937_64 rng(5);
    const auto psi = Statevector::from_amplitudes(oracle::random_state(rng, 3));
    EXPECT_NEAR(std::abs(inner_product(psi, psi) - 1.0), 0.0, 1e-12);
    EXPECT_EQ(inner_product(Statevector::basis(1, 0), Statevector::basis(1, 1)), cd(0.0));
    const auto plus = apply_gate(Statevector::zero(1), Gate::h(0));
    EXPECT_NEAR(std::abs(inner_product(plus, Statevector::zero(1)) - kInvSqrt2), 0.0, 1e-15);
    EXPECT_THROW((void)inner_product(Statevector::zero(1), Statevector::zero(2)), std::invalid_argument);
}

TEST(Statevector, InnerProductIsConjugateLinearInFirstArgument) {
    const auto a = from({ cd(0, 1), 0 });
    const auto b = from({ 1, 0 });
    EXPECT_NEAR(std::abs(inner_product(a, b) - cd(0, -1)), 0.0, 1e-15);
}

TEST(Statevector, ParityExpectation) {
    EXPECT_DOUBLE_EQ(expectation_parity_z(Statevector::zero(4)), 1.0);
    EXPECT_DOUBLE_EQ(expectation_parity_z(Statevector::basis(1, 1)), -1.0);
    EXPECT_NEAR(expectation_parity_z(from({ kInvSqrt2, kInvSqrt2, 0, 0 })), 0.0, 1e-15);
    std::mt19937_64 rng(11);
    for (int n = 1; n <= 3; ++n) {
        const auto v = oracle::random_state(rng, n);
        EXPECT_NEAR(expectation_parity_z(Statevector::from_amplitudes(v)), oracle::parity_z(v), 1e-12);
    }
}

TEST(Statevector, FromAmplitudesRejectsInvalidVectors) {
    EXPECT_THROW(Statevector::from_amplitudes(Statevector::Amplitudes::Ones(3) / std::sqrt(3.0)), std::invalid_argument);
    EXPECT_THROW(Statevector::from_amplitudes(Statevector::Amplitudes::Ones(4)), std::invalid_argument);
}

TEST(Statevector, GateMatricesAreUnitary) {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 200; ++i) {
        const auto g = oracle::random_gate(rng, 3);
        const auto u = g.local_matrix();
        const Eigen::MatrixXcd err = u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
        EXPECT_LT(err.cwiseAbs().maxCoeff(), 1e-12) << gate_name(g.kind);
    }
}

TEST(Statevector, AgreesWithDenseOracle) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + trial % 3;
        const auto circuit = oracle::random_circuit(rng, n, 12);
        const auto init = oracle::random_state(rng, n);
        const auto out = run_circuit(circuit, Statevector::from_amplitudes(init));
        expect_state_near(out, oracle::run(circuit, init), 1e-12);
    }
}

TEST(Statevector, NormPreservation) {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 1 + trial % 5;
        const auto out = run_circuit(oracle::random_circuit(rng, n, 20), Statevector::zero(n));
        EXPECT_LT(std::abs(out.norm() - 1.0), 1e-10);
    }
}

TEST(Statevector, InverseUndoesGate) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 2 + trial % 3;
        const auto g = oracle::random_gate(rng, n);
        const auto init = Statevector::from_amplitudes(oracle::random_state(rng, n));
        const auto back = apply_gate(apply_gate(init, g), g.inverse());
        expect_state_near(back, init.amplitudes(), 1e-10);
    }
}

TEST(Statevector, TwoQubitGateOrientation) {
    // control on the higher qubit, target on the lower
    const auto s = apply_gate(Statevector::basis(2, 2), Gate::cnot(1, 0));
    EXPECT_NEAR(std::abs(s[3] - 1.0), 0.0, 1e-15);
    const auto t = apply_gate(Statevector::basis(2, 2), Gate::cnot(0, 1));
    EXPECT_NEAR(std::abs(t[2] - 1.0), 0.0, 1e-15);
}

TEST(Statevector, LongDoubleInstantiation) {
    using GateL = BasicGate<long double>;
    auto s = BasicStatevector<long double>::zero(2);
    s.apply(GateL::h(0));
    s.apply(GateL::cnot(0, 1));
    EXPECT_NEAR(static_cast<double>(std::abs(s[3])), kInvSqrt2, 1e-15);
}
