#include "oracle.hpp"

#include "qgenome/feature_map.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace qgenome;
using cd = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

FeatureMapConfig config(FeatureMapKind kind, int n, bool hadamard = true) {
    FeatureMapConfig c;
    c.kind = kind;
    c.n_qubits = n;
    c.hadamard_layer = hadamard;
    return c;
}

Eigen::VectorXd vec(std::initializer_list<double> values) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double x : values) {
        v(i++) = x;
    }
    return v;
}

int count_kind(const Circuit &c, GateKind kind) {
    return static_cast<int>(std::count_if(c.gates().begin(), c.gates().end(), [&](const Gate &g) { return g.kind == kind; }));
}

}  // namespace

TEST(FeatureMap, ZMapOnZeroIsPlus) {
    const auto cfg = config(FeatureMapKind::Z, 1);
    const auto c = build_feature_map(cfg, vec({ 0.0 }));
    ASSERT_EQ(c.size(), 2U);
    EXPECT_EQ(c.gates()[0].kind, GateKind::H);
    EXPECT_EQ(c.gates()[1].kind, GateKind::RZ);
    EXPECT_EQ(c.gates()[1].angle, 0.0);
    const auto s = encode(cfg, vec({ 0.0 }));
    EXPECT_NEAR(std::abs(s[0] - 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s[1] - 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
}

TEST(FeatureMap, ZMapQuarterTurn) {
    const auto s = encode(config(FeatureMapKind::Z, 1), vec({ kPi / 2 }));
    EXPECT_NEAR(std::abs(s[0] - std::exp(cd(0, -kPi / 2)) / std::sqrt(2.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s[1] - std::exp(cd(0, kPi / 2)) / std::sqrt(2.0)), 0.0, 1e-15);
}

TEST(FeatureMap, ZzWithZeroProductMatchesZMap) {
    const auto x = vec({ kPi, 0.0 });
    const auto zz = encode(config(FeatureMapKind::ZZ, 2), x);
    const auto z = encode(config(FeatureMapKind::Z, 2), x);
    EXPECT_LT((zz.amplitudes() - z.amplitudes()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(FeatureMap, ZzHasOneInteractionPerPair) {
    const auto c = build_feature_map(config(FeatureMapKind::ZZ, 2), vec({ 0.3, -1.7 }));
    ASSERT_EQ(count_kind(c, GateKind::RZZ), 1);
    const auto it = std::find_if(c.gates().begin(), c.gates().end(), [](const Gate &g) { return g.kind == GateKind::RZZ; });
    EXPECT_DOUBLE_EQ(it->angle, 0.3 * -1.7);
    EXPECT_EQ(it->qubits[0], 0);
    EXPECT_EQ(it->qubits[1], 1);
}

TEST(FeatureMap, PauliAtZeroIsHadamardLayerOnly) {
    const auto s = encode(config(FeatureMapKind::Pauli, 2), vec({ 0.0, 0.0 }));
    for (Eigen::Index i = 0; i < 4; ++i) {
        EXPECT_NEAR(std::abs(s[i] - 0.5), 0.0, 1e-15);
    }
}

TEST(FeatureMap, PauliGateOrder) {
    const auto c = build_feature_map(config(FeatureMapKind::Pauli, 2), vec({ 0.1, 0.2 }));
    const std::vector<GateKind> expected{ GateKind::H, GateKind::H, GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::RZX };
    ASSERT_EQ(c.size(), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        EXPECT_EQ(c.gates()[i].kind, expected[i]) << i;
    }
    EXPECT_DOUBLE_EQ(c.gates().back().angle, 0.1 * 0.2);
}

TEST(FeatureMap, FullAngleConventionOnly) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-3, 3);
    for (auto kind : { FeatureMapKind::Z, FeatureMapKind::ZZ, FeatureMapKind::Pauli }) {
        auto cfg = config(kind, 4);
        cfg.repetitions = 2;
        const Eigen::VectorXd x = Eigen::VectorXd::NullaryExpr(4, [&] { return u(rng); });
        const auto c = build_feature_map(cfg, x);
        for (const auto &g : c.gates()) {
            EXPECT_EQ(g.convention, AngleConvention::Full);
        }
    }
}

TEST(FeatureMap, GateCountFormula) {
    for (int n = 1; n <= 6; ++n) {
        for (int r = 1; r <= 3; ++r) {
            for (bool h : { true, false }) {
                auto cfg = config(FeatureMapKind::Z, n, h);
                cfg.repetitions = r;
                const Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(n, 0.1, 1.0);
                const auto z = build_feature_map(cfg, x);
                EXPECT_EQ(static_cast<int>(z.size()), r * (n * (h ? 1 : 0) + n));
                cfg.kind = FeatureMapKind::ZZ;
                const auto zz = build_feature_map(cfg, x);
                EXPECT_EQ(static_cast<int>(zz.size()), r * (n * (h ? 1 : 0) + n) + r * n * (n - 1) / 2);
                cfg.entanglement = Entanglement::Linear;
                EXPECT_EQ(count_kind(build_feature_map(cfg, x), GateKind::RZZ), r * (n - 1));
            }
        }
    }
}

TEST(FeatureMap, EncodeIsNormalizedAndMatchesOracle) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto kind = static_cast<FeatureMapKind>(trial % 3);
        const int n = 1 + trial % 4;
        auto cfg = config(kind, n, trial % 5 != 0);
        cfg.repetitions = 1 + trial % 2;
        const Eigen::VectorXd x = Eigen::VectorXd::NullaryExpr(n, [&] { return u(rng); });
        const auto s = encode(cfg, x);
        EXPECT_LT(std::abs(s.norm() - 1.0), 1e-12);
        if (n <= 3 && trial < 200) {
            const auto ref = oracle::run(build_feature_map(cfg, x), oracle::zero_state(n));
            EXPECT_LT((s.amplitudes() - ref).cwiseAbs().maxCoeff(), 1e-12);
        }
    }
}

TEST(FeatureMap, Deterministic) {
    const auto cfg = config(FeatureMapKind::Pauli, 3);
    const auto x = vec({ 0.4, 1.1, 2.5 });
    const auto a = build_feature_map(cfg, x);
    const auto b = build_feature_map(cfg, x);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a.gates()[i].kind, b.gates()[i].kind);
        EXPECT_EQ(a.gates()[i].angle, b.gates()[i].angle);
        EXPECT_EQ(a.gates()[i].qubits, b.gates()[i].qubits);
    }
}

TEST(FeatureMap, Errors) {
    EXPECT_THROW((void)build_feature_map(config(FeatureMapKind::Z, 2), vec({ 1.0 })), std::invalid_argument);
    EXPECT_THROW((void)build_feature_map(config(FeatureMapKind::Z, 1), vec({ std::nan("") })), std::invalid_argument);
    auto bad = config(FeatureMapKind::Z, 0);
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    bad = config(FeatureMapKind::Z, 2);
    bad.repetitions = 0;
    EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(FeatureMap, NamesRoundTrip) {
    for (auto kind : { FeatureMapKind::Z, FeatureMapKind::ZZ, FeatureMapKind::Pauli }) {
        EXPECT_EQ(parse_feature_map_kind(to_string(kind)), kind);
    }
    EXPECT_EQ(display_name(FeatureMapKind::ZZ), "ZZFeatureMap");
    EXPECT_EQ(parse_entanglement("linear"), Entanglement::Linear);
    EXPECT_THROW((void)parse_feature_map_kind("XY"), std::invalid_argument);
}
