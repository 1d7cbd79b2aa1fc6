#include "qgenome/kernel.hpp"
#include "qgenome/rng.hpp"
#include "qgenome/serialization.hpp"

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>

using namespace qgenome;

namespace {

// dump to text and parse back, as a file round trip would
template <typename T>
T round_trip(const T &value) {
    return Json::parse(Json(value).dump()).get<T>();
}

bool same_bits(const Eigen::MatrixXd &a, const Eigen::MatrixXd &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return false;
    }
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (std::bit_cast<std::uint64_t>(a.data()[i]) != std::bit_cast<std::uint64_t>(b.data()[i])) {
            return false;
        }
    }
    return true;
}

Eigen::MatrixXd random_matrix(Rng &rng, Eigen::Index rows, Eigen::Index cols, double lo, double hi) {
    Eigen::MatrixXd M(rows, cols);
    for (Eigen::Index i = 0; i < M.size(); ++i) {
        M.data()[i] = rng.uniform(lo, hi);
    }
    return M;
}

Eigen::VectorXd alternating_labels(Eigen::Index n) {
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        y(i) = i % 2 == 0 ? 1.0 : -1.0;
    }
    return y;
}

}  // namespace

TEST(Serialization, VectorRoundTripIsBitExact) {
    Rng rng(11);
    Eigen::VectorXd v(8);
    v << 0.1, 1.0 / 3.0, -std::numbers::pi, 1e-300, std::numeric_limits<double>::denorm_min(), 6.02214076e23, -0.0, rng.uniform(-1, 1);
    const Eigen::VectorXd back = vector_from_json(Json::parse(vector_to_json(v).dump()));
    EXPECT_TRUE(same_bits(v, back));
}

TEST(Serialization, MatrixRoundTripIsBitExact) {
    Rng rng(12);
    const Eigen::MatrixXd M = random_matrix(rng, 5, 3, -10, 10);
    EXPECT_TRUE(same_bits(M, matrix_from_json(Json::parse(matrix_to_json(M).dump()), 3)));
}

TEST(Serialization, EmptyMatrixKeepsExpectedWidth) {
    const Eigen::MatrixXd M = matrix_from_json(Json::array(), 4);
    EXPECT_EQ(M.rows(), 0);
    EXPECT_EQ(M.cols(), 4);
}

TEST(Serialization, RaggedMatrixRejected) {
    const Json j = Json::parse("[[1,2],[3]]");
    EXPECT_THROW((void)matrix_from_json(j), std::invalid_argument);
}

TEST(Serialization, NonNumericVectorRejected) {
    EXPECT_THROW((void)vector_from_json(Json::parse("[1, \"x\"]")), std::invalid_argument);
    EXPECT_THROW((void)vector_from_json(Json::parse("{}")), std::invalid_argument);
}

TEST(Serialization, FeatureMapConfigRoundTrip) {
    FeatureMapConfig c;
    c.kind = FeatureMapKind::Pauli;
    c.n_qubits = 3;
    c.repetitions = 2;
    c.entanglement = Entanglement::Linear;
    c.hadamard_layer = false;
    EXPECT_EQ(round_trip(c), c);
}

TEST(Serialization, QsvcModelRoundTripReproducesDecisions) {
    Rng rng(13);
    FeatureMapConfig fm;
    fm.kind = FeatureMapKind::ZZ;
    const Eigen::MatrixXd X = random_matrix(rng, 10, 4, 0, std::numbers::pi);
    const Eigen::VectorXd y = alternating_labels(10);
    const QsvcModel m = fit_qsvc(fm, X, y);
    const QsvcModel back = round_trip(m);
    EXPECT_TRUE(same_bits(m.alphas, back.alphas));
    EXPECT_TRUE(same_bits(m.train_features, back.train_features));
    EXPECT_EQ(std::bit_cast<std::uint64_t>(m.bias), std::bit_cast<std::uint64_t>(back.bias));
    EXPECT_EQ(back.feature_map, fm);
    const Eigen::MatrixXd Xt = random_matrix(rng, 4, 4, 0, std::numbers::pi);
    EXPECT_TRUE(same_bits(qsvc_decisions(m, cross_gram(fm, m.train_features, Xt)), qsvc_decisions(back, cross_gram(fm, back.train_features, Xt))));
}

TEST(Serialization, PegasosModelRoundTrip) {
    Rng rng(14);
    FeatureMapConfig fm;
    const Eigen::MatrixXd X = random_matrix(rng, 8, 4, 0, std::numbers::pi);
    PegasosParams params;
    params.steps = 50;
    const PegasosModel m = fit_pegasos(fm, X, alternating_labels(8), params);
    const PegasosModel back = round_trip(m);
    EXPECT_TRUE(same_bits(m.coefficients, back.coefficients));
    EXPECT_EQ(back.steps_T, 50);
    EXPECT_EQ(std::bit_cast<std::uint64_t>(m.lambda), std::bit_cast<std::uint64_t>(back.lambda));
}

TEST(Serialization, PegasosLengthMismatchRejected) {
    Rng rng(15);
    FeatureMapConfig fm;
    const Eigen::MatrixXd X = random_matrix(rng, 6, 4, 0, std::numbers::pi);
    PegasosParams params;
    params.steps = 10;
    Json j = fit_pegasos(fm, X, alternating_labels(6), params);
    j["coefficients"].erase(0);
    EXPECT_THROW((void)j.get<PegasosModel>(), std::invalid_argument);
}

TEST(Serialization, VariationalModelRoundTripKeepsHistory) {
    Rng rng(16);
    FeatureMapConfig fm;
    const Eigen::MatrixXd X = random_matrix(rng, 8, 4, 0, std::numbers::pi);
    VariationalParams params;
    params.max_iters = 5;
    const VariationalModel m = train_variational(VariationalPreset::QNN, fm, preset_ansatz(VariationalPreset::QNN, 4), X, alternating_labels(8), params);
    const VariationalModel back = round_trip(m);
    EXPECT_TRUE(same_bits(m.theta, back.theta));
    ASSERT_EQ(back.history.size(), m.history.size());
    for (std::size_t i = 0; i < m.history.size(); ++i) {
        EXPECT_EQ(back.history[i].iteration, m.history[i].iteration);
        EXPECT_EQ(std::bit_cast<std::uint64_t>(back.history[i].objective), std::bit_cast<std::uint64_t>(m.history[i].objective));
    }
    EXPECT_EQ(back.preset, VariationalPreset::QNN);
    EXPECT_EQ(back.ansatz.layers, m.ansatz.layers);
}

TEST(Serialization, VariationalThetaLengthMismatchRejected) {
    VariationalModel m;
    m.ansatz = preset_ansatz(VariationalPreset::VQC, 4);
    m.theta = Eigen::VectorXd::Zero(m.ansatz.parameter_count());
    Json j = m;
    j["theta"].push_back(0.5);
    EXPECT_THROW((void)j.get<VariationalModel>(), std::invalid_argument);
}

TEST(Serialization, FittedPipelineRoundTripTransformsIdentically) {
    const std::vector<std::string> seqs{ "ACGTACGTAA", "CCCCGGGGAT", "ATATATATCG", "GGGCCCAAAT", "TTTTACGACG", "ACACACGTGT", "GATTACAGAT" };
    FittedPipeline p;
    p.kmer_k = 2;
    const Eigen::MatrixXd counts = vectorize_kmers(seqs, 2);
    p.pca = pca_fit(counts, 4);
    p.scaler = fit_angle_scaler(pca_transform(p.pca, counts));
    const FittedPipeline back = round_trip(p);
    EXPECT_TRUE(same_bits(p.transform(seqs), back.transform(seqs)));
    EXPECT_EQ(back.pca.rank_deficient, p.pca.rank_deficient);
}

TEST(Serialization, PipelineWidthMismatchRejected) {
    const std::vector<std::string> seqs{ "ACGTACGTAA", "CCCCGGGGAT", "ATATATATCG", "GGGCCCAAAT", "TTTTACGACG", "ACACACGTGT" };
    FittedPipeline p;
    p.kmer_k = 2;
    const Eigen::MatrixXd counts = vectorize_kmers(seqs, 2);
    p.pca = pca_fit(counts, 4);
    p.scaler = fit_angle_scaler(pca_transform(p.pca, counts));
    Json j = p;
    j["kmer_k"] = 3;
    EXPECT_THROW((void)j.get<FittedPipeline>(), std::invalid_argument);
}

TEST(Serialization, MetricsReportFields) {
    MetricsReport r;
    r.accuracy = 0.75;
    r.auroc = 0.5;
    const Json j = r;
    EXPECT_EQ(j.at("accuracy").get<double>(), 0.75);
    EXPECT_EQ(j.at("auroc").get<double>(), 0.5);
    EXPECT_TRUE(j.contains("f1"));
    const Json c = ConfusionCounts{ 1, 2, 3, 4 };
    EXPECT_EQ(c.at("fn").get<int>(), 4);
}
