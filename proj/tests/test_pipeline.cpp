#include "qgenome/pipeline.hpp"

#include <Eigen/SVD>
#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

using namespace qgenome;

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::Index column_of(const std::string &kmer) {
    Eigen::Index c = 0;
    for (char ch : kmer) {
        c = c * 4 + static_cast<Eigen::Index>(std::string("ACGT").find(ch));
    }
    return c;
}

std::filesystem::path temp_file(const std::string &name, const std::string &content) {
    const auto path = std::filesystem::temp_directory_path() / ("qgenome_test_" + name);
    std::ofstream(path) << content;
    return path;
}

Eigen::MatrixXd random_matrix(std::mt19937_64 &rng, int m, int d) {
    std::normal_distribution<double> g;
    return Eigen::MatrixXd::NullaryExpr(m, d, [&] { return g(rng); });
}

// covariance spectrum from singular values of the centered data
Eigen::VectorXd oracle_spectrum(const Eigen::MatrixXd &X) {
    const Eigen::MatrixXd C = X.rowwise() - X.colwise().mean();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(C);
    return svd.singularValues().array().square() / static_cast<double>(X.rows() - 1);
}

}  // namespace

TEST(Dataset, CsvLoads) {
    std::istringstream in("sequence,label\nacgt,0\nGGGG,1\n");
    const auto ds = parse_csv_dataset(in, "mem");
    ASSERT_EQ(ds.size(), 2U);
    EXPECT_EQ(ds.sequences[0], "ACGT");
    EXPECT_EQ(ds.labels, (std::vector<int>{ 0, 1 }));
}

TEST(Dataset, CsvColumnOrderIsFree) {
    std::istringstream in("id,label,sequence\n7,1,ACNT\n");
    const auto ds = parse_csv_dataset(in, "mem");
    EXPECT_EQ(ds.sequences[0], "ACNT");
    EXPECT_EQ(ds.labels[0], 1);
}

TEST(Dataset, CsvErrorsNameTheLine) {
    std::istringstream bad_char("sequence,label\nACGT,0\nACXT,1\n");
    try {
        (void)parse_csv_dataset(bad_char, "f.csv");
        FAIL() << "expected an error";
    } catch (const std::runtime_error &e) {
        EXPECT_NE(std::string(e.what()).find("f.csv:3"), std::string::npos) << e.what();
    }
    std::istringstream bad_label("sequence,label\nACGT,2\n");
    EXPECT_THROW((void)parse_csv_dataset(bad_label, "f"), std::runtime_error);
    std::istringstream bad_width("sequence,label\nACGT\n");
    EXPECT_THROW((void)parse_csv_dataset(bad_width, "f"), std::runtime_error);
    std::istringstream no_header("ACGT,0\n");
    EXPECT_THROW((void)parse_csv_dataset(no_header, "f"), std::runtime_error);
}

TEST(Dataset, EmptyFileHasNoRecords) {
    const auto path = temp_file("empty.csv", "");
    try {
        (void)load_dataset(path, DatasetFormat::CSV);
        FAIL() << "expected an error";
    } catch (const std::runtime_error &e) {
        EXPECT_NE(std::string(e.what()).find("no records"), std::string::npos);
    }
    EXPECT_THROW((void)load_dataset("/nonexistent/file.csv", DatasetFormat::CSV), std::runtime_error);
}

TEST(Dataset, Fasta) {
    std::istringstream in(">seq1 label=1 origin=x\nACGT\nNNAC\n\n>seq2 label=0\ngatt\n");
    const auto ds = parse_fasta_dataset(in, "mem");
    ASSERT_EQ(ds.size(), 2U);
    EXPECT_EQ(ds.sequences[0], "ACGTNNAC");
    EXPECT_EQ(ds.sequences[1], "GATT");
    EXPECT_EQ(ds.labels, (std::vector<int>{ 1, 0 }));
    std::istringstream missing(">seq1\nACGT\n");
    EXPECT_THROW((void)parse_fasta_dataset(missing, "mem"), std::runtime_error);
}

TEST(Kmers, SingleWindow) {
    const auto X = vectorize_kmers({ "AAA" }, 3);
    ASSERT_EQ(X.cols(), 64);
    EXPECT_EQ(X(0, 0), 1.0);
    EXPECT_EQ(X.sum(), 1.0);
    EXPECT_EQ(kmer_name(0, 3), "AAA");
    EXPECT_EQ(kmer_name(63, 3), "TTT");
    EXPECT_EQ(kmer_name(column_of("GAT"), 3), "GAT");
}

TEST(Kmers, WindowFractions) {
    const auto X = vectorize_kmers({ "ACAC" }, 2);
    EXPECT_DOUBLE_EQ(X(0, column_of("AC")), 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(X(0, column_of("CA")), 1.0 / 3.0);
}

TEST(Kmers, RowSumsAndNHandling) {
    const auto X = vectorize_kmers({ "ACGTTGCA", "ACNGTA", "NNNN", "GATTACA" }, 3);
    EXPECT_NEAR(X.row(0).sum(), 1.0, 1e-15);
    EXPECT_LT(X.row(1).sum(), 1.0);
    // ACNGTA has windows ACN CNG NGT GTA; only GTA counts
    EXPECT_DOUBLE_EQ(X(1, column_of("GTA")), 0.25);
    EXPECT_EQ(X.row(2).sum(), 0.0);
    EXPECT_NEAR(X.row(3).sum(), 1.0, 1e-15);
    EXPECT_THROW((void)vectorize_kmers({ "AC" }, 3), std::invalid_argument);
    EXPECT_THROW((void)vectorize_kmers({ "ACGT" }, 0), std::invalid_argument);
}

TEST(Pca, TwoDistinctPoints) {
    Eigen::VectorXd a(5), b(5);
    a << 1, 2, 0, -1, 3;
    b << 4, -2, 1, 0, 3;
    Eigen::MatrixXd X(6, 5);
    for (int i = 0; i < 6; ++i) {
        X.row(i) = (i % 2 ? b : a).transpose();
    }
    const auto model = pca_fit(X);
    EXPECT_TRUE(model.rank_deficient);
    const Eigen::VectorXd diff = b - a;
    EXPECT_NEAR(std::abs(model.components.row(0).dot(diff)) / diff.norm(), 1.0, 1e-12);
    const auto S = pca_transform(model, X);
    for (int i = 0; i < 6; ++i) {
        EXPECT_NEAR(std::abs(S(i, 0)), diff.norm() / 2.0, 1e-12);
        EXPECT_NEAR(S.row(i).tail(3).norm(), 0.0, 1e-12);
    }
    EXPECT_EQ(model.explained_variance.tail(3), Eigen::Vector3d::Zero());
    const Eigen::MatrixXd orth = model.components * model.components.transpose();
    EXPECT_LT((orth - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Pca, MeanRowMapsToZero) {
    std::mt19937_64 rng(1);
    const Eigen::MatrixXd X = random_matrix(rng, 20, 8);
    const auto model = pca_fit(X);
    EXPECT_LT(pca_transform(model, model.mean.transpose()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Pca, RandomMatricesAgainstSvdOracle) {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        const int m = 6 + trial % 30;
        const int d = 4 + trial % 9;
        const Eigen::MatrixXd X = random_matrix(rng, m, d);
        const auto model = pca_fit(X);
        const Eigen::MatrixXd orth = model.components * model.components.transpose();
        EXPECT_LT((orth - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff(), 1e-8);
        for (int c = 1; c < 4; ++c) {
            EXPECT_GE(model.explained_variance(c - 1), model.explained_variance(c));
        }
        const Eigen::VectorXd spectrum = oracle_spectrum(X);
        for (int c = 0; c < 4 && c < spectrum.size(); ++c) {
            EXPECT_NEAR(model.explained_variance(c), spectrum(c), 1e-9 * std::max(1.0, spectrum(0)));
        }
        for (int c = 0; c < 4; ++c) {
            Eigen::Index arg = 0;
            model.components.row(c).cwiseAbs().maxCoeff(&arg);
            EXPECT_GT(model.components(c, arg), 0.0);
        }
    }
}

TEST(Pca, ReconstructionErrorEqualsDiscardedMass) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const int m = 30;
        const int d = 10;
        const int rank = 2 + trial % 5;
        const Eigen::MatrixXd X = random_matrix(rng, m, rank) * random_matrix(rng, rank, d) + 0.01 * random_matrix(rng, m, d);
        const auto model = pca_fit(X);
        const Eigen::MatrixXd centered = X.rowwise() - model.mean.transpose();
        const Eigen::MatrixXd back = pca_transform(model, X) * model.components;
        const double err = (centered - back).squaredNorm() / (m - 1);
        const Eigen::VectorXd spectrum = oracle_spectrum(X);
        const double discarded = spectrum.tail(spectrum.size() - 4).sum();
        EXPECT_LE(err, discarded + 1e-9);
        EXPECT_NEAR(err, discarded, 1e-8);
        const double total = centered.squaredNorm() / (m - 1);
        const double kept = (pca_transform(model, X)).squaredNorm() / (m - 1);
        EXPECT_LE(kept, total + 1e-12);
        if (rank <= 4) {
            EXPECT_NEAR(kept / total, 1.0, 1e-3);
        }
    }
}

TEST(Pca, Errors) {
    EXPECT_THROW((void)pca_fit(Eigen::MatrixXd::Zero(4, 6)), std::invalid_argument);
    EXPECT_THROW((void)pca_fit(Eigen::MatrixXd::Zero(8, 3)), std::invalid_argument);
    std::mt19937_64 rng(4);
    const auto model = pca_fit(random_matrix(rng, 10, 6));
    EXPECT_THROW((void)pca_transform(model, Eigen::MatrixXd::Zero(2, 5)), std::invalid_argument);
}

TEST(Scaler, AffineMapAndRules) {
    Eigen::MatrixXd X(3, 2);
    X << 0, 5, 2, 5, 4, 5;
    const auto s = fit_angle_scaler(X);
    const auto Y = scale_to_angles(s, X);
    EXPECT_DOUBLE_EQ(Y(0, 0), 0.0);
    EXPECT_DOUBLE_EQ(Y(1, 0), kPi / 2);
    EXPECT_DOUBLE_EQ(Y(2, 0), kPi);
    EXPECT_DOUBLE_EQ(Y(0, 1), kPi / 2);
    Eigen::MatrixXd T(2, 2);
    T << 9, 1, -3, 5;
    const auto Z = scale_to_angles(s, T);
    EXPECT_DOUBLE_EQ(Z(0, 0), kPi);
    EXPECT_DOUBLE_EQ(Z(1, 0), 0.0);
    EXPECT_DOUBLE_EQ(Z(0, 1), kPi / 2);
    Eigen::MatrixXd bad = X;
    bad(0, 0) = std::nan("");
    EXPECT_THROW((void)scale_to_angles(s, bad), std::invalid_argument);
    EXPECT_THROW((void)fit_angle_scaler(X, 1.0, 1.0), std::invalid_argument);
}

TEST(Scaler, OutputStaysInRange) {
    std::mt19937_64 rng(5);
    const auto s = fit_angle_scaler(random_matrix(rng, 20, 4), -1.0, 2.0);
    const auto Y = scale_to_angles(s, 5.0 * random_matrix(rng, 100, 4));
    EXPECT_GE(Y.minCoeff(), -1.0);
    EXPECT_LE(Y.maxCoeff(), 2.0);
}

TEST(Split, StratificationArithmetic) {
    const std::vector<int> labels{ 0, 0, 0, 0, 1, 1, 1, 1 };
    const auto s = stratified_split(labels, 0.25, 1);
    EXPECT_EQ(s.train.size(), 6U);
    ASSERT_EQ(s.test.size(), 2U);
    EXPECT_NE(labels[static_cast<std::size_t>(s.test[0])], labels[static_cast<std::size_t>(s.test[1])]);
    const auto t = stratified_split(labels, 0.25, 1);
    EXPECT_EQ(s.train, t.train);
    EXPECT_EQ(s.test, t.test);

    const std::vector<int> four{ 1, 0, 1, 0 };
    const auto h = stratified_split(four, 0.5, 9);
    ASSERT_EQ(h.train.size(), 2U);
    ASSERT_EQ(h.test.size(), 2U);
    EXPECT_NE(four[static_cast<std::size_t>(h.train[0])], four[static_cast<std::size_t>(h.train[1])]);
}

TEST(Split, ProportionsAndPartition) {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<int> labels(20 + trial * 3);
        for (auto &l : labels) {
            l = static_cast<int>(rng() % 3 == 0);
        }
        labels[0] = 0;
        labels[1] = 0;
        labels[2] = 1;
        labels[3] = 1;
        const auto s = stratified_split(labels, 0.3, static_cast<std::uint64_t>(trial));
        std::vector<Eigen::Index> all = s.train;
        all.insert(all.end(), s.test.begin(), s.test.end());
        std::sort(all.begin(), all.end());
        for (std::size_t i = 0; i < all.size(); ++i) {
            EXPECT_EQ(all[i], static_cast<Eigen::Index>(i));
        }
        const double overall = std::count(labels.begin(), labels.end(), 1) / static_cast<double>(labels.size());
        const auto pos_test = std::count_if(s.test.begin(), s.test.end(), [&](Eigen::Index i) { return labels[static_cast<std::size_t>(i)] == 1; });
        EXPECT_LE(std::abs(static_cast<double>(pos_test) - overall * static_cast<double>(s.test.size())), 1.0 + 1e-9);
    }
}

TEST(Split, Errors) {
    EXPECT_THROW((void)stratified_split({ 0, 0, 0, 1 }, 0.25, 0), std::invalid_argument);
    EXPECT_THROW((void)stratified_split({ 0, 0, 1, 1 }, 1.0, 0), std::invalid_argument);
    EXPECT_THROW((void)stratified_split({ 0, 0, 0, 0 }, 0.5, 0), std::invalid_argument);
}

TEST(Subset, ClassProportional) {
    std::vector<int> labels(200);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        labels[i] = i < 150 ? 0 : 1;
    }
    const auto s = stratified_subset(labels, 40, 3);
    ASSERT_EQ(s.size(), 40U);
    EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
    EXPECT_EQ(std::count_if(s.begin(), s.end(), [&](Eigen::Index i) { return labels[static_cast<std::size_t>(i)] == 1; }), 10);
    EXPECT_EQ(stratified_subset(labels, 500, 3).size(), 200U);
}

TEST(Prepare, FitsOnTrainOnlyAndIsDeterministic) {
    std::mt19937_64 rng(7);
    RawDataset ds;
    const std::string bases = "ACGT";
    for (int i = 0; i < 40; ++i) {
        std::string s;
        for (int j = 0; j < 30; ++j) {
            s.push_back(bases[rng() % 4]);
        }
        ds.sequences.push_back(s);
        ds.labels.push_back(i % 2);
    }
    PipelineConfig cfg;
    cfg.seed = 5;
    const auto a = prepare_data(ds, cfg);
    const auto b = prepare_data(ds, cfg);
    EXPECT_EQ(a.X_train, b.X_train);
    EXPECT_EQ(a.X_test, b.X_test);
    EXPECT_EQ(a.X_train.cols(), 4);
    EXPECT_EQ(a.X_train.rows() + a.X_test.rows(), 40);
    EXPECT_EQ(a.X_test.rows(), 10);
    EXPECT_GE(a.X_test.minCoeff(), 0.0);
    EXPECT_LE(a.X_test.maxCoeff(), kPi);
    // training columns span the full range because the scaler saw exactly these rows
    for (Eigen::Index c = 0; c < 4; ++c) {
        EXPECT_DOUBLE_EQ(a.X_train.col(c).minCoeff(), 0.0);
        EXPECT_DOUBLE_EQ(a.X_train.col(c).maxCoeff(), kPi);
    }
    const auto train = a.data.subset(a.split.train);
    EXPECT_EQ(a.pipeline.transform(train.sequences), a.X_train);

    cfg.subset_size = 20;
    const auto c = prepare_data(ds, cfg);
    EXPECT_EQ(c.data.size(), 20U);
    // round(0.25 * 10) = 3 per class
    EXPECT_EQ(c.X_test.rows(), 6);
}
