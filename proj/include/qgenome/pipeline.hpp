#pragma once

// Sequence ingestion and classical preprocessing: k-mer frequencies,
// four-component PCA, per-column scaling into an angle range, and
// stratified train/test splitting.

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace qgenome {

enum class DatasetFormat { CSV, FASTA };

DatasetFormat parse_dataset_format(const std::string &name);
std::string to_string(DatasetFormat format);

struct RawDataset {
    std::vector<std::string> sequences;
    // 0 or 1, class 1 is positive
    std::vector<int> labels;
    std::string source;

    [[nodiscard]] std::size_t size() const { return sequences.size(); }
    [[nodiscard]] RawDataset subset(const std::vector<Eigen::Index> &indices) const;
};

// CSV needs a `sequence,label` header; FASTA headers carry a `label=<0|1>` token.
// Sequences are upper-cased and restricted to A, C, G, T, N.
RawDataset load_dataset(const std::filesystem::path &path, DatasetFormat format);
RawDataset parse_csv_dataset(std::istream &in, const std::string &source);
RawDataset parse_fasta_dataset(std::istream &in, const std::string &source);

// sequences for prediction: the label column is optional and zero rows are allowed
std::vector<std::string> read_sequence_csv(const std::filesystem::path &path);

// 4^k columns in lexicographic order over ACGT; windows containing N are skipped;
// counts are divided by the number of windows len - k + 1
[[nodiscard]] Eigen::MatrixXd vectorize_kmers(const std::vector<std::string> &sequences, int k);
[[nodiscard]] std::string kmer_name(Eigen::Index column, int k);

struct PcaModel {
    Eigen::VectorXd mean;
    // one orthonormal direction per row
    Eigen::MatrixXd components;
    Eigen::VectorXd explained_variance;
    // set when the data has fewer than components.rows() nonzero-variance directions
    bool rank_deficient = false;
};

// sign convention: the largest-magnitude coordinate of each component is positive
[[nodiscard]] PcaModel pca_fit(const Eigen::Ref<const Eigen::MatrixXd> &X, int n_components = 4);
// (X - mean) components^T
[[nodiscard]] Eigen::MatrixXd pca_transform(const PcaModel &model, const Eigen::Ref<const Eigen::MatrixXd> &X);

// per-column affine map of the fitted [min, max] onto [lo, hi]
struct AngleScaler {
    Eigen::VectorXd column_min;
    Eigen::VectorXd column_max;
    double lo = 0.0;
    double hi = std::numbers::pi;
};

[[nodiscard]] AngleScaler fit_angle_scaler(const Eigen::Ref<const Eigen::MatrixXd> &X, double lo = 0.0, double hi = std::numbers::pi);
// constant columns map to (lo + hi) / 2; values outside the fitted range are clamped
[[nodiscard]] Eigen::MatrixXd scale_to_angles(const AngleScaler &scaler, const Eigen::Ref<const Eigen::MatrixXd> &X);

struct SplitIndices {
    std::vector<Eigen::Index> train;
    std::vector<Eigen::Index> test;
};

// shuffles each class with the seeded generator and sends round(fraction * n_c)
// of it (at least one, at most n_c - 1) to the test side; indices come back sorted
[[nodiscard]] SplitIndices stratified_split(const std::vector<int> &labels, double test_fraction, std::uint64_t seed);

// class-proportional sample of `size` indices, sorted
[[nodiscard]] std::vector<Eigen::Index> stratified_subset(const std::vector<int> &labels, std::size_t size, std::uint64_t seed);

struct PipelineConfig {
    int kmer_k = 3;
    int pca_dims = 4;
    double angle_lo = 0.0;
    double angle_hi = std::numbers::pi;
    double test_fraction = 0.25;
    std::uint64_t seed = 0;
    std::optional<std::size_t> subset_size;

    void validate() const;
};

// everything needed to turn new sequences into angle features
struct FittedPipeline {
    int kmer_k = 3;
    PcaModel pca;
    AngleScaler scaler;

    [[nodiscard]] Eigen::MatrixXd transform(const std::vector<std::string> &sequences) const;
};

struct PreparedData {
    FittedPipeline pipeline;
    RawDataset data;  // after subsetting
    SplitIndices split;
    Eigen::MatrixXd X_train;
    Eigen::MatrixXd X_test;
    // +-1
    Eigen::VectorXd y_train;
    Eigen::VectorXd y_test;
};

// subset -> split -> k-mers -> PCA and scaling fitted on the training side only
[[nodiscard]] PreparedData prepare_data(const RawDataset &dataset, const PipelineConfig &config);

}  // namespace qgenome
