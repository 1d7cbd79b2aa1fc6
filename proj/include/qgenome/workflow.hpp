#pragma once

// Run configuration and the end-to-end workflows behind the command-line
// tool: train one model, predict with a saved model, and run the feature
// map x algorithm benchmark grid.

#include "qgenome/metrics.hpp"
#include "qgenome/pegasos.hpp"
#include "qgenome/pipeline.hpp"
#include "qgenome/serialization.hpp"
#include "qgenome/smo.hpp"
#include "qgenome/variational.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace qgenome {

// invalid or incomplete run configuration; the message names the offending field
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Algorithm { QSVC, PegasosQSVC, VQC, QNN };

std::string to_string(Algorithm algorithm);
Algorithm parse_algorithm(const std::string &name);

struct AlgorithmSpec {
    Algorithm algorithm = Algorithm::QSVC;
    SmoParams smo;
    PegasosParams pegasos;
    VariationalParams variational;
};

struct RunConfig {
    std::filesystem::path dataset_path;
    DatasetFormat dataset_format = DatasetFormat::CSV;
    PipelineConfig pipeline;
    std::vector<FeatureMapConfig> feature_maps;
    std::vector<AlgorithmSpec> algorithms;
    std::uint64_t seed = 0;
    std::filesystem::path output_dir = "qgenome_out";

    void validate() const;
};

struct ConfigOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::filesystem::path> output_dir;
};

// relative dataset paths resolve against base_dir; unknown keys are rejected
[[nodiscard]] RunConfig parse_run_config(const Json &j, const std::filesystem::path &base_dir = {}, const ConfigOverrides &overrides = {});
[[nodiscard]] RunConfig load_run_config(const std::filesystem::path &path, const ConfigOverrides &overrides = {});
// every field with its effective value
[[nodiscard]] Json run_config_to_json(const RunConfig &config);

using TrainedModel = std::variant<QsvcModel, PegasosModel, VariationalModel>;

// a trained model together with the preprocessing needed to score raw sequences
struct ModelArtifact {
    Algorithm algorithm = Algorithm::QSVC;
    FittedPipeline pipeline;
    TrainedModel model;
};

void to_json(Json &j, const ModelArtifact &a);
void from_json(const Json &j, ModelArtifact &a);
void save_artifact(const ModelArtifact &artifact, const std::filesystem::path &path);
[[nodiscard]] ModelArtifact load_artifact(const std::filesystem::path &path);

[[nodiscard]] const FeatureMapConfig &feature_map_of(const TrainedModel &model);

// decision scores for rows of angle features; positive means class 1
[[nodiscard]] Eigen::VectorXd model_scores(const TrainedModel &model, const Eigen::Ref<const Eigen::MatrixXd> &X);

struct CellResult {
    FeatureMapConfig feature_map;
    Algorithm algorithm = Algorithm::QSVC;
    bool failed = false;
    std::string error;
    double train_accuracy = 0.0;
    ConfusionCounts test_counts;
    MetricsReport test;
    double wall_seconds = 0.0;
    bool converged = false;
    std::filesystem::path model_path;
    std::filesystem::path history_path;
    std::optional<ModelArtifact> artifact;
};

// trains one (feature map, algorithm) cell on prepared data; exceptions propagate
[[nodiscard]] CellResult run_cell(const PreparedData &data, const FeatureMapConfig &feature_map, const AlgorithmSpec &spec);

struct BenchmarkResult {
    RunConfig config;
    std::vector<CellResult> cells;
    double total_seconds = 0.0;
    bool timing = true;

    [[nodiscard]] std::vector<TableRow> table_rows() const;
};

struct WorkflowOptions {
    bool timing = true;
    // write models, histories and reports under config.output_dir
    bool write_outputs = true;
};

// every (feature map, algorithm) pair on one shared split; failures are recorded per cell
[[nodiscard]] BenchmarkResult run_benchmark(const RunConfig &config, const WorkflowOptions &options = {});

[[nodiscard]] Json benchmark_to_json(const BenchmarkResult &result);
[[nodiscard]] std::string benchmark_to_csv(const BenchmarkResult &result);
void write_history_csv(const VariationalModel &model, std::ostream &out);

// single-cell training; requires exactly one feature map and one algorithm
[[nodiscard]] CellResult run_train(const RunConfig &config, const WorkflowOptions &options = {});

struct Prediction {
    std::string sequence;
    double score = 0.0;
    int label = 0;
};

[[nodiscard]] std::vector<Prediction> predict_sequences(const ModelArtifact &artifact, const std::vector<std::string> &sequences);
void write_predictions_csv(const std::vector<Prediction> &predictions, std::ostream &out);

// unscaled PCA scores of the whole (subset) dataset under the train-fitted pipeline
void write_pairplot_csv(const RunConfig &config, std::ostream &out);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

// self-check suite on built-in fixtures: simulator, kernel, SMO KKT, Pegasos bound, gradients
[[nodiscard]] std::vector<CheckResult> verify_fixtures(std::uint64_t seed);
// invariants of a user-supplied Gram matrix
[[nodiscard]] std::vector<CheckResult> verify_kernel(const Eigen::Ref<const Eigen::MatrixXd> &K);

}  // namespace qgenome
