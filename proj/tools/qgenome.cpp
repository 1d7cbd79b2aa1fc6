#include "qgenome/csv.hpp"
#include "qgenome/kernel.hpp"
#include "qgenome/workflow.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

using namespace qgenome;

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct Options {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
    bool no_timing = false;
    std::string model;
    std::string input;
    std::string features;
    std::string map;
    std::string kernel;
};

ConfigOverrides overrides_of(const Options &o, bool out_is_dir) {
    ConfigOverrides ov;
    ov.seed = o.seed;
    if (out_is_dir && !o.out.empty()) {
        ov.output_dir = o.out;
    }
    return ov;
}

// "-" or empty means stdout
template <typename Fn>
void with_output(const std::string &path, Fn &&fn) {
    if (path.empty() || path == "-") {
        fn(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    fn(out);
}

int cmd_train(const Options &o) {
    const RunConfig config = load_run_config(o.config, overrides_of(o, true));
    const CellResult cell = run_train(config, { !o.no_timing, true });
    std::cout << "feature_map: " << display_name(cell.feature_map.kind) << '\n'
              << "algorithm: " << to_string(cell.algorithm) << '\n'
              << "train_accuracy: " << csv::format_real(cell.train_accuracy) << '\n'
              << "test_accuracy: " << csv::format_real(cell.test.accuracy) << '\n'
              << "converged: " << (cell.converged ? "true" : "false") << '\n'
              << "model: " << cell.model_path.string() << '\n';
    if (!cell.history_path.empty()) {
        std::cout << "history: " << cell.history_path.string() << '\n';
    }
    if (!cell.converged) {
        std::cerr << "warning: training stopped at its iteration budget before converging\n";
    }
    if (const auto *q = std::get_if<QsvcModel>(&cell.artifact->model)) {
        for (const auto &w : q->warnings) {
            std::cerr << "warning: " << w << '\n';
        }
    }
    return 0;
}

int cmd_predict(const Options &o) {
    const ModelArtifact artifact = load_artifact(o.model);
    const auto sequences = read_sequence_csv(o.input);
    const auto predictions = predict_sequences(artifact, sequences);
    with_output(o.out, [&](std::ostream &out) { write_predictions_csv(predictions, out); });
    return 0;
}

int cmd_benchmark(const Options &o) {
    const RunConfig config = load_run_config(o.config, overrides_of(o, true));
    const BenchmarkResult result = run_benchmark(config, { !o.no_timing, true });
    std::cout << render_table(result.table_rows());
    for (const auto &c : result.cells) {
        if (c.failed) {
            std::cerr << "cell " << display_name(c.feature_map.kind) << '/' << to_string(c.algorithm) << " failed: " << c.error << '\n';
        }
    }
    std::cout << "results written to " << config.output_dir.string() << '\n';
    return 0;
}

int cmd_kernel(const Options &o) {
    FeatureMapConfig fm;
    Eigen::MatrixXd X;
    if (!o.features.empty()) {
        std::ifstream in(o.features);
        if (!in) {
            throw std::runtime_error("cannot open features file '" + o.features + "'");
        }
        X = csv::read_matrix(in);
        fm.n_qubits = static_cast<int>(X.cols());
    } else {
        const RunConfig config = load_run_config(o.config, overrides_of(o, false));
        const PreparedData data = prepare_data(load_dataset(config.dataset_path, config.dataset_format), config.pipeline);
        fm = config.feature_maps.front();
        X = data.X_train;
    }
    if (!o.map.empty()) {
        fm.kind = parse_feature_map_kind(o.map);
    }
    fm.validate();
    const Eigen::MatrixXd K = gram_matrix(fm, X);
    with_output(o.out, [&](std::ostream &out) { write_kernel_csv(out, K); });
    return 0;
}

int cmd_verify(const Options &o) {
    std::vector<CheckResult> checks;
    if (!o.kernel.empty()) {
        Eigen::MatrixXd K;
        if (o.kernel == "-") {
            K = read_kernel_csv(std::cin);
        } else {
            std::ifstream in(o.kernel);
            if (!in) {
                throw std::runtime_error("cannot open kernel file '" + o.kernel + "'");
            }
            K = read_kernel_csv(in);
        }
        checks = verify_kernel(K);
    } else {
        std::uint64_t seed = 0;
        if (o.seed) {
            seed = *o.seed;
        } else if (!o.config.empty()) {
            seed = load_run_config(o.config).seed;
        }
        checks = verify_fixtures(seed);
    }
    bool all = true;
    for (const auto &c : checks) {
        std::cout << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail << '\n';
        all = all && c.passed;
    }
    return all ? 0 : kExitVerifyFailed;
}

int cmd_pairplot(const Options &o) {
    const RunConfig config = load_run_config(o.config, overrides_of(o, false));
    with_output(o.out, [&](std::ostream &out) { write_pairplot_csv(config, out); });
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{ "Quantum kernel and variational classifiers for genomic sequences" };
    app.require_subcommand(1);
    Options o;

    auto add_seed = [&](CLI::App *cmd) { cmd->add_option("--seed", o.seed, "Override the config seed"); };

    auto *train = app.add_subcommand("train", "Train one (feature map, algorithm) pair and save the model");
    train->add_option("--config", o.config, "Run config JSON")->required();
    add_seed(train);
    train->add_option("--out", o.out, "Output directory");
    train->add_flag("--no-timing", o.no_timing, "Omit wall-clock times");

    auto *predict = app.add_subcommand("predict", "Score sequences with a saved model");
    predict->add_option("--model", o.model, "Model JSON written by train or benchmark")->required();
    predict->add_option("--input", o.input, "CSV with a sequence column")->required();
    predict->add_option("--out", o.out, "Predictions CSV (default stdout)");

    auto *bench = app.add_subcommand("benchmark", "Run every feature map x algorithm pair");
    bench->add_option("--config", o.config, "Run config JSON")->required();
    add_seed(bench);
    bench->add_option("--out", o.out, "Output directory");
    bench->add_flag("--no-timing", o.no_timing, "Omit wall-clock times so outputs are byte-identical");

    auto *kernel = app.add_subcommand("kernel", "Write the fidelity Gram matrix as CSV");
    auto *kernel_config = kernel->add_option("--config", o.config, "Run config JSON; uses the training split and first feature map");
    auto *kernel_features = kernel->add_option("--features", o.features, "CSV of angle features with a header row");
    kernel_config->excludes(kernel_features);
    kernel->add_option("--map", o.map, "Feature map kind: Z, ZZ or PAULI");
    add_seed(kernel);
    kernel->add_option("--out", o.out, "Gram CSV (default stdout)");

    auto *verify = app.add_subcommand("verify", "Run the property checks; exit 1 if any fails");
    verify->add_option("--config", o.config, "Run config JSON supplying the seed");
    add_seed(verify);
    verify->add_option("--kernel", o.kernel, "Check a Gram CSV instead of the fixtures ('-' reads stdin)");

    auto *pairplot = app.add_subcommand("pairplot-data", "Write PCA scores with labels and split membership");
    pairplot->add_option("--config", o.config, "Run config JSON")->required();
    add_seed(pairplot);
    pairplot->add_option("--out", o.out, "CSV (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*train) {
            return cmd_train(o);
        }
        if (*predict) {
            return cmd_predict(o);
        }
        if (*bench) {
            return cmd_benchmark(o);
        }
        if (*kernel) {
            if (o.config.empty() && o.features.empty()) {
                std::cerr << "error: kernel needs --config or --features\n";
                return kExitUsage;
            }
            return cmd_kernel(o);
        }
        if (*verify) {
            return cmd_verify(o);
        }
        return cmd_pairplot(o);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}
