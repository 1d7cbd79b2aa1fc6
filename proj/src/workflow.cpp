#include "qgenome/workflow.hpp"

#include "qgenome/csv.hpp"
#include "qgenome/kernel.hpp"
#include "qgenome/labels.hpp"

#include <chrono>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace qgenome {

std::string to_string(Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::QSVC: return "QSVC";
        case Algorithm::PegasosQSVC: return "PEG_QSVC";
        case Algorithm::VQC: return "VQC";
        case Algorithm::QNN: return "QNN";
    }
    return "?";
}

Algorithm parse_algorithm(const std::string &name) {
    if (name == "QSVC") {
        return Algorithm::QSVC;
    }
    if (name == "PEG_QSVC") {
        return Algorithm::PegasosQSVC;
    }
    if (name == "VQC") {
        return Algorithm::VQC;
    }
    if (name == "QNN") {
        return Algorithm::QNN;
    }
    throw std::invalid_argument("unknown algorithm '" + name + "' (expected QSVC, PEG_QSVC, VQC or QNN)");
}

namespace {

std::string table_name(Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::QSVC: return "QSVM";
        case Algorithm::PegasosQSVC: return "Peg-QSVM";
        case Algorithm::VQC: return "VQC";
        case Algorithm::QNN: return "QNN";
    }
    return "?";
}

void check_keys(const Json &obj, const std::set<std::string> &allowed, const std::string &context) {
    if (!obj.is_object()) {
        throw ConfigError(context + ": expected a JSON object");
    }
    for (const auto &item : obj.items()) {
        if (!allowed.contains(item.key())) {
            throw ConfigError(context + "." + item.key() + ": unknown key");
        }
    }
}

template <typename T>
T field(const Json &obj, const std::string &key, const std::string &context, T fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    try {
        return obj.at(key).get<T>();
    } catch (const Json::exception &) {
        throw ConfigError(context + "." + key + ": wrong type");
    }
}

template <typename T>
T required(const Json &obj, const std::string &key, const std::string &context) {
    if (!obj.contains(key)) {
        throw ConfigError(context + "." + key + ": missing required field");
    }
    return field<T>(obj, key, context, T{});
}

FeatureMapConfig parse_feature_map(const Json &j, int n_qubits, const std::string &context) {
    FeatureMapConfig c;
    c.n_qubits = n_qubits;
    try {
        if (j.is_string()) {
            c.kind = parse_feature_map_kind(j.get<std::string>());
            return c;
        }
        check_keys(j, { "kind", "repetitions", "entanglement", "hadamard_layer" }, context);
        c.kind = parse_feature_map_kind(required<std::string>(j, "kind", context));
        c.repetitions = field<int>(j, "repetitions", context, c.repetitions);
        c.entanglement = parse_entanglement(field<std::string>(j, "entanglement", context, to_string(c.entanglement)));
        c.hadamard_layer = field<bool>(j, "hadamard_layer", context, c.hadamard_layer);
        c.validate();
    } catch (const std::invalid_argument &e) {
        throw ConfigError(context + ": " + e.what());
    }
    return c;
}

AlgorithmSpec parse_algorithm_spec(const Json &j, const std::string &context) {
    AlgorithmSpec spec;
    try {
        if (j.is_string()) {
            spec.algorithm = parse_algorithm(j.get<std::string>());
            return spec;
        }
        if (!j.is_object()) {
            throw ConfigError(context + ": expected a name or an object");
        }
        spec.algorithm = parse_algorithm(required<std::string>(j, "name", context));
    } catch (const std::invalid_argument &e) {
        throw ConfigError(context + ": " + e.what());
    }
    switch (spec.algorithm) {
        case Algorithm::QSVC:
            check_keys(j, { "name", "C", "tol", "max_passes" }, context);
            spec.smo.C = field<double>(j, "C", context, spec.smo.C);
            spec.smo.tol = field<double>(j, "tol", context, spec.smo.tol);
            spec.smo.max_passes = field<int>(j, "max_passes", context, spec.smo.max_passes);
            if (!(spec.smo.C > 0.0)) {
                throw ConfigError(context + ".C: must be positive");
            }
            if (!(spec.smo.tol > 0.0)) {
                throw ConfigError(context + ".tol: must be positive");
            }
            if (spec.smo.max_passes < 1) {
                throw ConfigError(context + ".max_passes: must be >= 1");
            }
            break;
        case Algorithm::PegasosQSVC:
            check_keys(j, { "name", "lambda", "steps" }, context);
            spec.pegasos.lambda = field<double>(j, "lambda", context, spec.pegasos.lambda);
            spec.pegasos.steps = field<int>(j, "steps", context, spec.pegasos.steps);
            if (!(spec.pegasos.lambda > 0.0)) {
                throw ConfigError(context + ".lambda: must be positive");
            }
            if (spec.pegasos.steps < 1) {
                throw ConfigError(context + ".steps: must be >= 1");
            }
            break;
        case Algorithm::VQC:
        case Algorithm::QNN:
            check_keys(j, { "name", "lr", "max_iters", "eps" }, context);
            spec.variational.learning_rate = field<double>(j, "lr", context, spec.variational.learning_rate);
            spec.variational.max_iters = field<int>(j, "max_iters", context, spec.variational.max_iters);
            spec.variational.eps = field<double>(j, "eps", context, spec.variational.eps);
            if (!(spec.variational.learning_rate >= 0.0)) {
                throw ConfigError(context + ".lr: must be >= 0");
            }
            if (spec.variational.max_iters < 1) {
                throw ConfigError(context + ".max_iters: must be >= 1");
            }
            break;
    }
    return spec;
}

Json algorithm_to_json(const AlgorithmSpec &spec) {
    Json j{ { "name", to_string(spec.algorithm) } };
    switch (spec.algorithm) {
        case Algorithm::QSVC:
            j["C"] = spec.smo.C;
            j["tol"] = spec.smo.tol;
            j["max_passes"] = spec.smo.max_passes;
            break;
        case Algorithm::PegasosQSVC:
            j["lambda"] = spec.pegasos.lambda;
            j["steps"] = spec.pegasos.steps;
            break;
        case Algorithm::VQC:
        case Algorithm::QNN:
            j["lr"] = spec.variational.learning_rate;
            j["max_iters"] = spec.variational.max_iters;
            j["eps"] = spec.variational.eps;
            break;
    }
    return j;
}

DatasetFormat format_from_extension(const std::filesystem::path &path) {
    const auto ext = path.extension().string();
    return (ext == ".fa" || ext == ".fasta" || ext == ".fna") ? DatasetFormat::FASTA : DatasetFormat::CSV;
}

double accuracy_of(const Eigen::VectorXd &scores, const Eigen::VectorXd &y) {
    return metrics(confusion(predictions_from_scores(scores), y)).accuracy;
}

// file-name stem per feature map; the index disambiguates repeated kinds
std::vector<std::string> map_stems(const std::vector<FeatureMapConfig> &maps) {
    std::map<FeatureMapKind, int> counts;
    for (const auto &m : maps) {
        ++counts[m.kind];
    }
    std::vector<std::string> stems;
    for (std::size_t i = 0; i < maps.size(); ++i) {
        std::string s = to_string(maps[i].kind);
        if (counts[maps[i].kind] > 1) {
            s += "_" + std::to_string(i);
        }
        stems.push_back(s);
    }
    return stems;
}

void write_text(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    out << text;
}

}  // namespace

void RunConfig::validate() const {
    if (dataset_path.empty()) {
        throw ConfigError("dataset.path: missing required field");
    }
    if (feature_maps.empty()) {
        throw ConfigError("feature_maps: at least one feature map is required");
    }
    if (algorithms.empty()) {
        throw ConfigError("algorithms: at least one algorithm is required");
    }
    try {
        pipeline.validate();
    } catch (const std::invalid_argument &e) {
        throw ConfigError(std::string("pipeline: ") + e.what());
    }
}

RunConfig parse_run_config(const Json &j, const std::filesystem::path &base_dir, const ConfigOverrides &overrides) {
    check_keys(j, { "dataset", "pipeline", "feature_maps", "algorithms", "seed", "output_dir" }, "config");
    RunConfig c;

    if (!j.contains("dataset")) {
        throw ConfigError("dataset: missing required field");
    }
    const Json &ds = j.at("dataset");
    check_keys(ds, { "path", "format" }, "dataset");
    std::filesystem::path path = required<std::string>(ds, "path", "dataset");
    if (path.empty()) {
        throw ConfigError("dataset.path: must not be empty");
    }
    if (path.is_relative() && !base_dir.empty()) {
        path = base_dir / path;
    }
    c.dataset_path = path;
    try {
        c.dataset_format = ds.contains("format") ? parse_dataset_format(field<std::string>(ds, "format", "dataset", "csv")) : format_from_extension(path);
    } catch (const std::invalid_argument &e) {
        throw ConfigError(std::string("dataset.format: ") + e.what());
    }

    c.pipeline.subset_size = 160;
    if (j.contains("pipeline")) {
        const Json &p = j.at("pipeline");
        check_keys(p, { "kmer_k", "angle_range", "test_fraction", "subset_size" }, "pipeline");
        c.pipeline.kmer_k = field<int>(p, "kmer_k", "pipeline", c.pipeline.kmer_k);
        c.pipeline.test_fraction = field<double>(p, "test_fraction", "pipeline", c.pipeline.test_fraction);
        if (p.contains("angle_range")) {
            const auto range = field<std::vector<double>>(p, "angle_range", "pipeline", {});
            if (range.size() != 2) {
                throw ConfigError("pipeline.angle_range: expected [lo, hi]");
            }
            c.pipeline.angle_lo = range[0];
            c.pipeline.angle_hi = range[1];
        }
        if (p.contains("subset_size")) {
            if (p.at("subset_size").is_null()) {
                c.pipeline.subset_size.reset();
            } else {
                const int size = field<int>(p, "subset_size", "pipeline", 0);
                if (size < 4) {
                    throw ConfigError("pipeline.subset_size: must be at least 4");
                }
                c.pipeline.subset_size = static_cast<std::size_t>(size);
            }
        }
    }

    if (!j.contains("feature_maps") || !j.at("feature_maps").is_array()) {
        throw ConfigError("feature_maps: missing required list");
    }
    for (std::size_t i = 0; i < j.at("feature_maps").size(); ++i) {
        c.feature_maps.push_back(parse_feature_map(j.at("feature_maps")[i], c.pipeline.pca_dims, "feature_maps[" + std::to_string(i) + "]"));
    }
    if (!j.contains("algorithms") || !j.at("algorithms").is_array()) {
        throw ConfigError("algorithms: missing required list");
    }
    for (std::size_t i = 0; i < j.at("algorithms").size(); ++i) {
        c.algorithms.push_back(parse_algorithm_spec(j.at("algorithms")[i], "algorithms[" + std::to_string(i) + "]"));
    }

    if (overrides.seed) {
        c.seed = *overrides.seed;
    } else if (j.contains("seed")) {
        const Json &s = j.at("seed");
        if (!s.is_number_integer() || (s.is_number_integer() && !s.is_number_unsigned() && s.get<std::int64_t>() < 0)) {
            throw ConfigError("seed: must be a non-negative integer");
        }
        c.seed = s.get<std::uint64_t>();
    } else {
        throw ConfigError("seed: missing required field (set it in the config or pass --seed)");
    }
    c.pipeline.seed = c.seed;
    for (auto &a : c.algorithms) {
        a.smo.seed = c.seed;
        a.pegasos.seed = c.seed;
        a.variational.seed = c.seed;
    }

    if (overrides.output_dir) {
        c.output_dir = *overrides.output_dir;
    } else if (j.contains("output_dir")) {
        c.output_dir = field<std::string>(j, "output_dir", "config", "");
        if (c.output_dir.is_relative() && !base_dir.empty()) {
            c.output_dir = base_dir / c.output_dir;
        }
    }
    c.validate();
    return c;
}

RunConfig load_run_config(const std::filesystem::path &path, const ConfigOverrides &overrides) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path.string() + "'");
    }
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error &e) {
        throw ConfigError("config file '" + path.string() + "' is not valid JSON: " + e.what());
    }
    return parse_run_config(j, path.parent_path(), overrides);
}

Json run_config_to_json(const RunConfig &c) {
    Json maps = Json::array();
    for (const auto &m : c.feature_maps) {
        maps.push_back(Json{ { "kind", to_string(m.kind) }, { "repetitions", m.repetitions }, { "entanglement", to_string(m.entanglement) }, { "hadamard_layer", m.hadamard_layer } });
    }
    Json algs = Json::array();
    for (const auto &a : c.algorithms) {
        algs.push_back(algorithm_to_json(a));
    }
    Json pipeline{ { "kmer_k", c.pipeline.kmer_k }, { "pca_dims", c.pipeline.pca_dims }, { "angle_range", { c.pipeline.angle_lo, c.pipeline.angle_hi } }, { "test_fraction", c.pipeline.test_fraction } };
    pipeline["subset_size"] = c.pipeline.subset_size ? Json(*c.pipeline.subset_size) : Json(nullptr);
    return Json{ { "dataset", { { "path", c.dataset_path.string() }, { "format", to_string(c.dataset_format) } } },
                 { "pipeline", pipeline },
                 { "feature_maps", maps },
                 { "algorithms", algs },
                 { "seed", c.seed },
                 { "output_dir", c.output_dir.string() } };
}

void to_json(Json &j, const ModelArtifact &a) {
    j = Json{ { "format", "qgenome-model" }, { "version", 1 }, { "algorithm", to_string(a.algorithm) }, { "pipeline", a.pipeline } };
    std::visit([&j](const auto &m) { j["model"] = m; }, a.model);
}

void from_json(const Json &j, ModelArtifact &a) {
    if (j.value("format", "") != "qgenome-model") {
        throw std::invalid_argument("not a qgenome model file");
    }
    a.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
    a.pipeline = j.at("pipeline").get<FittedPipeline>();
    switch (a.algorithm) {
        case Algorithm::QSVC: a.model = j.at("model").get<QsvcModel>(); break;
        case Algorithm::PegasosQSVC: a.model = j.at("model").get<PegasosModel>(); break;
        case Algorithm::VQC:
        case Algorithm::QNN: a.model = j.at("model").get<VariationalModel>(); break;
    }
    if (feature_map_of(a.model).n_qubits != a.pipeline.scaler.column_min.size()) {
        throw std::invalid_argument("model feature width does not match the stored pipeline");
    }
}

void save_artifact(const ModelArtifact &artifact, const std::filesystem::path &path) {
    write_text(path, Json(artifact).dump(1) + "\n");
}

ModelArtifact load_artifact(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open model file '" + path.string() + "'");
    }
    try {
        return Json::parse(in).get<ModelArtifact>();
    } catch (const Json::exception &e) {
        throw std::runtime_error("unreadable model file '" + path.string() + "': " + e.what());
    } catch (const std::invalid_argument &e) {
        throw std::runtime_error("unreadable model file '" + path.string() + "': " + e.what());
    }
}

const FeatureMapConfig &feature_map_of(const TrainedModel &model) {
    return std::visit([](const auto &m) -> const FeatureMapConfig & { return m.feature_map; }, model);
}

Eigen::VectorXd model_scores(const TrainedModel &model, const Eigen::Ref<const Eigen::MatrixXd> &X) {
    if (X.rows() == 0) {
        return Eigen::VectorXd(0);
    }
    const auto &fm = feature_map_of(model);
    if (X.cols() != fm.n_qubits) {
        throw std::invalid_argument("features have " + std::to_string(X.cols()) + " columns, model expects " + std::to_string(fm.n_qubits));
    }
    if (const auto *q = std::get_if<QsvcModel>(&model)) {
        return qsvc_decisions(*q, cross_gram(fm, q->train_features, X));
    }
    if (const auto *p = std::get_if<PegasosModel>(&model)) {
        return pegasos_decisions(*p, cross_gram(fm, p->train_features, X));
    }
    const auto &v = std::get<VariationalModel>(model);
    Eigen::VectorXd scores(X.rows());
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        scores(i) = model_expectation(v, X.row(i).transpose());
    }
    return scores;
}

CellResult run_cell(const PreparedData &data, const FeatureMapConfig &feature_map, const AlgorithmSpec &spec) {
    CellResult cell;
    cell.feature_map = feature_map;
    cell.algorithm = spec.algorithm;

    ModelArtifact artifact;
    artifact.algorithm = spec.algorithm;
    artifact.pipeline = data.pipeline;
    Eigen::VectorXd train_scores;
    Eigen::VectorXd test_scores;
    switch (spec.algorithm) {
        case Algorithm::QSVC: {
            const auto train_states = encode_rows(feature_map, data.X_train);
            const auto test_states = encode_rows(feature_map, data.X_test);
            QsvcModel m = train_qsvc(gram_matrix(train_states), data.y_train, spec.smo);
            m.feature_map = feature_map;
            m.train_features = data.X_train;
            train_scores = qsvc_decisions(m, cross_gram(train_states, train_states));
            test_scores = qsvc_decisions(m, cross_gram(train_states, test_states));
            cell.converged = m.converged;
            artifact.model = std::move(m);
            break;
        }
        case Algorithm::PegasosQSVC: {
            const auto train_states = encode_rows(feature_map, data.X_train);
            const auto test_states = encode_rows(feature_map, data.X_test);
            PegasosModel m = train_pegasos(gram_matrix(train_states), data.y_train, spec.pegasos);
            m.feature_map = feature_map;
            m.train_features = data.X_train;
            train_scores = pegasos_decisions(m, cross_gram(train_states, train_states));
            test_scores = pegasos_decisions(m, cross_gram(train_states, test_states));
            cell.converged = true;
            artifact.model = std::move(m);
            break;
        }
        case Algorithm::VQC:
        case Algorithm::QNN: {
            const auto preset = spec.algorithm == Algorithm::VQC ? VariationalPreset::VQC : VariationalPreset::QNN;
            VariationalModel m = train_variational(preset, feature_map, preset_ansatz(preset, feature_map.n_qubits), data.X_train, data.y_train, spec.variational);
            cell.converged = m.converged;
            artifact.model = std::move(m);
            train_scores = model_scores(artifact.model, data.X_train);
            test_scores = model_scores(artifact.model, data.X_test);
            break;
        }
    }
    cell.train_accuracy = accuracy_of(train_scores, data.y_train);
    cell.test_counts = confusion(predictions_from_scores(test_scores), data.y_test);
    cell.test = metrics(cell.test_counts, test_scores, data.y_test);
    cell.artifact = std::move(artifact);
    return cell;
}

std::vector<TableRow> BenchmarkResult::table_rows() const {
    std::vector<TableRow> rows;
    for (const auto &c : cells) {
        rows.push_back({ display_name(c.feature_map.kind), table_name(c.algorithm), c.failed, c.train_accuracy, c.test });
    }
    return rows;
}

void write_history_csv(const VariationalModel &model, std::ostream &out) {
    out << "iteration,objective\n";
    for (const auto &h : model.history) {
        out << h.iteration << ',' << csv::format_real(h.objective) << '\n';
    }
}

BenchmarkResult run_benchmark(const RunConfig &config, const WorkflowOptions &options) {
    config.validate();
    using Clock = std::chrono::steady_clock;
    const auto start = Clock::now();
    BenchmarkResult result;
    result.config = config;
    result.timing = options.timing;

    const RawDataset dataset = load_dataset(config.dataset_path, config.dataset_format);
    const PreparedData data = prepare_data(dataset, config.pipeline);

    if (options.write_outputs) {
        std::filesystem::create_directories(config.output_dir / "models");
        std::filesystem::create_directories(config.output_dir / "histories");
    }
    const auto stems = map_stems(config.feature_maps);
    for (std::size_t f = 0; f < config.feature_maps.size(); ++f) {
        for (const auto &spec : config.algorithms) {
            const auto cell_start = Clock::now();
            CellResult cell;
            try {
                cell = run_cell(data, config.feature_maps[f], spec);
            } catch (const std::exception &e) {
                cell = CellResult{};
                cell.feature_map = config.feature_maps[f];
                cell.algorithm = spec.algorithm;
                cell.failed = true;
                cell.error = e.what();
            }
            if (options.timing) {
                cell.wall_seconds = std::chrono::duration<double>(Clock::now() - cell_start).count();
            }
            const std::string stem = stems[f] + "_" + to_string(spec.algorithm);
            if (options.write_outputs && cell.artifact) {
                cell.model_path = std::filesystem::path("models") / (stem + ".json");
                save_artifact(*cell.artifact, config.output_dir / cell.model_path);
                if (const auto *v = std::get_if<VariationalModel>(&cell.artifact->model)) {
                    cell.history_path = std::filesystem::path("histories") / (stem + "_history.csv");
                    std::ofstream out(config.output_dir / cell.history_path, std::ios::binary);
                    write_history_csv(*v, out);
                }
            }
            result.cells.push_back(std::move(cell));
        }
    }
    if (options.timing) {
        result.total_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    }
    if (options.write_outputs) {
        write_text(config.output_dir / "benchmark.json", benchmark_to_json(result).dump(2) + "\n");
        write_text(config.output_dir / "benchmark.csv", benchmark_to_csv(result));
        write_text(config.output_dir / "benchmark.txt", render_table(result.table_rows()));
    }
    return result;
}

Json benchmark_to_json(const BenchmarkResult &result) {
    Json rows = Json::array();
    for (const auto &c : result.cells) {
        Json row{ { "feature_map", display_name(c.feature_map.kind) }, { "algorithm", table_name(c.algorithm) }, { "algorithm_id", to_string(c.algorithm) }, { "status", c.failed ? "FAILED" : "ok" } };
        if (c.failed) {
            row["error"] = c.error;
        } else {
            row["train_accuracy"] = c.train_accuracy;
            row["test"] = c.test;
            row["test_confusion"] = c.test_counts;
            row["converged"] = c.converged;
            row["model_path"] = c.model_path.generic_string();
            if (!c.history_path.empty()) {
                row["history_path"] = c.history_path.generic_string();
            }
        }
        if (result.timing) {
            row["wall_seconds"] = c.wall_seconds;
        }
        rows.push_back(row);
    }
    Json config = run_config_to_json(result.config);
    config.erase("output_dir");
    Json j{ { "config", config }, { "results", rows } };
    if (result.timing) {
        j["total_seconds"] = result.total_seconds;
    }
    return j;
}

std::string benchmark_to_csv(const BenchmarkResult &result) {
    std::ostringstream out;
    out << "feature_map,algorithm,status,train_accuracy,test_accuracy,precision,recall,f1,auroc,converged";
    if (result.timing) {
        out << ",wall_seconds";
    }
    out << '\n';
    for (const auto &c : result.cells) {
        out << display_name(c.feature_map.kind) << ',' << table_name(c.algorithm) << ',' << (c.failed ? "FAILED" : "ok");
        if (c.failed) {
            out << ",,,,,,,";
        } else {
            for (double v : { c.train_accuracy, c.test.accuracy, c.test.precision, c.test.recall, c.test.f1, c.test.auroc }) {
                out << ',' << csv::format_real(v);
            }
            out << ',' << (c.converged ? "true" : "false");
        }
        if (result.timing) {
            out << ',' << csv::format_real(c.wall_seconds);
        }
        out << '\n';
    }
    return out.str();
}

CellResult run_train(const RunConfig &config, const WorkflowOptions &options) {
    config.validate();
    if (config.feature_maps.size() != 1 || config.algorithms.size() != 1) {
        throw ConfigError("train: the config must list exactly one feature map and one algorithm (got " + std::to_string(config.feature_maps.size()) + " and " + std::to_string(config.algorithms.size()) + ")");
    }
    using Clock = std::chrono::steady_clock;
    const auto start = Clock::now();
    const RawDataset dataset = load_dataset(config.dataset_path, config.dataset_format);
    const PreparedData data = prepare_data(dataset, config.pipeline);
    CellResult cell = run_cell(data, config.feature_maps.front(), config.algorithms.front());
    if (options.timing) {
        cell.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    }
    if (options.write_outputs) {
        std::filesystem::create_directories(config.output_dir);
        cell.model_path = config.output_dir / "model.json";
        save_artifact(*cell.artifact, cell.model_path);
        if (const auto *v = std::get_if<VariationalModel>(&cell.artifact->model)) {
            cell.history_path = config.output_dir / "history.csv";
            std::ofstream out(cell.history_path, std::ios::binary);
            write_history_csv(*v, out);
        }
    }
    return cell;
}

std::vector<Prediction> predict_sequences(const ModelArtifact &artifact, const std::vector<std::string> &sequences) {
    const Eigen::VectorXd scores = model_scores(artifact.model, artifact.pipeline.transform(sequences));
    std::vector<Prediction> out;
    for (std::size_t i = 0; i < sequences.size(); ++i) {
        const double s = scores(static_cast<Eigen::Index>(i));
        out.push_back({ sequences[i], s, sign_label(s) > 0 ? 1 : 0 });
    }
    return out;
}

void write_predictions_csv(const std::vector<Prediction> &predictions, std::ostream &out) {
    out << "sequence,score,label\n";
    for (const auto &p : predictions) {
        out << p.sequence << ',' << csv::format_real(p.score) << ',' << p.label << '\n';
    }
}

void write_pairplot_csv(const RunConfig &config, std::ostream &out) {
    config.validate();
    const RawDataset dataset = load_dataset(config.dataset_path, config.dataset_format);
    const PreparedData data = prepare_data(dataset, config.pipeline);
    const Eigen::MatrixXd scores = pca_transform(data.pipeline.pca, vectorize_kmers(data.data.sequences, data.pipeline.kmer_k));
    std::vector<bool> is_test(data.data.size(), false);
    for (const auto i : data.split.test) {
        is_test[static_cast<std::size_t>(i)] = true;
    }
    out << "pc1,pc2,pc3,pc4,label,split\n";
    for (Eigen::Index r = 0; r < scores.rows(); ++r) {
        for (Eigen::Index c = 0; c < scores.cols(); ++c) {
            out << csv::format_real(scores(r, c)) << ',';
        }
        out << data.data.labels[static_cast<std::size_t>(r)] << ',' << (is_test[static_cast<std::size_t>(r)] ? "test" : "train") << '\n';
    }
}

}  // namespace qgenome
