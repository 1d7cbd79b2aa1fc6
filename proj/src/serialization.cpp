#include "qgenome/serialization.hpp"

#include <stdexcept>

namespace qgenome {

Json vector_to_json(const Eigen::Ref<const Eigen::VectorXd> &v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(v(i));
    }
    return out;
}

Eigen::VectorXd vector_from_json(const Json &j) {
    if (!j.is_array()) {
        throw std::invalid_argument("expected a JSON array of numbers");
    }
    Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) {
            throw std::invalid_argument("expected a number at index " + std::to_string(i));
        }
        v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
    }
    return v;
}

Json matrix_to_json(const Eigen::Ref<const Eigen::MatrixXd> &M) {
    Json out = Json::array();
    for (Eigen::Index r = 0; r < M.rows(); ++r) {
        out.push_back(vector_to_json(M.row(r).transpose()));
    }
    return out;
}

Eigen::MatrixXd matrix_from_json(const Json &j, Eigen::Index expected_cols) {
    if (!j.is_array()) {
        throw std::invalid_argument("expected a JSON array of rows");
    }
    const auto rows = static_cast<Eigen::Index>(j.size());
    Eigen::Index cols = expected_cols;
    if (rows > 0) {
        cols = static_cast<Eigen::Index>(j[0].size());
    }
    if (expected_cols >= 0 && cols != expected_cols) {
        throw std::invalid_argument("matrix has " + std::to_string(cols) + " columns, expected " + std::to_string(expected_cols));
    }
    Eigen::MatrixXd M(rows, std::max<Eigen::Index>(cols, 0));
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Eigen::VectorXd row = vector_from_json(j[static_cast<std::size_t>(r)]);
        if (row.size() != cols) {
            throw std::invalid_argument("ragged matrix at row " + std::to_string(r));
        }
        M.row(r) = row.transpose();
    }
    return M;
}

void to_json(Json &j, const FeatureMapConfig &c) {
    j = Json{ { "kind", to_string(c.kind) }, { "n_qubits", c.n_qubits }, { "repetitions", c.repetitions }, { "entanglement", to_string(c.entanglement) }, { "hadamard_layer", c.hadamard_layer } };
}

void from_json(const Json &j, FeatureMapConfig &c) {
    c.kind = parse_feature_map_kind(j.at("kind").get<std::string>());
    c.n_qubits = j.at("n_qubits").get<int>();
    c.repetitions = j.at("repetitions").get<int>();
    c.entanglement = parse_entanglement(j.at("entanglement").get<std::string>());
    c.hadamard_layer = j.at("hadamard_layer").get<bool>();
    c.validate();
}

void to_json(Json &j, const AnsatzConfig &c) {
    j = Json{ { "n_qubits", c.n_qubits }, { "layers", c.layers } };
}

void from_json(const Json &j, AnsatzConfig &c) {
    c.n_qubits = j.at("n_qubits").get<int>();
    c.layers = j.at("layers").get<int>();
    c.validate();
}

void to_json(Json &j, const QsvcModel &m) {
    j = Json{ { "alphas", vector_to_json(m.alphas) },
              { "labels", vector_to_json(m.labels) },
              { "bias", m.bias },
              { "C", m.C },
              { "fit_intercept", m.fit_intercept },
              { "converged", m.converged },
              { "iterations", m.iterations },
              { "feature_map", m.feature_map },
              { "train_features", matrix_to_json(m.train_features) },
              { "warnings", m.warnings } };
}

void from_json(const Json &j, QsvcModel &m) {
    m.alphas = vector_from_json(j.at("alphas"));
    m.labels = vector_from_json(j.at("labels"));
    m.bias = j.at("bias").get<double>();
    m.C = j.at("C").get<double>();
    m.fit_intercept = j.value("fit_intercept", true);
    m.converged = j.value("converged", false);
    m.iterations = j.value("iterations", 0);
    m.feature_map = j.at("feature_map").get<FeatureMapConfig>();
    m.train_features = matrix_from_json(j.at("train_features"), m.feature_map.n_qubits);
    m.warnings = j.value("warnings", std::vector<std::string>{});
    if (m.alphas.size() != m.labels.size() || m.train_features.rows() != m.alphas.size()) {
        throw std::invalid_argument("QSVC model arrays have inconsistent lengths");
    }
}

void to_json(Json &j, const PegasosModel &m) {
    j = Json{ { "coefficients", vector_to_json(m.coefficients) },
              { "labels", vector_to_json(m.labels) },
              { "lambda", m.lambda },
              { "steps_T", m.steps_T },
              { "feature_map", m.feature_map },
              { "train_features", matrix_to_json(m.train_features) } };
}

void from_json(const Json &j, PegasosModel &m) {
    m.coefficients = vector_from_json(j.at("coefficients"));
    m.labels = vector_from_json(j.at("labels"));
    m.lambda = j.at("lambda").get<double>();
    m.steps_T = j.at("steps_T").get<int>();
    m.feature_map = j.at("feature_map").get<FeatureMapConfig>();
    m.train_features = matrix_from_json(j.at("train_features"), m.feature_map.n_qubits);
    if (m.coefficients.size() != m.labels.size() || m.train_features.rows() != m.coefficients.size()) {
        throw std::invalid_argument("Pegasos model arrays have inconsistent lengths");
    }
}

void to_json(Json &j, const VariationalModel &m) {
    Json history = Json::array();
    for (const auto &h : m.history) {
        history.push_back(Json{ { "iteration", h.iteration }, { "objective", h.objective } });
    }
    j = Json{ { "preset", to_string(m.preset) }, { "feature_map", m.feature_map }, { "ansatz", m.ansatz }, { "theta", vector_to_json(m.theta) }, { "history", history }, { "converged", m.converged } };
}

void from_json(const Json &j, VariationalModel &m) {
    m.preset = parse_variational_preset(j.at("preset").get<std::string>());
    m.feature_map = j.at("feature_map").get<FeatureMapConfig>();
    m.ansatz = j.at("ansatz").get<AnsatzConfig>();
    m.theta = vector_from_json(j.at("theta"));
    m.history.clear();
    for (const auto &h : j.value("history", Json::array())) {
        m.history.push_back({ h.at("iteration").get<int>(), h.at("objective").get<double>() });
    }
    m.converged = j.value("converged", false);
    if (m.theta.size() != m.ansatz.parameter_count()) {
        throw std::invalid_argument("variational model theta length does not match its ansatz");
    }
    if (m.feature_map.n_qubits != m.ansatz.n_qubits) {
        throw std::invalid_argument("variational model feature map and ansatz disagree on qubit count");
    }
}

void to_json(Json &j, const PcaModel &m) {
    j = Json{ { "mean", vector_to_json(m.mean) }, { "components", matrix_to_json(m.components) }, { "explained_variance", vector_to_json(m.explained_variance) }, { "rank_deficient", m.rank_deficient } };
}

void from_json(const Json &j, PcaModel &m) {
    m.mean = vector_from_json(j.at("mean"));
    m.components = matrix_from_json(j.at("components"), m.mean.size());
    m.explained_variance = vector_from_json(j.at("explained_variance"));
    m.rank_deficient = j.value("rank_deficient", false);
    if (m.explained_variance.size() != m.components.rows()) {
        throw std::invalid_argument("PCA model has mismatched component and variance counts");
    }
}

void to_json(Json &j, const AngleScaler &s) {
    j = Json{ { "column_min", vector_to_json(s.column_min) }, { "column_max", vector_to_json(s.column_max) }, { "lo", s.lo }, { "hi", s.hi } };
}

void from_json(const Json &j, AngleScaler &s) {
    s.column_min = vector_from_json(j.at("column_min"));
    s.column_max = vector_from_json(j.at("column_max"));
    s.lo = j.at("lo").get<double>();
    s.hi = j.at("hi").get<double>();
    if (s.column_min.size() != s.column_max.size()) {
        throw std::invalid_argument("scaler min/max lengths differ");
    }
}

void to_json(Json &j, const FittedPipeline &p) {
    j = Json{ { "kmer_k", p.kmer_k }, { "pca", p.pca }, { "scaler", p.scaler } };
}

void from_json(const Json &j, FittedPipeline &p) {
    p.kmer_k = j.at("kmer_k").get<int>();
    p.pca = j.at("pca").get<PcaModel>();
    p.scaler = j.at("scaler").get<AngleScaler>();
    if (p.pca.mean.size() != (Eigen::Index{ 1 } << (2 * p.kmer_k))) {
        throw std::invalid_argument("pipeline PCA width does not match 4^kmer_k");
    }
    if (p.scaler.column_min.size() != p.pca.components.rows()) {
        throw std::invalid_argument("pipeline scaler width does not match the PCA output");
    }
}

void to_json(Json &j, const MetricsReport &r) {
    j = Json{ { "accuracy", r.accuracy }, { "precision", r.precision }, { "recall", r.recall }, { "f1", r.f1 }, { "auroc", r.auroc } };
}

void to_json(Json &j, const ConfusionCounts &c) {
    j = Json{ { "tp", c.tp }, { "fp", c.fp }, { "tn", c.tn }, { "fn", c.fn } };
}

}  // namespace qgenome
