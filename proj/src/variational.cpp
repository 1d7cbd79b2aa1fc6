#include "qgenome/variational.hpp"

#include "qgenome/labels.hpp"
#include "qgenome/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qgenome {

void AnsatzConfig::validate() const {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw std::invalid_argument("ansatz qubit count must be in [1, " + std::to_string(kMaxQubits) + "]");
    }
    if (layers < 0) {
        throw std::invalid_argument("ansatz layer count must be >= 0");
    }
}

std::string to_string(VariationalPreset preset) {
    return preset == VariationalPreset::VQC ? "VQC" : "QNN";
}

VariationalPreset parse_variational_preset(const std::string &name) {
    if (name == "VQC") {
        return VariationalPreset::VQC;
    }
    if (name == "QNN") {
        return VariationalPreset::QNN;
    }
    throw std::invalid_argument("unknown variational preset '" + name + "'");
}

AnsatzConfig preset_ansatz(VariationalPreset preset, int n_qubits) {
    return AnsatzConfig{ n_qubits, preset == VariationalPreset::VQC ? 1 : 3 };
}

namespace {

// encoded inputs are reused for every shifted evaluation
class Objective {
public:
    Objective(const FeatureMapConfig &feature_map, const AnsatzConfig &ansatz, const Eigen::Ref<const Eigen::MatrixXd> &X, const Eigen::Ref<const Eigen::VectorXd> &y) :
        ansatz_(ansatz), y_(y) {
        ansatz.validate();
        if (feature_map.n_qubits != ansatz.n_qubits) {
            throw std::invalid_argument("feature map and ansatz act on different qubit counts");
        }
        if (X.rows() == 0) {
            throw std::invalid_argument("empty training set");
        }
        if (X.rows() != y.size()) {
            throw std::invalid_argument("feature matrix and labels have different lengths");
        }
        if (X.cols() != feature_map.n_qubits) {
            throw std::invalid_argument("feature matrix has " + std::to_string(X.cols()) + " columns, feature map expects " + std::to_string(feature_map.n_qubits));
        }
        encoded_.reserve(static_cast<std::size_t>(X.rows()));
        for (Eigen::Index i = 0; i < X.rows(); ++i) {
            encoded_.push_back(encode(feature_map, X.row(i).transpose()));
        }
    }

    [[nodiscard]] Eigen::VectorXd expectations(const Eigen::VectorXd &theta) const {
        const Circuit circuit = build_ansatz(ansatz_, theta);
        Eigen::VectorXd e(static_cast<Eigen::Index>(encoded_.size()));
        for (std::size_t n = 0; n < encoded_.size(); ++n) {
            e(static_cast<Eigen::Index>(n)) = expectation_parity_z(run_circuit(circuit, encoded_[n]));
        }
        return e;
    }

    [[nodiscard]] double loss(const Eigen::VectorXd &e) const { return (y_ - e).squaredNorm() / static_cast<double>(y_.size()); }

    // gradient given the unshifted expectations e
    [[nodiscard]] Eigen::VectorXd gradient(const Eigen::VectorXd &theta, const Eigen::VectorXd &e) const {
        const double shift = std::numbers::pi / 2.0;
        const Eigen::VectorXd residual = y_ - e;
        Eigen::VectorXd grad(theta.size());
        Eigen::VectorXd shifted = theta;
        for (Eigen::Index i = 0; i < theta.size(); ++i) {
            shifted(i) = theta(i) + shift;
            const Eigen::VectorXd plus = expectations(shifted);
            shifted(i) = theta(i) - shift;
            const Eigen::VectorXd minus = expectations(shifted);
            shifted(i) = theta(i);
            const Eigen::VectorXd de = 0.5 * (plus - minus);
            grad(i) = -2.0 * residual.dot(de) / static_cast<double>(y_.size());
        }
        return grad;
    }

private:
    AnsatzConfig ansatz_;
    Eigen::VectorXd y_;
    std::vector<Statevector> encoded_;
};

void check_theta(const VariationalModel &model) {
    if (model.theta.size() != model.ansatz.parameter_count()) {
        throw std::invalid_argument("model has " + std::to_string(model.theta.size()) + " parameters, ansatz needs " + std::to_string(model.ansatz.parameter_count()));
    }
}

}  // namespace

double model_expectation(const VariationalModel &model, const Eigen::Ref<const Eigen::VectorXd> &x) {
    check_theta(model);
    if (x.size() != model.feature_map.n_qubits) {
        throw std::invalid_argument("input has " + std::to_string(x.size()) + " features, model expects " + std::to_string(model.feature_map.n_qubits));
    }
    Circuit circuit = build_feature_map(model.feature_map, x);
    circuit.append(build_ansatz(model.ansatz, model.theta));
    return expectation_parity_z(run_circuit(circuit, Statevector::zero(circuit.n_qubits())));
}

double squared_loss(const VariationalModel &model, const Eigen::Ref<const Eigen::MatrixXd> &X, const Eigen::Ref<const Eigen::VectorXd> &y) {
    check_theta(model);
    const Objective objective(model.feature_map, model.ansatz, X, y);
    return objective.loss(objective.expectations(model.theta));
}

Eigen::VectorXd parameter_shift_gradient(const VariationalModel &model, const Eigen::Ref<const Eigen::MatrixXd> &X, const Eigen::Ref<const Eigen::VectorXd> &y) {
    check_theta(model);
    const Objective objective(model.feature_map, model.ansatz, X, y);
    return objective.gradient(model.theta, objective.expectations(model.theta));
}

VariationalModel train_variational(VariationalPreset preset, const FeatureMapConfig &feature_map, const AnsatzConfig &ansatz, const Eigen::Ref<const Eigen::MatrixXd> &X, const Eigen::Ref<const Eigen::VectorXd> &y,
                                   const VariationalParams &params) {
    if (X.rows() == 0) {
        throw std::invalid_argument("empty training set");
    }
    check_signed_labels(y);
    if (!(params.learning_rate >= 0.0) || !std::isfinite(params.learning_rate)) {
        throw std::invalid_argument("learning rate must be a finite non-negative number");
    }
    if (params.max_iters < 1) {
        throw std::invalid_argument("max_iters must be >= 1");
    }
    const Objective objective(feature_map, ansatz, X, y);

    VariationalModel model;
    model.preset = preset;
    model.feature_map = feature_map;
    model.ansatz = ansatz;
    Rng rng(params.seed);
    model.theta.resize(ansatz.parameter_count());
    for (Eigen::Index i = 0; i < model.theta.size(); ++i) {
        model.theta(i) = rng.uniform(-std::numbers::pi, std::numbers::pi);
    }

    int iteration = 0;
    for (; iteration < params.max_iters; ++iteration) {
        const Eigen::VectorXd e = objective.expectations(model.theta);
        model.history.push_back({ iteration, objective.loss(e) });
        const Eigen::VectorXd step = params.learning_rate * objective.gradient(model.theta, e);
        model.theta -= step;
        if (step.norm() < params.eps) {
            model.converged = true;
            ++iteration;
            break;
        }
    }
    model.history.push_back({ iteration, objective.loss(objective.expectations(model.theta)) });
    return model;
}

int variational_predict(const VariationalModel &model, const Eigen::Ref<const Eigen::VectorXd> &x) {
    return sign_label(model_expectation(model, x));
}

double gradient_variance_probe(const FeatureMapConfig &feature_map, const AnsatzConfig &ansatz, int n_samples, std::uint64_t seed) {
    if (n_samples < 2) {
        throw std::invalid_argument("gradient probe needs at least two samples");
    }
    Rng rng(seed);
    Eigen::MatrixXd x(1, feature_map.n_qubits);
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        x(0, j) = rng.uniform(0.0, std::numbers::pi);
    }
    const Eigen::VectorXd target = Eigen::VectorXd::Ones(1);
    const Objective objective(feature_map, ansatz, x, target);
    double total = 0.0;
    Eigen::VectorXd theta(ansatz.parameter_count());
    for (int s = 0; s < n_samples; ++s) {
        for (Eigen::Index i = 0; i < theta.size(); ++i) {
            theta(i) = rng.uniform(-std::numbers::pi, std::numbers::pi);
        }
        total += objective.gradient(theta, objective.expectations(theta)).squaredNorm();
    }
    return total / n_samples;
}

}  // namespace qgenome
