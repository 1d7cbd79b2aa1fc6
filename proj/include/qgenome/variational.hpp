#pragma once

// Variational classifiers: U_ansatz(theta) U(x) |0...0> measured against the
// Z-parity observable, trained by full-batch gradient descent on the mean
// squared error with parameter-shift gradients.

#include "qgenome/feature_map.hpp"
#include "qgenome/statevector.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

namespace qgenome {

// L+1 layers of half-angle RY rotations; a CNOT ring follows each of the first L
struct AnsatzConfig {
    int n_qubits = 4;
    int layers = 1;

    [[nodiscard]] Eigen::Index parameter_count() const { return static_cast<Eigen::Index>(n_qubits) * (layers + 1); }
    void validate() const;

    friend bool operator==(const AnsatzConfig &, const AnsatzConfig &) = default;
};

enum class VariationalPreset { VQC, QNN };

std::string to_string(VariationalPreset preset);
VariationalPreset parse_variational_preset(const std::string &name);

// VQC: one entangling layer; QNN: three
[[nodiscard]] AnsatzConfig preset_ansatz(VariationalPreset preset, int n_qubits);

template <typename Derived>
[[nodiscard]] BasicCircuit<typename Derived::Scalar> build_ansatz(const AnsatzConfig &config, const Eigen::MatrixBase<Derived> &theta) {
    using G = BasicGate<typename Derived::Scalar>;
    config.validate();
    if (theta.size() != config.parameter_count()) {
        throw std::invalid_argument("ansatz expects " + std::to_string(config.parameter_count()) + " parameters, got " + std::to_string(theta.size()));
    }
    const int n = config.n_qubits;
    BasicCircuit<typename Derived::Scalar> circuit(n);
    for (int layer = 0; layer <= config.layers; ++layer) {
        for (int q = 0; q < n; ++q) {
            circuit.append(G::ry(q, theta(layer * n + q), AngleConvention::Half));
        }
        if (layer < config.layers && n > 1) {
            for (int q = 0; q < n; ++q) {
                circuit.append(G::cnot(q, (q + 1) % n));
            }
        }
    }
    return circuit;
}

struct HistoryEntry {
    int iteration = 0;
    double objective = 0.0;
};

struct VariationalModel {
    VariationalPreset preset = VariationalPreset::VQC;
    FeatureMapConfig feature_map;
    AnsatzConfig ansatz;
    Eigen::VectorXd theta;
    // loss at theta_t for t = 0, 1, ...; the last entry is the returned theta
    std::vector<HistoryEntry> history;
    bool converged = false;
};

struct VariationalParams {
    double learning_rate = 0.1;
    int max_iters = 100;
    // stop once |theta_{t+1} - theta_t| < eps
    double eps = 1e-4;
    std::uint64_t seed = 0;
};

// <O> for one input, in [-1, 1]
[[nodiscard]] double model_expectation(const VariationalModel &model, const Eigen::Ref<const Eigen::VectorXd> &x);

// (1/N) sum_n (y_n - <O>_n)^2
[[nodiscard]] double squared_loss(const VariationalModel &model, const Eigen::Ref<const Eigen::MatrixXd> &X, const Eigen::Ref<const Eigen::VectorXd> &y);

// d loss / d theta via the +-pi/2 shift rule, exact for the half-angle ansatz
[[nodiscard]] Eigen::VectorXd parameter_shift_gradient(const VariationalModel &model, const Eigen::Ref<const Eigen::MatrixXd> &X, const Eigen::Ref<const Eigen::VectorXd> &y);

[[nodiscard]] VariationalModel train_variational(VariationalPreset preset, const FeatureMapConfig &feature_map, const AnsatzConfig &ansatz, const Eigen::Ref<const Eigen::MatrixXd> &X, const Eigen::Ref<const Eigen::VectorXd> &y, const VariationalParams &params = {});

[[nodiscard]] int variational_predict(const VariationalModel &model, const Eigen::Ref<const Eigen::VectorXd> &x);

// mean |grad C|^2 over random theta for a fixed random input and target +1
[[nodiscard]] double gradient_variance_probe(const FeatureMapConfig &feature_map, const AnsatzConfig &ansatz, int n_samples, std::uint64_t seed);

}  // namespace qgenome
