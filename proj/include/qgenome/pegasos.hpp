#pragma once

// Kernelized Pegasos for the bias-free primal SVM
//
//   f(w) = lambda/2 |w|^2 + 1/m sum_i max(0, 1 - y_i <w, phi(x_i)>)
//
// w lives in feature space and is kept as coefficients c with
// w = sum_j c_j y_j phi(x_j); the shrink and projection steps act
// multiplicatively on every coefficient.

#include "qgenome/feature_map.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <vector>

namespace qgenome {

struct PegasosParams {
    double lambda = 0.01;
    int steps = 1000;
    std::uint64_t seed = 0;
};

struct PegasosModel {
    Eigen::VectorXd coefficients;
    Eigen::VectorXd labels;
    double lambda = 0.01;
    int steps_T = 0;
    FeatureMapConfig feature_map;
    Eigen::MatrixXd train_features;
};

struct PegasosStep {
    int t = 0;
    Eigen::Index sampled = 0;
    // y_i <w_{t-1}, phi(x_i)> before the update
    double margin = 0.0;
    // |w_t| after projection
    double weight_norm = 0.0;
    // f(w_t)
    double objective = 0.0;
    const Eigen::VectorXd *coefficients = nullptr;
};

using PegasosObserver = std::function<void(const PegasosStep &)>;

[[nodiscard]] PegasosModel train_pegasos(const Eigen::Ref<const Eigen::MatrixXd> &K, const Eigen::Ref<const Eigen::VectorXd> &y, const PegasosParams &params = {}, const PegasosObserver &observer = {});

[[nodiscard]] PegasosModel fit_pegasos(const FeatureMapConfig &feature_map, const Eigen::Ref<const Eigen::MatrixXd> &X, const Eigen::Ref<const Eigen::VectorXd> &y, const PegasosParams &params = {});

// sum_j c_j y_j k_row[j]
[[nodiscard]] double pegasos_decision(const PegasosModel &model, const Eigen::Ref<const Eigen::VectorXd> &k_row);
[[nodiscard]] Eigen::VectorXd pegasos_decisions(const PegasosModel &model, const Eigen::Ref<const Eigen::MatrixXd> &cross_kernel);
[[nodiscard]] int pegasos_predict(const PegasosModel &model, const Eigen::Ref<const Eigen::VectorXd> &k_row);

// sqrt(sum_ij c_i c_j y_i y_j K_ij)
[[nodiscard]] double weight_norm(const Eigen::Ref<const Eigen::VectorXd> &coefficients, const Eigen::Ref<const Eigen::MatrixXd> &K, const Eigen::Ref<const Eigen::VectorXd> &y);

[[nodiscard]] double pegasos_objective(const Eigen::Ref<const Eigen::VectorXd> &coefficients, const Eigen::Ref<const Eigen::MatrixXd> &K, const Eigen::Ref<const Eigen::VectorXd> &y, double lambda);

// min_w f(w), from the bias-free SMO dual with C = 1/(lambda m); the dual
// solution maps onto coefficients one to one
[[nodiscard]] double pegasos_optimum(const Eigen::Ref<const Eigen::MatrixXd> &K, const Eigen::Ref<const Eigen::VectorXd> &y, double lambda);

struct PegasosBoundReport {
    // (1/T) sum_t f(w_t) - f(w*) for each trial
    std::vector<double> lhs;
    // G^2 (1 + ln T) / (2 lambda T)
    double rhs = 0.0;
    double optimum = 0.0;
    double gradient_bound = 0.0;
    bool holds = false;
};

// runs `trials` seeded trainings and checks the averaged-objective bound on each
[[nodiscard]] PegasosBoundReport verify_pegasos_bound(const Eigen::Ref<const Eigen::MatrixXd> &K, const Eigen::Ref<const Eigen::VectorXd> &y, double lambda, int T, int trials, std::uint64_t seed);

}  // namespace qgenome
