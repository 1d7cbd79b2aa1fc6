#pragma once

// Kernel C-SVM trained on its dual by Sequential Minimal Optimization.
//
//   max_a  sum_i a_i - 1/2 sum_ij a_i a_j y_i y_j K_ij
//   s.t.   0 <= a_i <= C,  sum_i a_i y_i = 0
//
// The working pair is the maximal KKT violator i together with the partner
// j maximizing |E_i - E_j| over the feasible set, which is Platt's
// second-choice rule restricted to directions that can make progress. A
// seeded random partner is tried when that pair cannot improve the
// objective in floating point. Training stops once
//   max_{i in I_up} (y_i - f_i) - min_{j in I_low} (y_j - f_j) <= tol,
// which bounds kkt_residual() of the returned model by tol.

#include "qgenome/feature_map.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace qgenome {

struct SmoParams {
    double C = 1.0;
    double tol = 1e-3;
    // the iteration budget is max_passes * m pair updates
    int max_passes = 200;
    std::uint64_t seed = 0;
    // false drops the bias and the equality constraint; each step then
    // optimizes a single coordinate
    bool fit_intercept = true;
};

struct QsvcModel {
    Eigen::VectorXd alphas;
    Eigen::VectorXd labels;
    double bias = 0.0;
    double C = 1.0;
    bool fit_intercept = true;
    bool converged = false;
    int iterations = 0;
    FeatureMapConfig feature_map;
    // rows are the training points in angle space; empty when trained from a bare kernel
    Eigen::MatrixXd train_features;
    std::vector<std::string> warnings;

    // indices with alpha > 0
    [[nodiscard]] std::vector<Eigen::Index> support_indices() const;
};

// called after every accepted update with the running dual objective
using SmoObserver = std::function<void(int iteration, const Eigen::VectorXd &alphas, double dual_objective)>;

[[nodiscard]] QsvcModel train_qsvc(const Eigen::Ref<const Eigen::MatrixXd> &K, const Eigen::Ref<const Eigen::VectorXd> &y, const SmoParams &params = {}, const SmoObserver &observer = {});

// encodes X with the feature map, builds the Gram matrix and trains
[[nodiscard]] QsvcModel fit_qsvc(const FeatureMapConfig &feature_map, const Eigen::Ref<const Eigen::MatrixXd> &X, const Eigen::Ref<const Eigen::VectorXd> &y, const SmoParams &params = {});

[[nodiscard]] double dual_objective(const Eigen::Ref<const Eigen::VectorXd> &alphas, const Eigen::Ref<const Eigen::MatrixXd> &K, const Eigen::Ref<const Eigen::VectorXd> &y);

// f(x) = sum_i a_i y_i k_row[i] + b
[[nodiscard]] double qsvc_decision(const QsvcModel &model, const Eigen::Ref<const Eigen::VectorXd> &k_row);
// one decision per row of a (test x train) cross-kernel
[[nodiscard]] Eigen::VectorXd qsvc_decisions(const QsvcModel &model, const Eigen::Ref<const Eigen::MatrixXd> &cross_kernel);
// sign of the decision, sign(0) = +1
[[nodiscard]] int qsvc_predict(const QsvcModel &model, const Eigen::Ref<const Eigen::VectorXd> &k_row);

// largest violation of the KKT case conditions on the training set, 0 when exactly optimal
[[nodiscard]] double kkt_residual(const QsvcModel &model, const Eigen::Ref<const Eigen::MatrixXd> &K, const Eigen::Ref<const Eigen::VectorXd> &y);

}  // namespace qgenome
