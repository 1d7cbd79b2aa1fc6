#include "qgenome/pegasos.hpp"

#include "qgenome/kernel.hpp"
#include "qgenome/labels.hpp"
#include "qgenome/rng.hpp"
#include "qgenome/smo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qgenome {

namespace {

void check_problem(const Eigen::Ref<const Eigen::MatrixXd> &K, const Eigen::Ref<const Eigen::VectorXd> &y) {
    if (K.rows() != K.cols() || K.rows() != y.size()) {
        throw std::invalid_argument("kernel matrix and labels have inconsistent sizes");
    }
}

double hinge_mean(const Eigen::VectorXd &scores, const Eigen::Ref<const Eigen::VectorXd> &y) {
    return (1.0 - y.cwiseProduct(scores).array()).max(0.0).mean();
}

}  // namespace

PegasosModel train_pegasos(const Eigen::Ref<const Eigen::MatrixXd> &K, const Eigen::Ref<const Eigen::VectorXd> &y, const PegasosParams &params, const PegasosObserver &observer) {
    check_problem(K, y);
    check_signed_labels(y);
    if (!(params.lambda > 0.0) || !std::isfinite(params.lambda)) {
        throw std::invalid_argument("lambda must be a positive finite number");
    }
    if (params.steps < 1) {
        throw std::invalid_argument("Pegasos needs at least one step");
    }

    const Eigen::Index m = y.size();
    const double lambda = params.lambda;
    const double radius = 1.0 / std::sqrt(lambda);
    Rng rng(params.seed);

    Eigen::VectorXd c = Eigen::VectorXd::Zero(m);
    // scores(k) = <w, phi(x_k)>, norm2 = |w|^2, both tracked incrementally
    Eigen::VectorXd scores = Eigen::VectorXd::Zero(m);
    double norm2 = 0.0;

    PegasosStep record;
    for (int t = 1; t <= params.steps; ++t) {
        const auto i = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(m)));
        const double eta = 1.0 / (lambda * t);
        const double margin = y(i) * scores(i);

        const double shrink = 1.0 - eta * lambda;
        c *= shrink;
        scores *= shrink;
        norm2 *= shrink * shrink;
        if (margin < 1.0) {
            // w += eta y_i phi(x_i)
            norm2 += 2.0 * eta * y(i) * scores(i) + eta * eta * K(i, i);
            c(i) += eta;
            scores += eta * y(i) * K.col(i);
        }
        if (t % std::max<Eigen::Index>(m, 1) == 0) {
            scores = K * c.cwiseProduct(y);
            norm2 = c.cwiseProduct(y).dot(scores);
        }
        norm2 = std::max(norm2, 0.0);
        const double norm = std::sqrt(norm2);
        if (norm > radius) {
            const double scale = radius / norm;
            c *= scale;
            scores *= scale;
            norm2 *= scale * scale;
        }

        if (observer) {
            record.t = t;
            record.sampled = i;
            record.margin = margin;
            record.weight_norm = std::sqrt(norm2);
            record.objective = 0.5 * lambda * norm2 + hinge_mean(scores, y);
            record.coefficients = &c;
            observer(record);
        }
    }

    PegasosModel model;
    model.coefficients = c;
    model.labels = y;
    model.lambda = lambda;
    model.steps_T = params.steps;
    return model;
}

PegasosModel fit_pegasos(const FeatureMapConfig &feature_map, const Eigen::Ref<const Eigen::MatrixXd> &X, const Eigen::Ref<const Eigen::VectorXd> &y, const PegasosParams &params) {
    const KernelMatrix K = gram_matrix(feature_map, X);
    PegasosModel model = train_pegasos(K, y, params);
    model.feature_map = feature_map;
    model.train_features = X;
    return model;
}

double pegasos_decision(const PegasosModel &model, const Eigen::Ref<const Eigen::VectorXd> &k_row) {
    if (k_row.size() != model.coefficients.size()) {
        throw std::invalid_argument("kernel row has " + std::to_string(k_row.size()) + " entries, model has " + std::to_string(model.coefficients.size()) + " training points");
    }
    return model.coefficients.cwiseProduct(model.labels).dot(k_row);
}

Eigen::VectorXd pegasos_decisions(const PegasosModel &model, const Eigen::Ref<const Eigen::MatrixXd> &cross_kernel) {
    Eigen::VectorXd scores(cross_kernel.rows());
    for (Eigen::Index t = 0; t < cross_kernel.rows(); ++t) {
        scores(t) = pegasos_decision(model, cross_kernel.row(t).transpose());
    }
    return scores;
}

int pegasos_predict(const PegasosModel &model, const Eigen::Ref<const Eigen::VectorXd> &k_row) {
    return sign_label(pegasos_decision(model, k_row));
}

double weight_norm(const Eigen::Ref<const Eigen::VectorXd> &coefficients, const Eigen::Ref<const Eigen::MatrixXd> &K, const Eigen::Ref<const Eigen::VectorXd> &y) {
    check_problem(K, y);
    if (coefficients.size() != y.size()) {
        throw std::invalid_argument("coefficient vector length mismatch");
    }
    const Eigen::VectorXd cy = coefficients.cwiseProduct(y);
    return std::sqrt(std::max(0.0, cy.dot(K * cy)));
}

double pegasos_objective(const Eigen::Ref<const Eigen::VectorXd> &coefficients, const Eigen::Ref<const Eigen::MatrixXd> &K, const Eigen::Ref<const Eigen::VectorXd> &y, double lambda) {
    check_problem(K, y);
    if (coefficients.size() != y.size()) {
        throw std::invalid_argument("coefficient vector length mismatch");
    }
    const Eigen::VectorXd cy = coefficients.cwiseProduct(y);
    const Eigen::VectorXd scores = K * cy;
    return 0.5 * lambda * cy.dot(scores) + hinge_mean(scores, y);
}

double pegasos_optimum(const Eigen::Ref<const Eigen::MatrixXd> &K, const Eigen::Ref<const Eigen::VectorXd> &y, double lambda) {
    check_problem(K, y);
    if (!(lambda > 0.0)) {
        throw std::invalid_argument("lambda must be positive");
    }
    SmoParams params;
    params.C = 1.0 / (lambda * static_cast<double>(y.size()));
    params.tol = 1e-10;
    params.max_passes = 100000;
    params.fit_intercept = false;
    const QsvcModel dual = train_qsvc(K, y, params);
    return pegasos_objective(dual.alphas, K, y, lambda);
}

PegasosBoundReport verify_pegasos_bound(const Eigen::Ref<const Eigen::MatrixXd> &K, const Eigen::Ref<const Eigen::VectorXd> &y, double lambda, int T, int trials, std::uint64_t seed) {
    if (T < 3) {
        throw std::invalid_argument("the averaged-objective bound needs T >= 3");
    }
    if (trials < 1) {
        throw std::invalid_argument("at least one trial is required");
    }
    check_problem(K, y);

    PegasosBoundReport report;
    report.optimum = pegasos_optimum(K, y, lambda);
    // |lambda w| <= sqrt(lambda) under the projection, |y phi(x)| <= sqrt(K_ii)
    report.gradient_bound = 1.0 + std::sqrt(K.diagonal().maxCoeff());
    const double G = report.gradient_bound;
    report.rhs = G * G * (1.0 + std::log(static_cast<double>(T))) / (2.0 * lambda * T);

    report.holds = true;
    for (int trial = 0; trial < trials; ++trial) {
        double sum = 0.0;
        PegasosParams params;
        params.lambda = lambda;
        params.steps = T;
        params.seed = seed + static_cast<std::uint64_t>(trial);
        (void)train_pegasos(K, y, params, [&sum](const PegasosStep &step) { sum += step.objective; });
        const double lhs = sum / T - report.optimum;
        report.lhs.push_back(lhs);
        if (!(lhs <= report.rhs)) {
            report.holds = false;
        }
    }
    return report;
}

}  // namespace qgenome
