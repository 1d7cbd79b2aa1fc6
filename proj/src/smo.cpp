#include "qgenome/smo.hpp"

#include "qgenome/kernel.hpp"
#include "qgenome/labels.hpp"
#include "qgenome/rng.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

namespace qgenome {

namespace {

struct BoxState {
    double C;
    [[nodiscard]] bool at_lower(double a) const { return a <= 0.0; }
    [[nodiscard]] bool at_upper(double a) const { return a >= C; }
    double snap(double a) const {
        const double eps = 1e-12 * C;
        if (a <= eps) {
            return 0.0;
        }
        if (a >= C - eps) {
            return C;
        }
        return a;
    }
};

void check_problem(const Eigen::Ref<const Eigen::MatrixXd> &K, const Eigen::Ref<const Eigen::VectorXd> &y) {
    if (K.rows() != K.cols()) {
        throw std::invalid_argument("kernel matrix must be square");
    }
    if (K.rows() != y.size()) {
        throw std::invalid_argument("kernel size " + std::to_string(K.rows()) + " does not match " + std::to_string(y.size()) + " labels");
    }
}

// SMO over pairs, with the equality constraint
class PairSolver {
public:
    PairSolver(const Eigen::Ref<const Eigen::MatrixXd> &K, const Eigen::Ref<const Eigen::VectorXd> &y, const SmoParams &params) :
        K_(K), y_(y), params_(params), box_{ params.C }, rng_(params.seed), m_(y.size()), alpha_(Eigen::VectorXd::Zero(y.size())), f_(Eigen::VectorXd::Zero(y.size())) {}

    void run(QsvcModel &model, const SmoObserver &observer) {
        const long long budget = static_cast<long long>(params_.max_passes) * static_cast<long long>(std::max<Eigen::Index>(m_, 1));
        double objective = 0.0;
        long long iteration = 0;
        int stalls = 0;
        bool converged = false;
        while (true) {
            auto [i, j] = select_pair();
            if (i < 0 || j < 0 || violation(i) - violation(j) <= params_.tol) {
                refresh();
                std::tie(i, j) = select_pair();
                if (i < 0 || j < 0 || violation(i) - violation(j) <= params_.tol) {
                    converged = true;
                    break;
                }
            }
            if (iteration >= budget) {
                break;
            }
            double gain = step(i, j);
            if (gain <= resolution(objective)) {
                const Eigen::Index alt = random_partner(i);
                gain = alt >= 0 ? step(i, alt) : 0.0;
                if (gain <= resolution(objective)) {
                    if (++stalls > 3) {
                        break;
                    }
                } else {
                    stalls = 0;
                }
            } else {
                stalls = 0;
            }
            objective += std::max(gain, 0.0);
            ++iteration;
            if (observer) {
                observer(static_cast<int>(iteration), alpha_, objective);
            }
            if (iteration % std::max<Eigen::Index>(m_, 1) == 0) {
                refresh();
            }
        }
        refresh();
        model.alphas = alpha_;
        model.iterations = static_cast<int>(iteration);
        model.converged = converged;
        model.bias = compute_bias();
    }

private:
    // y_i - f_i: the bias that would put point i exactly on its margin
    [[nodiscard]] double violation(Eigen::Index i) const { return y_(i) - f_(i); }

    [[nodiscard]] bool in_up(Eigen::Index i) const { return (y_(i) > 0 && !box_.at_upper(alpha_(i))) || (y_(i) < 0 && !box_.at_lower(alpha_(i))); }
    [[nodiscard]] bool in_low(Eigen::Index i) const { return (y_(i) < 0 && !box_.at_upper(alpha_(i))) || (y_(i) > 0 && !box_.at_lower(alpha_(i))); }

    [[nodiscard]] static double resolution(double objective) { return 1e-15 * std::max(1.0, std::abs(objective)); }

    std::pair<Eigen::Index, Eigen::Index> select_pair() const {
        Eigen::Index best_up = -1;
        Eigen::Index best_low = -1;
        for (Eigen::Index k = 0; k < m_; ++k) {
            const double v = violation(k);
            if (in_up(k) && (best_up < 0 || v > violation(best_up))) {
                best_up = k;
            }
            if (in_low(k) && (best_low < 0 || v < violation(best_low))) {
                best_low = k;
            }
        }
        return { best_up, best_low };
    }

    Eigen::Index random_partner(Eigen::Index i) {
        std::vector<Eigen::Index> candidates;
        for (Eigen::Index k = 0; k < m_; ++k) {
            if (k != i && in_low(k) && violation(i) - violation(k) > params_.tol) {
                candidates.push_back(k);
            }
        }
        if (candidates.empty()) {
            return -1;
        }
        return candidates[static_cast<std::size_t>(rng_.below(candidates.size()))];
    }

    // moves alpha along d (d_i = y_i, d_j = -y_j), which keeps sum a y fixed;
    // returns the increase of the dual objective
    double step(Eigen::Index i, Eigen::Index j) {
        if (i == j) {
            return 0.0;
        }
        const double slope = violation(i) - violation(j);
        if (slope <= 0.0) {
            return 0.0;
        }
        const double C = params_.C;
        const double t_i = y_(i) > 0 ? C - alpha_(i) : alpha_(i);
        const double t_j = y_(j) < 0 ? C - alpha_(j) : alpha_(j);
        const double t_max = std::min(t_i, t_j);
        if (t_max <= 0.0) {
            return 0.0;
        }
        const double eta = K_(i, i) + K_(j, j) - 2.0 * K_(i, j);
        double t = t_max;
        if (eta > 0.0) {
            t = std::min(slope / eta, t_max);
        }
        const double gain = slope * t - 0.5 * eta * t * t;
        if (!(gain > 0.0)) {
            return 0.0;
        }
        const double old_i = alpha_(i);
        const double old_j = alpha_(j);
        alpha_(i) = box_.snap(old_i + t * y_(i));
        alpha_(j) = box_.snap(old_j - t * y_(j));
        if (t == t_i) {
            alpha_(i) = y_(i) > 0 ? C : 0.0;
        }
        if (t == t_j) {
            alpha_(j) = y_(j) < 0 ? C : 0.0;
        }
        const double di = (alpha_(i) - old_i) * y_(i);
        const double dj = (alpha_(j) - old_j) * y_(j);
        f_ += di * K_.col(i) + dj * K_.col(j);
        return gain;
    }

    void refresh() { f_ = K_ * alpha_.cwiseProduct(y_); }

    double compute_bias() const {
        double sum = 0.0;
        int free_count = 0;
        for (Eigen::Index k = 0; k < m_; ++k) {
            if (!box_.at_lower(alpha_(k)) && !box_.at_upper(alpha_(k))) {
                sum += violation(k);
                ++free_count;
            }
        }
        if (free_count > 0) {
            return sum / free_count;
        }
        const auto [i, j] = select_pair();
        if (i < 0 || j < 0) {
            return 0.0;
        }
        return 0.5 * (violation(i) + violation(j));
    }

    const Eigen::Ref<const Eigen::MatrixXd> &K_;
    const Eigen::Ref<const Eigen::VectorXd> &y_;
    SmoParams params_;
    BoxState box_;
    Rng rng_;
    Eigen::Index m_;
    Eigen::VectorXd alpha_;
    // f_i = sum_j a_j y_j K_ij, without bias
    Eigen::VectorXd f_;
};

// dual coordinate ascent for the bias-free problem
class CoordinateSolver {
public:
    CoordinateSolver(const Eigen::Ref<const Eigen::MatrixXd> &K, const Eigen::Ref<const Eigen::VectorXd> &y, const SmoParams &params) :
        K_(K), y_(y), params_(params), box_{ params.C }, m_(y.size()), alpha_(Eigen::VectorXd::Zero(y.size())), f_(Eigen::VectorXd::Zero(y.size())) {}

    void run(QsvcModel &model, const SmoObserver &observer) {
        const long long budget = static_cast<long long>(params_.max_passes) * static_cast<long long>(std::max<Eigen::Index>(m_, 1));
        double objective = 0.0;
        long long iteration = 0;
        bool converged = false;
        while (true) {
            Eigen::Index i = most_violating();
            if (i < 0 || projected_gradient(i) <= params_.tol) {
                f_ = K_ * alpha_.cwiseProduct(y_);
                i = most_violating();
                if (i < 0 || projected_gradient(i) <= params_.tol) {
                    converged = true;
                    break;
                }
            }
            if (iteration >= budget) {
                break;
            }
            const double g = 1.0 - y_(i) * f_(i);
            const double kii = K_(i, i);
            const double old = alpha_(i);
            double next = kii > 0.0 ? old + g / kii : (g > 0.0 ? params_.C : 0.0);
            next = box_.snap(std::clamp(next, 0.0, params_.C));
            const double t = next - old;
            alpha_(i) = next;
            f_ += t * y_(i) * K_.col(i);
            objective += g * t - 0.5 * kii * t * t;
            ++iteration;
            if (observer) {
                observer(static_cast<int>(iteration), alpha_, objective);
            }
            if (t == 0.0) {
                break;
            }
        }
        model.alphas = alpha_;
        model.iterations = static_cast<int>(iteration);
        model.converged = converged;
        model.bias = 0.0;
    }

private:
    [[nodiscard]] double projected_gradient(Eigen::Index i) const {
        const double g = 1.0 - y_(i) * f_(i);
        if (g > 0.0 && !box_.at_upper(alpha_(i))) {
            return g;
        }
        if (g < 0.0 && !box_.at_lower(alpha_(i))) {
            return -g;
        }
        return 0.0;
    }

    Eigen::Index most_violating() const {
        Eigen::Index best = -1;
        double best_value = -1.0;
        for (Eigen::Index k = 0; k < m_; ++k) {
            const double v = projected_gradient(k);
            if (v > best_value) {
                best_value = v;
                best = k;
            }
        }
        return best;
    }

    const Eigen::Ref<const Eigen::MatrixXd> &K_;
    const Eigen::Ref<const Eigen::VectorXd> &y_;
    SmoParams params_;
    BoxState box_;
    Eigen::Index m_;
    Eigen::VectorXd alpha_;
    Eigen::VectorXd f_;
};

}  // namespace

std::vector<Eigen::Index> QsvcModel::support_indices() const {
    std::vector<Eigen::Index> out;
    for (Eigen::Index i = 0; i < alphas.size(); ++i) {
        if (alphas(i) > 0.0) {
            out.push_back(i);
        }
    }
    return out;
}

QsvcModel train_qsvc(const Eigen::Ref<const Eigen::MatrixXd> &K, const Eigen::Ref<const Eigen::VectorXd> &y, const SmoParams &params, const SmoObserver &observer) {
    check_problem(K, y);
    check_signed_labels(y, params.fit_intercept);
    if (!(params.C > 0.0) || !std::isfinite(params.C)) {
        throw std::invalid_argument("C must be a positive finite number");
    }
    if (!(params.tol > 0.0)) {
        throw std::invalid_argument("tol must be positive");
    }
    if (params.max_passes < 1) {
        throw std::invalid_argument("max_passes must be >= 1");
    }
    if (!K.allFinite()) {
        throw std::invalid_argument("kernel matrix has non-finite entries");
    }

    QsvcModel model;
    model.labels = y;
    model.C = params.C;
    model.fit_intercept = params.fit_intercept;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (K + K.transpose()), Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -1e-8) {
        model.warnings.push_back("kernel matrix is not positive semi-definite (min eigenvalue " + std::to_string(eig.eigenvalues().minCoeff()) + "); the dual may be non-concave");
    }

    if (params.fit_intercept) {
        PairSolver(K, y, params).run(model, observer);
    } else {
        CoordinateSolver(K, y, params).run(model, observer);
    }
    if (!model.converged) {
        model.warnings.push_back("SMO stopped after " + std::to_string(model.iterations) + " updates without meeting tol");
    }
    return model;
}

QsvcModel fit_qsvc(const FeatureMapConfig &feature_map, const Eigen::Ref<const Eigen::MatrixXd> &X, const Eigen::Ref<const Eigen::VectorXd> &y, const SmoParams &params) {
    const KernelMatrix K = gram_matrix(feature_map, X);
    QsvcModel model = train_qsvc(K, y, params);
    model.feature_map = feature_map;
    model.train_features = X;
    return model;
}

double dual_objective(const Eigen::Ref<const Eigen::VectorXd> &alphas, const Eigen::Ref<const Eigen::MatrixXd> &K, const Eigen::Ref<const Eigen::VectorXd> &y) {
    check_problem(K, y);
    if (alphas.size() != y.size()) {
        throw std::invalid_argument("alpha vector length mismatch");
    }
    const Eigen::VectorXd ay = alphas.cwiseProduct(y);
    return alphas.sum() - 0.5 * ay.dot(K * ay);
}

double qsvc_decision(const QsvcModel &model, const Eigen::Ref<const Eigen::VectorXd> &k_row) {
    if (k_row.size() != model.alphas.size()) {
        throw std::invalid_argument("kernel row has " + std::to_string(k_row.size()) + " entries, model has " + std::to_string(model.alphas.size()) + " training points");
    }
    return model.alphas.cwiseProduct(model.labels).dot(k_row) + model.bias;
}

Eigen::VectorXd qsvc_decisions(const QsvcModel &model, const Eigen::Ref<const Eigen::MatrixXd> &cross_kernel) {
    Eigen::VectorXd scores(cross_kernel.rows());
    for (Eigen::Index t = 0; t < cross_kernel.rows(); ++t) {
        scores(t) = qsvc_decision(model, cross_kernel.row(t).transpose());
    }
    return scores;
}

int qsvc_predict(const QsvcModel &model, const Eigen::Ref<const Eigen::VectorXd> &k_row) {
    return sign_label(qsvc_decision(model, k_row));
}

double kkt_residual(const QsvcModel &model, const Eigen::Ref<const Eigen::MatrixXd> &K, const Eigen::Ref<const Eigen::VectorXd> &y) {
    check_problem(K, y);
    if (model.alphas.size() != y.size()) {
        throw std::invalid_argument("model and label vector sizes differ");
    }
    const Eigen::VectorXd f = K * model.alphas.cwiseProduct(y);
    const double eps = 1e-12 * model.C;
    double worst = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        const double margin = y(i) * (f(i) + model.bias);
        const double a = model.alphas(i);
        double v = 0.0;
        if (a <= eps) {
            v = std::max(0.0, 1.0 - margin);
        } else if (a >= model.C - eps) {
            v = std::max(0.0, margin - 1.0);
        } else {
            v = std::abs(margin - 1.0);
        }
        worst = std::max(worst, v);
    }
    return worst;
}

}  // namespace qgenome
