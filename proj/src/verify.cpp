#include "qgenome/csv.hpp"
#include "qgenome/kernel.hpp"
#include "qgenome/rng.hpp"
#include "qgenome/workflow.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qgenome {

namespace {

std::string format_value(const char *label, double value) {
    std::ostringstream out;
    out << label << '=' << value;
    return out.str();
}

Eigen::MatrixXd random_angles(Rng &rng, Eigen::Index rows, int cols) {
    Eigen::MatrixXd X(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            X(r, c) = rng.uniform(0.0, std::numbers::pi);
        }
    }
    return X;
}

CheckResult check_unitarity(Rng &rng) {
    const int n = 4;
    Circuit circuit(n);
    for (int i = 0; i < 40; ++i) {
        const int a = static_cast<int>(rng.below(n));
        const int b = static_cast<int>((a + 1 + rng.below(n - 1)) % n);
        const double theta = rng.uniform(-std::numbers::pi, std::numbers::pi);
        switch (rng.below(6)) {
            case 0: circuit.append(Gate::h(a)); break;
            case 1: circuit.append(Gate::rx(a, theta)); break;
            case 2: circuit.append(Gate::ry(a, theta, AngleConvention::Half)); break;
            case 3: circuit.append(Gate::cnot(a, b)); break;
            case 4: circuit.append(Gate::rzz(a, b, theta)); break;
            default: circuit.append(Gate::rzx(a, b, theta)); break;
        }
    }
    const Statevector out = run_circuit(circuit, Statevector::zero(n));
    Circuit inverse(n);
    for (auto it = circuit.gates().rbegin(); it != circuit.gates().rend(); ++it) {
        inverse.append(it->inverse());
    }
    const Statevector back = run_circuit(inverse, out);
    const double norm_error = std::abs(out.norm() - 1.0);
    const double return_error = 1.0 - fidelity(back, Statevector::zero(n));
    const bool ok = norm_error <= 1e-12 && return_error <= 1e-12;
    return { "statevector unitarity", ok, format_value("norm_error", norm_error) + " " + format_value("inverse_error", return_error) };
}

CheckResult check_kernels(Rng &rng) {
    const Eigen::MatrixXd X = random_angles(rng, 12, 4);
    bool ok = true;
    std::string detail;
    for (const auto kind : { FeatureMapKind::Z, FeatureMapKind::ZZ, FeatureMapKind::Pauli }) {
        FeatureMapConfig fm;
        fm.kind = kind;
        const auto report = check_kernel_matrix(gram_matrix(fm, X));
        ok = ok && report.ok();
        detail += to_string(kind) + ":min_eig=" + csv::format_real(report.min_eigenvalue) + " ";
    }
    detail.pop_back();
    return { "kernel matrix invariants", ok, detail };
}

CheckResult check_smo(Rng &rng) {
    const Eigen::MatrixXd X = random_angles(rng, 24, 4);
    Eigen::VectorXd y(X.rows());
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        y(i) = X(i, 0) + X(i, 1) > std::numbers::pi ? 1.0 : -1.0;
    }
    if (y.minCoeff() == y.maxCoeff()) {
        y(0) = -y(0);
    }
    FeatureMapConfig fm;
    fm.kind = FeatureMapKind::ZZ;
    const Eigen::MatrixXd K = gram_matrix(fm, X);
    SmoParams params;
    params.C = 1.0;
    params.tol = 1e-6;
    params.max_passes = 2000;
    const QsvcModel model = train_qsvc(K, y, params);
    const double residual = kkt_residual(model, K, y);
    const double balance = std::abs(model.alphas.dot(y));
    const bool box = model.alphas.minCoeff() >= 0.0 && model.alphas.maxCoeff() <= params.C;
    const bool ok = model.converged && residual <= 1e-3 && balance <= 1e-9 && box;
    return { "SMO KKT conditions", ok, format_value("kkt_residual", residual) + " " + format_value("sum_alpha_y", balance) };
}

CheckResult check_pegasos(Rng &rng, std::uint64_t seed) {
    const Eigen::MatrixXd X = random_angles(rng, 20, 4);
    Eigen::VectorXd y(X.rows());
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        y(i) = i % 2 == 0 ? 1.0 : -1.0;
    }
    FeatureMapConfig fm;
    const Eigen::MatrixXd K = gram_matrix(fm, X);
    const auto report = verify_pegasos_bound(K, y, 0.1, 200, 5, seed);
    double worst = report.lhs.empty() ? 0.0 : report.lhs.front();
    for (const double v : report.lhs) {
        worst = std::max(worst, v);
    }
    return { "Pegasos convergence bound", report.holds, format_value("worst_gap", worst) + " " + format_value("bound", report.rhs) };
}

CheckResult check_gradient(Rng &rng) {
    VariationalModel model;
    model.feature_map.kind = FeatureMapKind::ZZ;
    model.ansatz = preset_ansatz(VariationalPreset::QNN, 4);
    model.theta = Eigen::VectorXd(model.ansatz.parameter_count());
    for (Eigen::Index i = 0; i < model.theta.size(); ++i) {
        model.theta(i) = rng.uniform(-std::numbers::pi, std::numbers::pi);
    }
    const Eigen::MatrixXd X = random_angles(rng, 6, 4);
    Eigen::VectorXd y(6);
    y << 1, -1, 1, -1, 1, -1;
    const Eigen::VectorXd shift = parameter_shift_gradient(model, X, y);
    const double h = 1e-5;
    double worst = 0.0;
    for (Eigen::Index i = 0; i < model.theta.size(); ++i) {
        VariationalModel plus = model;
        VariationalModel minus = model;
        plus.theta(i) += h;
        minus.theta(i) -= h;
        const double fd = (squared_loss(plus, X, y) - squared_loss(minus, X, y)) / (2.0 * h);
        worst = std::max(worst, std::abs(fd - shift(i)));
    }
    return { "parameter-shift gradient", worst <= 1e-6, format_value("max_abs_diff", worst) };
}

}  // namespace

std::vector<CheckResult> verify_fixtures(std::uint64_t seed) {
    Rng rng(seed);
    std::vector<CheckResult> out;
    out.push_back(check_unitarity(rng));
    out.push_back(check_kernels(rng));
    out.push_back(check_smo(rng));
    out.push_back(check_pegasos(rng, seed));
    out.push_back(check_gradient(rng));
    return out;
}

std::vector<CheckResult> verify_kernel(const Eigen::Ref<const Eigen::MatrixXd> &K) {
    if (K.rows() == 0 || K.rows() != K.cols()) {
        return { { "square matrix", false, std::to_string(K.rows()) + "x" + std::to_string(K.cols()) } };
    }
    if (!K.allFinite()) {
        return { { "finite entries", false, "matrix contains NaN or infinity" } };
    }
    const auto r = check_kernel_matrix(K);
    return { { "symmetric", r.symmetric(), format_value("max_asymmetry", r.max_asymmetry) },
             { "unit diagonal", r.unit_diagonal(), format_value("max_diagonal_deviation", r.max_diagonal_deviation) },
             { "positive semi-definite", r.positive_semidefinite(), format_value("min_eigenvalue", r.min_eigenvalue) },
             { "entries in [0, 1]", r.in_range(), format_value("min_entry", r.min_entry) + " " + format_value("max_entry", r.max_entry) } };
}

}  // namespace qgenome
