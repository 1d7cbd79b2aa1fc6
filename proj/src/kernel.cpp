#include "qgenome/kernel.hpp"

#include "qgenome/csv.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qgenome {

std::vector<Statevector> encode_rows(const FeatureMapConfig &config, const Eigen::Ref<const FeatureMatrix> &X) {
    if (X.cols() != config.n_qubits) {
        throw std::invalid_argument("feature matrix has " + std::to_string(X.cols()) + " columns, feature map expects " + std::to_string(config.n_qubits));
    }
    std::vector<Statevector> states;
    states.reserve(static_cast<std::size_t>(X.rows()));
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        states.push_back(encode(config, X.row(i).transpose()));
    }
    return states;
}

KernelMatrix gram_matrix(const std::vector<Statevector> &states) {
    if (states.empty()) {
        throw std::invalid_argument("gram_matrix: no data points");
    }
    const auto m = static_cast<Eigen::Index>(states.size());
    KernelMatrix K(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = i; j < m; ++j) {
            const double v = fidelity(states[static_cast<std::size_t>(i)], states[static_cast<std::size_t>(j)]);
            K(i, j) = v;
            K(j, i) = v;
        }
    }
    return K;
}

KernelMatrix gram_matrix(const FeatureMapConfig &config, const Eigen::Ref<const FeatureMatrix> &X) {
    if (X.rows() == 0) {
        throw std::invalid_argument("gram_matrix: no data points");
    }
    return gram_matrix(encode_rows(config, X));
}

Eigen::MatrixXd cross_gram(const std::vector<Statevector> &train, const std::vector<Statevector> &test) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(test.size()), static_cast<Eigen::Index>(train.size()));
    for (std::size_t t = 0; t < test.size(); ++t) {
        for (std::size_t i = 0; i < train.size(); ++i) {
            out(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(i)) = fidelity(test[t], train[i]);
        }
    }
    return out;
}

Eigen::MatrixXd cross_gram(const FeatureMapConfig &config, const Eigen::Ref<const FeatureMatrix> &X_train, const Eigen::Ref<const FeatureMatrix> &X_test) {
    if (X_train.cols() != X_test.cols()) {
        throw std::invalid_argument("cross_gram: train and test feature widths differ");
    }
    return cross_gram(encode_rows(config, X_train), encode_rows(config, X_test));
}

KernelMatrixReport check_kernel_matrix(const Eigen::Ref<const Eigen::MatrixXd> &K) {
    if (K.rows() != K.cols() || K.rows() == 0) {
        throw std::invalid_argument("kernel matrix must be square and nonempty");
    }
    KernelMatrixReport report;
    report.max_asymmetry = (K - K.transpose()).cwiseAbs().maxCoeff();
    report.max_diagonal_deviation = (K.diagonal().array() - 1.0).abs().maxCoeff();
    report.min_entry = K.minCoeff();
    report.max_entry = K.maxCoeff();
    const Eigen::MatrixXd sym = 0.5 * (K + K.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
    report.min_eigenvalue = solver.eigenvalues().minCoeff();
    return report;
}

void write_kernel_csv(std::ostream &out, const Eigen::Ref<const Eigen::MatrixXd> &K) {
    std::vector<std::string> header;
    header.reserve(static_cast<std::size_t>(K.cols()));
    for (Eigen::Index c = 0; c < K.cols(); ++c) {
        header.push_back(std::to_string(c));
    }
    csv::write_matrix(out, K, header);
}

Eigen::MatrixXd read_kernel_csv(std::istream &in) {
    Eigen::MatrixXd K = csv::read_matrix(in);
    if (K.rows() != K.cols()) {
        throw std::runtime_error("kernel CSV is not square: " + std::to_string(K.rows()) + " rows, " + std::to_string(K.cols()) + " columns");
    }
    return K;
}

}  // namespace qgenome
