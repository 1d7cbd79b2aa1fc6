#pragma once

// Fidelity kernels K(x, y) = |<phi(x)|phi(y)>|^2 from exact statevectors.

#include "qgenome/feature_map.hpp"
#include "qgenome/statevector.hpp"

#include <Eigen/Core>

#include <iosfwd>
#include <vector>

namespace qgenome {

using FeatureMatrix = Eigen::MatrixXd;
using KernelMatrix = Eigen::MatrixXd;

template <typename DerivedX, typename DerivedY>
[[nodiscard]] double kernel_entry(const FeatureMapConfig &config, const Eigen::MatrixBase<DerivedX> &x, const Eigen::MatrixBase<DerivedY> &y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("kernel_entry: feature vectors differ in length");
    }
    return fidelity(encode(config, x.template cast<double>()), encode(config, y.template cast<double>()));
}

// one encoded state per row
std::vector<Statevector> encode_rows(const FeatureMapConfig &config, const Eigen::Ref<const FeatureMatrix> &X);

// m x m Gram matrix; each row is encoded once
[[nodiscard]] KernelMatrix gram_matrix(const FeatureMapConfig &config, const Eigen::Ref<const FeatureMatrix> &X);
[[nodiscard]] KernelMatrix gram_matrix(const std::vector<Statevector> &states);

// entry(t, i) = K(test row t, train row i)
[[nodiscard]] Eigen::MatrixXd cross_gram(const FeatureMapConfig &config, const Eigen::Ref<const FeatureMatrix> &X_train, const Eigen::Ref<const FeatureMatrix> &X_test);
[[nodiscard]] Eigen::MatrixXd cross_gram(const std::vector<Statevector> &train, const std::vector<Statevector> &test);

struct KernelMatrixReport {
    double max_asymmetry = 0.0;
    double max_diagonal_deviation = 0.0;
    double min_eigenvalue = 0.0;
    double min_entry = 0.0;
    double max_entry = 0.0;

    [[nodiscard]] bool symmetric() const { return max_asymmetry <= 1e-10; }
    [[nodiscard]] bool unit_diagonal() const { return max_diagonal_deviation <= 1e-10; }
    [[nodiscard]] bool positive_semidefinite() const { return min_eigenvalue >= -1e-8; }
    [[nodiscard]] bool in_range() const { return min_entry >= -1e-12 && max_entry <= 1.0 + 1e-9; }
    [[nodiscard]] bool ok() const { return symmetric() && unit_diagonal() && positive_semidefinite() && in_range(); }
};

// checks a square matrix against the fidelity-kernel invariants
[[nodiscard]] KernelMatrixReport check_kernel_matrix(const Eigen::Ref<const Eigen::MatrixXd> &K);

// header row of column indices, then one row per matrix row, 17 significant digits
void write_kernel_csv(std::ostream &out, const Eigen::Ref<const Eigen::MatrixXd> &K);
[[nodiscard]] Eigen::MatrixXd read_kernel_csv(std::istream &in);

}  // namespace qgenome
