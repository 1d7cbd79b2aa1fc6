#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <vector>

namespace qgenome {

// sign with sign(0) = +1
[[nodiscard]] inline int sign_label(double score) { return score >= 0.0 ? 1 : -1; }

// dataset classes {0, 1} -> {-1, +1}; class 1 is the positive class
[[nodiscard]] inline Eigen::VectorXd to_signed_labels(const std::vector<int> &classes) {
    Eigen::VectorXd y(static_cast<Eigen::Index>(classes.size()));
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (classes[i] != 0 && classes[i] != 1) {
            throw std::invalid_argument("class label must be 0 or 1");
        }
        y(static_cast<Eigen::Index>(i)) = classes[i] == 1 ? 1.0 : -1.0;
    }
    return y;
}

// throws unless every entry is +-1 and, when required, both classes occur
inline void check_signed_labels(const Eigen::Ref<const Eigen::VectorXd> &y, bool require_both_classes = true) {
    if (y.size() == 0) {
        throw std::invalid_argument("empty label vector");
    }
    bool has_pos = false;
    bool has_neg = false;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        if (y(i) == 1.0) {
            has_pos = true;
        } else if (y(i) == -1.0) {
            has_neg = true;
        } else {
            throw std::invalid_argument("labels must be -1 or +1");
        }
    }
    if (require_both_classes && !(has_pos && has_neg)) {
        throw std::invalid_argument("single-class input: both labels -1 and +1 are required");
    }
}

}  // namespace qgenome
