#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

namespace qgenome {

// positive class is +1
struct ConfusionCounts {
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t tn = 0;
    std::int64_t fn = 0;

    [[nodiscard]] std::int64_t total() const { return tp + fp + tn + fn; }
    friend bool operator==(const ConfusionCounts &, const ConfusionCounts &) = default;
};

struct MetricsReport {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double auroc = 0.5;
};

[[nodiscard]] ConfusionCounts confusion(const Eigen::Ref<const Eigen::VectorXd> &predictions, const Eigen::Ref<const Eigen::VectorXd> &labels);

// zero denominators give 0; auroc stays 0.5
[[nodiscard]] MetricsReport metrics(const ConfusionCounts &counts);
[[nodiscard]] MetricsReport metrics(const ConfusionCounts &counts, const Eigen::Ref<const Eigen::VectorXd> &scores, const Eigen::Ref<const Eigen::VectorXd> &labels);

// P(score_pos > score_neg) + P(tie)/2; 0.5 when either class is absent
[[nodiscard]] double auroc(const Eigen::Ref<const Eigen::VectorXd> &scores, const Eigen::Ref<const Eigen::VectorXd> &labels);

// sign(score) with sign(0) = +1, as a vector of +-1
[[nodiscard]] Eigen::VectorXd predictions_from_scores(const Eigen::Ref<const Eigen::VectorXd> &scores);

struct TableRow {
    std::string feature_map;
    std::string algorithm;
    bool failed = false;
    double train_accuracy = 0.0;
    MetricsReport test;
};

// aligned text table, one line per (feature map, algorithm) with metrics in percent
[[nodiscard]] std::string render_table(const std::vector<TableRow> &rows);

}  // namespace qgenome
