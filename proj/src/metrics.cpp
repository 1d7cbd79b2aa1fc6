#include "qgenome/metrics.hpp"

#include "qgenome/labels.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qgenome {

namespace {

void check_pair(const Eigen::Ref<const Eigen::VectorXd> &a, const Eigen::Ref<const Eigen::VectorXd> &labels) {
    if (a.size() != labels.size()) {
        throw std::invalid_argument("length mismatch: " + std::to_string(a.size()) + " vs " + std::to_string(labels.size()) + " labels");
    }
    if (labels.size() == 0) {
        throw std::invalid_argument("cannot evaluate an empty label vector");
    }
}

double ratio(std::int64_t num, std::int64_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

ConfusionCounts confusion(const Eigen::Ref<const Eigen::VectorXd> &predictions, const Eigen::Ref<const Eigen::VectorXd> &labels) {
    check_pair(predictions, labels);
    check_signed_labels(labels, false);
    check_signed_labels(predictions, false);
    ConfusionCounts c;
    for (Eigen::Index i = 0; i < labels.size(); ++i) {
        const bool pred_pos = predictions(i) > 0.0;
        const bool pos = labels(i) > 0.0;
        if (pred_pos && pos) {
            ++c.tp;
        } else if (pred_pos) {
            ++c.fp;
        } else if (pos) {
            ++c.fn;
        } else {
            ++c.tn;
        }
    }
    return c;
}

MetricsReport metrics(const ConfusionCounts &counts) {
    if (counts.tp < 0 || counts.fp < 0 || counts.tn < 0 || counts.fn < 0) {
        throw std::invalid_argument("confusion counts must be non-negative");
    }
    if (counts.total() == 0) {
        throw std::invalid_argument("confusion counts are all zero");
    }
    MetricsReport r;
    r.accuracy = ratio(counts.tp + counts.tn, counts.total());
    r.precision = ratio(counts.tp, counts.tp + counts.fp);
    r.recall = ratio(counts.tp, counts.tp + counts.fn);
    r.f1 = r.precision + r.recall > 0.0 ? 2.0 * r.precision * r.recall / (r.precision + r.recall) : 0.0;
    return r;
}

MetricsReport metrics(const ConfusionCounts &counts, const Eigen::Ref<const Eigen::VectorXd> &scores, const Eigen::Ref<const Eigen::VectorXd> &labels) {
    MetricsReport r = metrics(counts);
    if (labels.size() != counts.total()) {
        throw std::invalid_argument("score count does not match the confusion counts");
    }
    r.auroc = auroc(scores, labels);
    return r;
}

double auroc(const Eigen::Ref<const Eigen::VectorXd> &scores, const Eigen::Ref<const Eigen::VectorXd> &labels) {
    check_pair(scores, labels);
    check_signed_labels(labels, false);
    if (!scores.allFinite()) {
        throw std::invalid_argument("scores must be finite");
    }
    std::vector<Eigen::Index> order(static_cast<std::size_t>(scores.size()));
    std::iota(order.begin(), order.end(), Eigen::Index{ 0 });
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return scores(a) < scores(b); });

    // twice the Mann-Whitney statistic, kept integral so the ratio is exact
    std::int64_t doubled = 0;
    std::int64_t neg_below = 0;
    std::int64_t n_pos = 0;
    std::int64_t n_neg = 0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        std::int64_t pos_tied = 0;
        std::int64_t neg_tied = 0;
        while (j < order.size() && scores(order[j]) == scores(order[i])) {
            (labels(order[j]) > 0.0 ? pos_tied : neg_tied) += 1;
            ++j;
        }
        doubled += pos_tied * (2 * neg_below + neg_tied);
        neg_below += neg_tied;
        n_pos += pos_tied;
        n_neg += neg_tied;
        i = j;
    }
    if (n_pos == 0 || n_neg == 0) {
        return 0.5;
    }
    return static_cast<double>(doubled) / static_cast<double>(2 * n_pos * n_neg);
}

Eigen::VectorXd predictions_from_scores(const Eigen::Ref<const Eigen::VectorXd> &scores) {
    return scores.unaryExpr([](double s) { return static_cast<double>(sign_label(s)); });
}

std::string render_table(const std::vector<TableRow> &rows) {
    std::size_t map_w = std::string("Feature Map").size();
    std::size_t alg_w = std::string("Algorithm").size();
    for (const auto &r : rows) {
        map_w = std::max(map_w, r.feature_map.size());
        alg_w = std::max(alg_w, r.algorithm.size());
    }
    const char *columns[] = { "Train Acc", "Test Acc", "Precision", "Recall", "F1", "AUROC" };
    std::ostringstream out;
    char buf[64];
    auto pad = [&](const std::string &s, std::size_t w) { out << s << std::string(w - s.size() + 2, ' '); };
    pad("Feature Map", map_w);
    pad("Algorithm", alg_w);
    for (const char *c : columns) {
        std::snprintf(buf, sizeof buf, "%10s", c);
        out << buf;
    }
    out << '\n';
    for (const auto &r : rows) {
        pad(r.feature_map, map_w);
        pad(r.algorithm, alg_w);
        if (r.failed) {
            std::snprintf(buf, sizeof buf, "%10s", "FAILED");
            out << buf << '\n';
            continue;
        }
        for (double v : { r.train_accuracy, r.test.accuracy, r.test.precision, r.test.recall, r.test.f1, r.test.auroc }) {
            std::snprintf(buf, sizeof buf, "%10.2f", 100.0 * v);
            out << buf;
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace qgenome
