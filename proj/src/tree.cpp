#include "driftarb/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "driftarb/errors.hpp"

namespace driftarb {

namespace {

struct SplitChoice {
    bool found = false;
    int feature = -1;
    double threshold = 0.0;
    double total_sse = std::numeric_limits<double>::infinity();
};

bool zero_impurity(const std::vector<double>& targets, std::span<const int> idx) {
    double mean = 0.0;
    for (int i : idx) mean += targets[static_cast<std::size_t>(i)];
    mean /= static_cast<double>(idx.size());
    double sse = 0.0;
    for (int i : idx) {
        const double d = targets[static_cast<std::size_t>(i)] - mean;
        sse += d * d;
    }
    return sse <= 1e-24 * static_cast<double>(idx.size()) * (1.0 + mean * mean);
}

SplitChoice best_split(const std::vector<std::vector<double>>& rows, const std::vector<double>& targets,
                       std::span<const int> idx, int n_features, int min_leaf) {
    SplitChoice best;
    const std::size_t m = idx.size();
    std::vector<int> order(idx.begin(), idx.end());
    std::vector<double> prefix_sum(m + 1), prefix_sq(m + 1);

    for (int f = 0; f < n_features; ++f) {
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return rows[static_cast<std::size_t>(a)][static_cast<std::size_t>(f)] <
                   rows[static_cast<std::size_t>(b)][static_cast<std::size_t>(f)];
        });
        prefix_sum[0] = prefix_sq[0] = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double y = targets[static_cast<std::size_t>(order[i])];
            prefix_sum[i + 1] = prefix_sum[i] + y;
            prefix_sq[i + 1] = prefix_sq[i] + y * y;
        }
        const double total_sum = prefix_sum[m];
        const double total_sq = prefix_sq[m];

        for (std::size_t i = 1; i < m; ++i) {
            const double lo = rows[static_cast<std::size_t>(order[i - 1])][static_cast<std::size_t>(f)];
            const double hi = rows[static_cast<std::size_t>(order[i])][static_cast<std::size_t>(f)];
            if (lo == hi) continue; // no boundary between equal values
            if (i < static_cast<std::size_t>(min_leaf) || m - i < static_cast<std::size_t>(min_leaf))
                continue;
            const double threshold = lo + 0.5 * (hi - lo);
            const double nl = static_cast<double>(i);
            const double nr = static_cast<double>(m - i);
            const double sse_l = prefix_sq[i] - prefix_sum[i] * prefix_sum[i] / nl;
            const double sse_r =
                (total_sq - prefix_sq[i]) - (total_sum - prefix_sum[i]) * (total_sum - prefix_sum[i]) / nr;
            const double sse = sse_l + sse_r;
            // strict < keeps the lowest feature index / lowest threshold on ties
            if (sse < best.total_sse) {
                best.found = true;
                best.feature = f;
                best.threshold = threshold;
                best.total_sse = sse;
            }
        }
    }
    return best;
}

} // namespace

RegressionTree RegressionTree::fit(const std::vector<std::vector<double>>& rows,
                                   std::span<const double> targets, int max_depth, int min_leaf) {
    if (rows.empty()) throw DataError("fit_tree: no training rows");
    if (rows.size() != targets.size()) throw DataError("fit_tree: rows/targets size mismatch");
    if (max_depth < 0 || min_leaf < 1) throw ConfigError("fit_tree: bad hyperparameters");
    const int n_features = static_cast<int>(rows[0].size());
    for (const auto& r : rows)
        if (static_cast<int>(r.size()) != n_features)
            throw DataError("fit_tree: inconsistent feature dimension");

    RegressionTree tree;
    tree.n_features_ = n_features;
    std::vector<double> target_vec(targets.begin(), targets.end());

    std::vector<int> root_idx(rows.size());
    std::iota(root_idx.begin(), root_idx.end(), 0);

    // explicit stack of (node slot, row indices, depth)
    struct Pending {
        int slot;
        std::vector<int> idx;
        int depth;
    };
    tree.nodes_.emplace_back();
    std::vector<Pending> stack;
    stack.push_back({0, std::move(root_idx), 0});

    while (!stack.empty()) {
        Pending task = std::move(stack.back());
        stack.pop_back();
        auto make_leaf = [&]() {
            TreeNode& node = tree.nodes_[static_cast<std::size_t>(task.slot)];
            double mean = 0.0;
            for (int i : task.idx) mean += target_vec[static_cast<std::size_t>(i)];
            mean /= static_cast<double>(task.idx.size());
            node.feature = -1;
            node.prediction = mean;
            node.count = static_cast<int>(task.idx.size());
        };

        if (task.depth >= max_depth || task.idx.size() < 2 * static_cast<std::size_t>(min_leaf) ||
            zero_impurity(target_vec, task.idx)) {
            make_leaf();
            continue;
        }
        const SplitChoice split = best_split(rows, target_vec, task.idx, n_features, min_leaf);
        if (!split.found) {
            make_leaf();
            continue;
        }

        std::vector<int> left_idx, right_idx;
        for (int i : task.idx) {
            if (rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(split.feature)] <=
                split.threshold)
                left_idx.push_back(i);
            else
                right_idx.push_back(i);
        }

        const int left_slot = static_cast<int>(tree.nodes_.size());
        tree.nodes_.emplace_back();
        const int right_slot = static_cast<int>(tree.nodes_.size());
        tree.nodes_.emplace_back();
        TreeNode& node = tree.nodes_[static_cast<std::size_t>(task.slot)];
        node.feature = split.feature;
        node.threshold = split.threshold;
        node.left = left_slot;
        node.right = right_slot;
        node.count = static_cast<int>(task.idx.size());
        stack.push_back({left_slot, std::move(left_idx), task.depth + 1});
        stack.push_back({right_slot, std::move(right_idx), task.depth + 1});
    }
    return tree;
}

double RegressionTree::predict(std::span<const double> features) const {
    if (static_cast<int>(features.size()) != n_features_)
        throw DataError("predict_tree: expected " + std::to_string(n_features_) + " features, got " +
                        std::to_string(features.size()));
    int at = 0;
    while (!nodes_[static_cast<std::size_t>(at)].is_leaf()) {
        const TreeNode& node = nodes_[static_cast<std::size_t>(at)];
        at = features[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left : node.right;
    }
    return nodes_[static_cast<std::size_t>(at)].prediction;
}

} // namespace driftarb
