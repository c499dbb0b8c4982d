#ifndef DRIFTARB_TREE_HPP
#define DRIFTARB_TREE_HPP

#include <span>
#include <vector>

namespace driftarb {

struct TreeNode {
    int feature = -1; // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double prediction = 0.0; // leaf: mean of training targets reaching it
    int count = 0;

    bool is_leaf() const { return feature < 0; }
};

/// CART with squared-error impurity. Splits minimize the total child
/// sum-of-squared-deviations; candidate thresholds are midpoints between
/// consecutive distinct sorted feature values. Ties break toward the lowest
/// feature index, then the lowest threshold. Routing sends feature <=
/// threshold left.
class RegressionTree {
public:
    static RegressionTree fit(const std::vector<std::vector<double>>& rows,
                              std::span<const double> targets, int max_depth, int min_leaf);

    double predict(std::span<const double> features) const;

    const std::vector<TreeNode>& nodes() const { return nodes_; }
    int feature_count() const { return n_features_; }

private:
    std::vector<TreeNode> nodes_;
    int n_features_ = 0;
};

} // namespace driftarb

#endif
