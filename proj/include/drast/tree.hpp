#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "drast/error.hpp"
#include "drast/rng.hpp"

namespace drast {

using FeatureMatrix = std::vector<std::vector<double>>;

// CART regression tree. Splits maximize variance reduction; ties break on the
// lowest feature index, then the lowest threshold. Leaves carry the mean
// target of their partition.
struct RegressionTree {
    struct Node {
        bool leaf = true;
        std::size_t feature = 0;
        double threshold = 0.0;
        std::int32_t left = -1, right = -1;
        double value = 0.0;
    };
    std::vector<Node> nodes;

    double predict(std::span<const double> x) const {
        std::int32_t at = 0;
        for (;;) {
            const Node& node = nodes[static_cast<std::size_t>(at)];
            if (node.leaf) return node.value;
            at = x[node.feature] <= node.threshold ? node.left : node.right;
        }
    }
};

namespace tree_detail {

struct Split {
    bool found = false;
    std::size_t feature = 0;
    double threshold = 0.0;
    double gain = 0.0;
};

struct Builder {
    const FeatureMatrix& x;
    const std::vector<double>& y;
    std::size_t min_leaf;
    std::size_t max_depth;  // 0 = unrestricted
    RegressionTree* tree;

    double node_sse(std::span<const std::size_t> idx, double mean) const {
        double sse = 0;
        for (std::size_t i : idx) {
            double d = y[i] - mean;
            sse += d * d;
        }
        return sse;
    }

    Split best_split(std::vector<std::size_t>& idx,
                     std::span<const std::size_t> features) const {
        double total = 0;
        for (std::size_t i : idx) total += y[i];
        double mean = total / static_cast<double>(idx.size());
        double parent_sse = node_sse(idx, mean);

        Split best;
        for (std::size_t f : features) {
            std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
                if (x[a][f] != x[b][f]) return x[a][f] < x[b][f];
                return a < b;
            });
            double left_sum = 0;
            const double right_total = total;
            for (std::size_t cut = 1; cut < idx.size(); ++cut) {
                left_sum += y[idx[cut - 1]];
                if (x[idx[cut - 1]][f] == x[idx[cut]][f]) continue;  // not a boundary
                if (cut < min_leaf || idx.size() - cut < min_leaf) continue;
                double nl = static_cast<double>(cut);
                double nr = static_cast<double>(idx.size() - cut);
                double right_sum = right_total - left_sum;
                // SSE reduction = parent - (sum sq - n*mean^2) terms; only the
                // mean-dependent part varies, so compare via the identity
                // gain = left_sum^2/nl + right_sum^2/nr - total^2/n.
                double gain = left_sum * left_sum / nl + right_sum * right_sum / nr -
                              total * total / static_cast<double>(idx.size());
                // Features ascend and thresholds ascend within a feature, so
                // first-wins realizes the lowest-feature/lowest-threshold
                // tie-break.
                if (gain > best.gain) {
                    best.found = true;
                    best.feature = f;
                    best.threshold = 0.5 * (x[idx[cut - 1]][f] + x[idx[cut]][f]);
                    best.gain = gain;
                }
            }
        }
        (void)parent_sse;
        return best;
    }

    std::int32_t build(std::vector<std::size_t> idx, std::size_t depth, Rng& rng,
                       std::size_t max_features, std::size_t n_features) {
        std::int32_t me = static_cast<std::int32_t>(tree->nodes.size());
        tree->nodes.emplace_back();

        double total = 0;
        for (std::size_t i : idx) total += y[i];
        double mean = total / static_cast<double>(idx.size());

        bool pure = true;
        for (std::size_t i : idx)
            if (y[i] != y[idx[0]]) {
                pure = false;
                break;
            }

        bool depth_ok = max_depth == 0 || depth < max_depth;
        if (pure || idx.size() < 2 * min_leaf || !depth_ok) {
            tree->nodes[static_cast<std::size_t>(me)].value = mean;
            return me;
        }

        // Sample the feature subset without replacement (partial Fisher-Yates).
        std::vector<std::size_t> features(n_features);
        std::iota(features.begin(), features.end(), 0);
        std::size_t take = std::min(max_features, n_features);
        for (std::size_t i = 0; i < take; ++i) {
            std::size_t j = i + rng.uniform_index(n_features - i);
            std::swap(features[i], features[j]);
        }
        features.resize(take);
        std::sort(features.begin(), features.end());  // tie-break by feature index

        Split split = best_split(idx, features);
        if (!split.found || split.gain <= 0.0) {
            tree->nodes[static_cast<std::size_t>(me)].value = mean;
            return me;
        }

        std::vector<std::size_t> left, right;
        for (std::size_t i : idx)
            (x[i][split.feature] <= split.threshold ? left : right).push_back(i);
        // Degenerate partitions cannot happen: thresholds sit strictly between
        // two distinct feature values.
        std::int32_t l = build(std::move(left), depth + 1, rng, max_features, n_features);
        std::int32_t r = build(std::move(right), depth + 1, rng, max_features, n_features);
        auto& node = tree->nodes[static_cast<std::size_t>(me)];
        node.leaf = false;
        node.feature = split.feature;
        node.threshold = split.threshold;
        node.left = l;
        node.right = r;
        return me;
    }
};

inline void validate_training_data(const FeatureMatrix& x, const std::vector<double>& y) {
    if (x.size() < 2)
        throw Error(errc::degenerate_data, "need at least 2 rows to fit trees");
    if (x.size() != y.size())
        throw Error(errc::shape_mismatch, "feature matrix and target size differ");
    std::size_t width = x[0].size();
    for (const auto& row : x)
        if (row.size() != width)
            throw Error(errc::shape_mismatch, "ragged feature matrix");
    for (double t : y)
        if (!std::isfinite(t))
            throw Error(errc::degenerate_data, "non-finite target");
}

inline RegressionTree fit_tree(const FeatureMatrix& x, const std::vector<double>& y,
                               std::span<const std::size_t> rows, std::size_t min_leaf,
                               std::size_t max_depth, std::size_t max_features,
                               std::uint64_t seed) {
    RegressionTree tree;
    Builder builder{x, y, std::max<std::size_t>(1, min_leaf), max_depth, &tree};
    Rng rng(seed);
    builder.build({rows.begin(), rows.end()}, 0, rng, max_features, x[0].size());
    return tree;
}

}  // namespace tree_detail

enum class EnsembleKind { RandomForest, GradientBoost };

struct TreeEnsemble {
    EnsembleKind kind = EnsembleKind::RandomForest;
    std::vector<RegressionTree> trees;
    double learning_rate = 0.0;   // boost only
    double base_prediction = 0.0; // boost only
    std::uint64_t seed = 0;

    double predict(std::span<const double> x) const {
        if (kind == EnsembleKind::RandomForest) {
            double total = 0;
            for (const auto& tree : trees) total += tree.predict(x);
            return trees.empty() ? 0.0 : total / static_cast<double>(trees.size());
        }
        double total = base_prediction;
        for (const auto& tree : trees) total += learning_rate * tree.predict(x);
        return total;
    }
};

// Bagged forest: bootstrap rows per tree, max_features sampled per split.
// Tree t draws from seed + t, so a parallel fit would agree with this serial one.
inline TreeEnsemble fit_forest(const FeatureMatrix& x, const std::vector<double>& y,
                               std::size_t n_trees, std::size_t max_features,
                               std::size_t min_leaf, std::uint64_t seed) {
    tree_detail::validate_training_data(x, y);
    if (n_trees == 0) throw Error(errc::invalid_argument, "n_trees must be positive");
    TreeEnsemble ensemble;
    ensemble.kind = EnsembleKind::RandomForest;
    ensemble.seed = seed;
    for (std::size_t t = 0; t < n_trees; ++t) {
        Rng rng(seed + t);
        std::vector<std::size_t> rows(x.size());
        for (auto& r : rows) r = rng.uniform_index(x.size());
        ensemble.trees.push_back(tree_detail::fit_tree(
            x, y, rows, min_leaf, 0, std::max<std::size_t>(1, max_features),
            seed + t + 0x9e3779b9));
    }
    return ensemble;
}

// Stagewise squared-loss boosting: base prediction is the target mean, each
// tree fits the current residuals over all rows with every feature in play.
inline TreeEnsemble fit_gboost(const FeatureMatrix& x, const std::vector<double>& y,
                               std::size_t n_trees, std::size_t max_depth,
                               double learning_rate, std::uint64_t seed) {
    tree_detail::validate_training_data(x, y);
    if (n_trees == 0) throw Error(errc::invalid_argument, "n_trees must be positive");
    TreeEnsemble ensemble;
    ensemble.kind = EnsembleKind::GradientBoost;
    ensemble.seed = seed;
    ensemble.learning_rate = learning_rate;
    ensemble.base_prediction =
        std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());

    std::vector<std::size_t> all_rows(x.size());
    std::iota(all_rows.begin(), all_rows.end(), 0);
    std::vector<double> current(x.size(), ensemble.base_prediction);
    std::vector<double> residual(x.size());
    for (std::size_t t = 0; t < n_trees; ++t) {
        for (std::size_t i = 0; i < x.size(); ++i) residual[i] = y[i] - current[i];
        RegressionTree tree = tree_detail::fit_tree(x, residual, all_rows, 1, max_depth,
                                                    x[0].size(), seed + t);
        for (std::size_t i = 0; i < x.size(); ++i)
            current[i] += learning_rate * tree.predict(x[i]);
        ensemble.trees.push_back(std::move(tree));
    }
    return ensemble;
}

}  // namespace drast
