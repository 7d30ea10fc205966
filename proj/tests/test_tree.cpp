#include <cmath>

#include <catch2/catch_amalgamated.hpp>

#include "drast/rng.hpp"
#include "drast/tree.hpp"

using drast::Error;
using drast::FeatureMatrix;
using drast::fit_forest;
using drast::fit_gboost;
using drast::Rng;
using drast::TreeEnsemble;

TEST_CASE("constant targets give constant predictions") {
    FeatureMatrix x = {{0.1}, {0.5}, {0.9}, {0.3}};
    std::vector<double> y = {2.5, 2.5, 2.5, 2.5};
    TreeEnsemble forest = fit_forest(x, y, 20, 1, 1, 3);
    for (const auto& row : x) CHECK(forest.predict(row) == 2.5);
    TreeEnsemble boost = fit_gboost(x, y, 10, 3, 0.1, 3);
    for (const auto& row : x) CHECK(boost.predict(row) == Catch::Approx(2.5).margin(1e-12));
}

TEST_CASE("forest learns a 1-feature step function") {
    Rng rng(4);
    FeatureMatrix x;
    std::vector<double> y;
    for (int i = 0; i < 80; ++i) {
        double v = rng.uniform();
        x.push_back({v});
        y.push_back(v > 0.5 ? 1.0 : 0.0);
    }
    TreeEnsemble forest = fit_forest(x, y, 50, 1, 1, 12);
    CHECK(forest.predict(std::vector<double>{0.9}) >
          forest.predict(std::vector<double>{0.1}));
    CHECK(forest.predict(std::vector<double>{0.9}) > 0.8);
    CHECK(forest.predict(std::vector<double>{0.1}) < 0.2);
}

TEST_CASE("same seed produces identical ensembles") {
    Rng rng(9);
    FeatureMatrix x;
    std::vector<double> y;
    for (int i = 0; i < 40; ++i) {
        x.push_back({rng.uniform(), rng.uniform(), rng.uniform()});
        y.push_back(rng.uniform());
    }
    TreeEnsemble a = fit_forest(x, y, 15, 2, 1, 77);
    TreeEnsemble b = fit_forest(x, y, 15, 2, 1, 77);
    REQUIRE(a.trees.size() == b.trees.size());
    for (const auto& row : x) CHECK(a.predict(row) == b.predict(row));
    TreeEnsemble c = fit_forest(x, y, 15, 2, 1, 78);
    bool any_differ = false;
    for (const auto& row : x)
        if (a.predict(row) != c.predict(row)) any_differ = true;
    CHECK(any_differ);
}

TEST_CASE("forest predictions stay within the target range") {
    Rng rng(31);
    FeatureMatrix x;
    std::vector<double> y;
    for (int i = 0; i < 60; ++i) {
        x.push_back({rng.uniform(-2, 2), rng.uniform(-2, 2)});
        y.push_back(rng.uniform(-5, 7));
    }
    double lo = *std::min_element(y.begin(), y.end());
    double hi = *std::max_element(y.begin(), y.end());
    TreeEnsemble forest = fit_forest(x, y, 30, 1, 1, 3);
    for (int i = 0; i < 50; ++i) {
        std::vector<double> probe = {rng.uniform(-3, 3), rng.uniform(-3, 3)};
        double p = forest.predict(probe);
        CHECK(p >= lo);
        CHECK(p <= hi);
    }
}

TEST_CASE("zero rows is an error") {
    CHECK_THROWS_AS(fit_forest({}, {}, 5, 1, 1, 1), Error);
    CHECK_THROWS_AS(fit_gboost({}, {}, 5, 3, 0.1, 1), Error);
}

TEST_CASE("one unrestricted tree with unit rate interpolates distinct points") {
    FeatureMatrix x = {{0.0}, {1.0}, {2.0}, {3.0}};
    std::vector<double> y = {4.0, -1.0, 2.5, 0.25};
    TreeEnsemble boost = fit_gboost(x, y, 1, 0, 1.0, 5);
    for (std::size_t i = 0; i < x.size(); ++i)
        CHECK(boost.predict(x[i]) == Catch::Approx(y[i]).margin(1e-12));
}

TEST_CASE("zero learning rate collapses boosting to the target mean") {
    FeatureMatrix x = {{0.0}, {1.0}, {2.0}, {3.0}};
    std::vector<double> y = {1.0, 2.0, 3.0, 6.0};
    TreeEnsemble boost = fit_gboost(x, y, 25, 2, 0.0, 5);
    for (const auto& row : x) CHECK(boost.predict(row) == 3.0);
}

TEST_CASE("boosting training MSE is non-increasing in the number of trees") {
    Rng rng(13);
    FeatureMatrix x;
    std::vector<double> y;
    for (int i = 0; i < 50; ++i) {
        double a = rng.uniform(), b = rng.uniform();
        x.push_back({a, b});
        y.push_back(std::sin(3 * a) + 0.5 * b);
    }
    // Recompute the MSE after each stage by truncating the ensemble.
    TreeEnsemble full = fit_gboost(x, y, 40, 3, 0.1, 8);
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t stages = 0; stages <= full.trees.size(); ++stages) {
        TreeEnsemble truncated = full;
        truncated.trees.resize(stages);
        double mse = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            double d = truncated.predict(x[i]) - y[i];
            mse += d * d;
        }
        mse /= static_cast<double>(x.size());
        CHECK(mse <= prev + 1e-9);
        prev = mse;
    }
}

TEST_CASE("min_leaf is honored") {
    Rng rng(17);
    FeatureMatrix x;
    std::vector<double> y;
    for (int i = 0; i < 30; ++i) {
        x.push_back({rng.uniform()});
        y.push_back(rng.uniform());
    }
    TreeEnsemble forest = fit_forest(x, y, 5, 1, 30, 3);
    // min_leaf == n means no split is legal: every tree is a single leaf.
    for (const auto& tree : forest.trees) {
        REQUIRE(tree.nodes.size() == 1);
        CHECK(tree.nodes[0].leaf);
    }
}

TEST_CASE("internal nodes always have two children") {
    Rng rng(23);
    FeatureMatrix x;
    std::vector<double> y;
    for (int i = 0; i < 64; ++i) {
        x.push_back({rng.uniform(), rng.uniform()});
        y.push_back(rng.uniform() > 0.5 ? 1.0 : 0.0);
    }
    TreeEnsemble forest = fit_forest(x, y, 10, 2, 1, 500);
    for (const auto& tree : forest.trees)
        for (const auto& node : tree.nodes)
            if (!node.leaf) {
                CHECK(node.left >= 0);
                CHECK(node.right >= 0);
            }
}
