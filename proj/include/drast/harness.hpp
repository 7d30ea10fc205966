#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "drast/error.hpp"
#include "drast/metrics.hpp"
#include "drast/pairing.hpp"
#include "drast/ranker.hpp"

namespace drast {

// Instrumentation hook: fires once per row consumed for training and once per
// row scored for testing, with the 1-based fold the row belongs to.
struct RowAccess {
    enum class Phase { Train, Test };
    Phase phase;
    std::size_t fold;  // 1-based
    std::string bug_id;
};
using AccessLogger = std::function<void(const RowAccess&)>;

struct FoldwiseModels {
    // rankers[i] is trained on fold i+1 (1-based fold index i+1), used to
    // score fold i+2. One per transition.
    std::vector<Ranker> transition_rankers;
    Ranker final_ranker;  // trained on the last fold, used at query time
};

namespace harness_detail {

inline std::vector<std::vector<FeatureRow>> rows_by_fold(
    std::span<const FeatureRow> rows, const FoldPlan& folds) {
    std::unordered_map<std::string, std::size_t> fold_of;
    for (std::size_t i = 0; i < folds.folds.size(); ++i)
        for (const std::string& id : folds.folds[i]) fold_of[id] = i;
    std::vector<std::vector<FeatureRow>> grouped(folds.fold_count());
    for (const FeatureRow& row : rows) {
        auto it = fold_of.find(row.bug_id);
        if (it == fold_of.end())
            throw Error(errc::corrupt_model,
                        "row for bug " + row.bug_id + " is absent from the fold manifest");
        grouped[it->second].push_back(row);
    }
    return grouped;
}

}  // namespace harness_detail

// Trains one ranker per fold transition (train on fold i, test on fold i+1)
// plus a final ranker on the last fold. Each trainer sees only its own
// fold's rows; the logger witnesses exactly what was consumed.
inline FoldwiseModels train_foldwise(std::span<const FeatureRow> rows,
                                     const FoldPlan& folds, RankerKind kind,
                                     SamplingKind sampling, const RankerConfig& config,
                                     std::uint64_t seed,
                                     const AccessLogger& logger = {}) {
    auto grouped = harness_detail::rows_by_fold(rows, folds);
    if (grouped.empty())
        throw Error(errc::empty_results, "no folds to train on");

    auto train_one = [&](std::span<const FeatureRow> slice, std::size_t fold_1based) {
        if (logger)
            for (const FeatureRow& row : slice)
                logger({RowAccess::Phase::Train, fold_1based, row.bug_id});
        if (kind == RankerKind::CombinedRf)
            return train_combined(slice, config, seed + fold_1based);
        return train_ranker(slice, kind, sampling, config, seed + fold_1based);
    };

    FoldwiseModels models;
    for (std::size_t i = 0; i + 1 < grouped.size(); ++i)
        models.transition_rankers.push_back(train_one(grouped[i], i + 1));
    models.final_ranker = train_one(grouped.back(), grouped.size());
    return models;
}

// Scores fold i+1 with the ranker trained on fold i and aggregates the
// metrics. Ground truth comes from the rows' labels (positives are always
// retained in a PairSet). Requires at least two folds.
inline EvalReport evaluate_foldwise(std::span<const FeatureRow> rows,
                                    const FoldPlan& folds,
                                    const FoldwiseModels& models,
                                    const AccessLogger& logger = {}) {
    if (folds.fold_count() < 2)
        throw Error(errc::not_enough_folds,
                    "fold-transition evaluation needs at least 2 folds, have " +
                        std::to_string(folds.fold_count()));
    if (models.transition_rankers.size() + 1 != folds.fold_count())
        throw Error(errc::corrupt_model,
                    "model bundle has " + std::to_string(models.transition_rankers.size()) +
                        " transition rankers for " + std::to_string(folds.fold_count()) +
                        " folds");
    auto grouped = harness_detail::rows_by_fold(rows, folds);

    std::vector<TransitionMetrics> transitions;
    for (std::size_t i = 0; i + 1 < grouped.size(); ++i) {
        const Ranker& ranker = models.transition_rankers[i];
        // group test-fold rows per bug, preserving fold order
        std::map<std::string, std::vector<FeatureRow>> per_bug;
        for (const FeatureRow& row : grouped[i + 1]) {
            per_bug[row.bug_id].push_back(row);
            if (logger) logger({RowAccess::Phase::Test, i + 2, row.bug_id});
        }
        std::vector<RankedList> results;
        for (const auto& [bug_id, bug_rows] : per_bug)
            results.push_back(rank_rows(ranker, bug_id, bug_rows));
        transitions.push_back(evaluate_rankings(results, i + 1, i + 2));
    }
    return EvalReport::from_transitions(std::move(transitions));
}

}  // namespace drast
