#pragma once

#include <algorithm>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "drast/error.hpp"

namespace drast {

// Per-bug ranking outcome: files in descending score order plus the ground
// truth. Relevant files missing from the ranking still count in the metric
// denominators.
struct RankedList {
    std::string bug_id;
    std::vector<std::pair<std::string, double>> ranking;  // scores non-increasing
    std::set<std::string> relevant;
};

// Fraction of bugs with at least one relevant file in the top k.
inline double accuracy_at_k(std::span<const RankedList> results, std::size_t k) {
    if (results.empty())
        throw Error(errc::empty_results, "accuracy@k over zero bugs");
    if (k == 0) throw Error(errc::invalid_argument, "k must be at least 1");
    std::size_t hits = 0;
    for (const RankedList& result : results) {
        if (result.relevant.empty())
            throw Error(errc::no_relevant, "bug " + result.bug_id + " has no relevant files");
        std::size_t top = std::min(k, result.ranking.size());
        for (std::size_t i = 0; i < top; ++i) {
            if (result.relevant.count(result.ranking[i].first)) {
                ++hits;
                break;
            }
        }
    }
    return static_cast<double>(hits) / static_cast<double>(results.size());
}

// Mean of Precision@rank over the ranks where relevant files appear; relevant
// files absent from the ranking contribute zero terms but stay in the
// denominator.
inline double average_precision(const RankedList& result) {
    if (result.relevant.empty())
        throw Error(errc::no_relevant, "bug " + result.bug_id + " has no relevant files");
    double sum = 0;
    std::size_t found = 0;
    for (std::size_t i = 0; i < result.ranking.size(); ++i) {
        if (result.relevant.count(result.ranking[i].first)) {
            ++found;
            sum += static_cast<double>(found) / static_cast<double>(i + 1);
        }
    }
    return sum / static_cast<double>(result.relevant.size());
}

inline double mean_average_precision(std::span<const RankedList> results) {
    if (results.empty())
        throw Error(errc::empty_results, "MAP over zero bugs");
    double total = 0;
    for (const RankedList& result : results) total += average_precision(result);
    return total / static_cast<double>(results.size());
}

// Mean of 1/rank of the first relevant file; bugs whose relevant files never
// appear contribute zero but stay in the denominator.
inline double mean_reciprocal_rank(std::span<const RankedList> results) {
    if (results.empty())
        throw Error(errc::empty_results, "MRR over zero bugs");
    double total = 0;
    for (const RankedList& result : results) {
        if (result.relevant.empty())
            throw Error(errc::no_relevant, "bug " + result.bug_id + " has no relevant files");
        for (std::size_t i = 0; i < result.ranking.size(); ++i) {
            if (result.relevant.count(result.ranking[i].first)) {
                total += 1.0 / static_cast<double>(i + 1);
                break;
            }
        }
    }
    return total / static_cast<double>(results.size());
}

inline constexpr std::size_t kAccuracyKMax = 15;

// Metrics for one train->test fold transition.
struct TransitionMetrics {
    std::size_t train_fold = 0;  // 1-based fold indices
    std::size_t test_fold = 0;
    std::size_t bug_count = 0;
    std::vector<double> accuracy;  // accuracy@1..15
    double map = 0.0;
    double mrr = 0.0;
};

inline TransitionMetrics evaluate_rankings(std::span<const RankedList> results,
                                           std::size_t train_fold,
                                           std::size_t test_fold) {
    TransitionMetrics m;
    m.train_fold = train_fold;
    m.test_fold = test_fold;
    m.bug_count = results.size();
    for (std::size_t k = 1; k <= kAccuracyKMax; ++k)
        m.accuracy.push_back(accuracy_at_k(results, k));
    m.map = mean_average_precision(results);
    m.mrr = mean_reciprocal_rank(results);
    return m;
}

struct EvalReport {
    std::vector<TransitionMetrics> transitions;
    TransitionMetrics mean;  // fold fields unused
    TransitionMetrics best;  // per-metric maximum across transitions

    static EvalReport from_transitions(std::vector<TransitionMetrics> transitions) {
        if (transitions.empty())
            throw Error(errc::empty_results, "no fold transitions to aggregate");
        EvalReport report;
        report.mean.accuracy.assign(kAccuracyKMax, 0.0);
        report.best.accuracy.assign(kAccuracyKMax, 0.0);
        for (const TransitionMetrics& t : transitions) {
            for (std::size_t k = 0; k < kAccuracyKMax; ++k) {
                report.mean.accuracy[k] += t.accuracy[k];
                report.best.accuracy[k] = std::max(report.best.accuracy[k], t.accuracy[k]);
            }
            report.mean.map += t.map;
            report.mean.mrr += t.mrr;
            report.mean.bug_count += t.bug_count;
            report.best.map = std::max(report.best.map, t.map);
            report.best.mrr = std::max(report.best.mrr, t.mrr);
        }
        double n = static_cast<double>(transitions.size());
        for (std::size_t k = 0; k < kAccuracyKMax; ++k) report.mean.accuracy[k] /= n;
        report.mean.map /= n;
        report.mean.mrr /= n;
        report.transitions = std::move(transitions);
        return report;
    }
};

}  // namespace drast
