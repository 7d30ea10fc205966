#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "drast/error.hpp"
#include "drast/features.hpp"
#include "drast/metrics.hpp"
#include "drast/net.hpp"
#include "drast/sampling.hpp"
#include "drast/tree.hpp"

namespace drast {

enum class RankerKind { RandomForest, GradientBoost, Dnn, CombinedRf };
enum class SamplingKind { None, Smote, RandomOver, RandomUnder, Tomek };

inline const char* ranker_kind_name(RankerKind k) {
    switch (k) {
        case RankerKind::RandomForest: return "rf";
        case RankerKind::GradientBoost: return "gboost";
        case RankerKind::Dnn: return "dnn";
        default: return "combined";
    }
}

inline const char* sampling_kind_name(SamplingKind s) {
    switch (s) {
        case SamplingKind::None: return "none";
        case SamplingKind::Smote: return "smote";
        case SamplingKind::RandomOver: return "over";
        case SamplingKind::RandomUnder: return "under";
        default: return "tomek";
    }
}

struct RankerConfig {
    std::size_t forest_trees = 100;
    std::size_t forest_max_features = 2;  // of the six features
    std::size_t forest_min_leaf = 1;
    std::size_t gboost_trees = 100;
    std::size_t gboost_depth = 3;
    double gboost_rate = 0.1;
    std::size_t dnn_hidden = 700;
    Activation dnn_hidden_act = Activation::Relu;  // tanh selectable
    std::size_t dnn_epochs = 50;
    std::size_t dnn_batch = 32;
    double dnn_rate = 0.01;
    std::size_t smote_k = 5;
    bool combined_drop_positives_only = false;
};

// The trained final model. Exactly one of ensemble/net is populated,
// matching the kind.
struct Ranker {
    RankerKind kind = RankerKind::RandomForest;
    std::optional<TreeEnsemble> ensemble;
    std::optional<FeedForwardNet> net;
    std::vector<double> loss_trace;  // DNN only
    RankerConfig config;
    std::uint64_t seed = 0;

    double score(const std::array<double, 6>& features) const {
        if (kind == RankerKind::Dnn) {
            std::vector<double> x(features.begin(), features.end());
            return net->forward(x)[0];
        }
        return ensemble->predict(features);
    }
};

namespace ranker_detail {

inline LabeledMatrix to_matrix(std::span<const FeatureRow> rows) {
    LabeledMatrix data;
    for (const FeatureRow& row : rows) {
        data.rows.emplace_back(row.f.begin(), row.f.end());
        data.labels.push_back(row.label);
    }
    return data;
}

inline LabeledMatrix apply_sampling(const LabeledMatrix& data, SamplingKind sampling,
                                    std::size_t smote_k, std::uint64_t seed) {
    switch (sampling) {
        case SamplingKind::Smote: return smote(data, smote_k, seed);
        case SamplingKind::RandomOver: return random_resample(data, ResampleMode::Over, seed);
        case SamplingKind::RandomUnder: return random_resample(data, ResampleMode::Under, seed);
        case SamplingKind::Tomek: return tomek_links(data);
        default: return data;
    }
}

inline void fit_into(Ranker& ranker, const LabeledMatrix& data, RankerKind kind,
                     const RankerConfig& config, std::uint64_t seed) {
    std::vector<double> targets(data.labels.begin(), data.labels.end());
    if (kind == RankerKind::RandomForest || kind == RankerKind::CombinedRf) {
        ranker.ensemble = fit_forest(data.rows, targets, config.forest_trees,
                                     config.forest_max_features,
                                     config.forest_min_leaf, seed);
    } else if (kind == RankerKind::GradientBoost) {
        ranker.ensemble = fit_gboost(data.rows, targets, config.gboost_trees,
                                     config.gboost_depth, config.gboost_rate, seed);
    } else {
        FeedForwardNet net({6, config.dnn_hidden, 1},
                           {config.dnn_hidden_act, Activation::Sigmoid}, seed);
        std::vector<TrainSample> samples;
        for (std::size_t i = 0; i < data.rows.size(); ++i)
            samples.push_back({data.rows[i], {targets[i]}});
        TrainReport report = net_train(net, samples, LossKind::Bce, config.dnn_epochs,
                                       config.dnn_batch, config.dnn_rate, seed + 1);
        ranker.loss_trace = report.epoch_loss;
        ranker.net = std::move(net);
    }
}

inline void require_positive(std::span<const FeatureRow> rows) {
    bool any = std::any_of(rows.begin(), rows.end(),
                           [](const FeatureRow& r) { return r.label == 1; });
    if (!any)
        throw Error(errc::no_positive_pairs, "training slice has no positive rows");
}

}  // namespace ranker_detail

// Trains one ranker on a training slice: sampling first (training rows only),
// then the model fit on the six features.
inline Ranker train_ranker(std::span<const FeatureRow> rows, RankerKind kind,
                           SamplingKind sampling, const RankerConfig& config,
                           std::uint64_t seed) {
    if (kind == RankerKind::CombinedRf)
        throw Error(errc::invalid_argument, "use train_combined for the combined kind");
    ranker_detail::require_positive(rows);
    Ranker ranker;
    ranker.kind = kind;
    ranker.config = config;
    ranker.seed = seed;
    LabeledMatrix data = ranker_detail::to_matrix(rows);
    data = ranker_detail::apply_sampling(data, sampling, config.smote_k, seed + 17);
    ranker_detail::fit_into(ranker, data, kind, config, seed);
    return ranker;
}

// The combined classifier+regressor: a forest classifier flags rows it
// cannot reproduce, those rows are dropped (both classes by default, only
// positives when configured), SMOTE balances the remainder and the forest
// regressor trains on the result.
inline Ranker train_combined(std::span<const FeatureRow> rows, const RankerConfig& config,
                             std::uint64_t seed) {
    ranker_detail::require_positive(rows);
    LabeledMatrix data = ranker_detail::to_matrix(rows);
    std::vector<double> targets(data.labels.begin(), data.labels.end());
    TreeEnsemble classifier =
        fit_forest(data.rows, targets, config.forest_trees, config.forest_max_features,
                   config.forest_min_leaf, seed + 101);

    LabeledMatrix kept;
    for (std::size_t i = 0; i < data.rows.size(); ++i) {
        int predicted = classifier.predict(data.rows[i]) >= 0.5 ? 1 : 0;
        bool misclassified = predicted != data.labels[i];
        bool droppable =
            !config.combined_drop_positives_only || data.labels[i] == 1;
        if (misclassified && droppable) continue;
        kept.rows.push_back(data.rows[i]);
        kept.labels.push_back(data.labels[i]);
    }
    if (kept.rows.empty())
        throw Error(errc::all_rows_removed,
                    "the classifier rejected every training row");
    if (kept.count(1) == 0)
        throw Error(errc::no_positive_pairs,
                    "the classifier rejected every positive row");

    kept = smote(kept, config.smote_k, seed + 17);  // identity when already balanced

    Ranker ranker;
    ranker.kind = RankerKind::CombinedRf;
    ranker.config = config;
    ranker.seed = seed;
    ranker_detail::fit_into(ranker, kept, RankerKind::CombinedRf, config, seed);
    return ranker;
}

namespace ranker_detail {

inline void sort_ranking(std::vector<std::pair<std::string, double>>& ranking) {
    std::sort(ranking.begin(), ranking.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
}

}  // namespace ranker_detail

// Scores the candidate rows of one bug and returns them in descending score
// order; score ties break on ascending file path. Ground truth comes from
// the bug report.
inline RankedList rank_files(const Ranker& ranker, const BugReport& bug,
                             std::span<const FeatureRow> rows) {
    RankedList out;
    out.bug_id = bug.id;
    out.relevant.insert(bug.fixed_files.begin(), bug.fixed_files.end());
    for (const FeatureRow& row : rows)
        out.ranking.emplace_back(row.file, ranker.score(row.f));
    ranker_detail::sort_ranking(out.ranking);
    return out;
}

// Same ranking with ground truth reconstructed from the rows' labels, for
// paths that carry only the persisted pair data.
inline RankedList rank_rows(const Ranker& ranker, const std::string& bug_id,
                            std::span<const FeatureRow> rows) {
    RankedList out;
    out.bug_id = bug_id;
    for (const FeatureRow& row : rows) {
        out.ranking.emplace_back(row.file, ranker.score(row.f));
        if (row.label == 1) out.relevant.insert(row.file);
    }
    ranker_detail::sort_ranking(out.ranking);
    return out;
}

}  // namespace drast
