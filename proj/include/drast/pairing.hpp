#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "drast/corpus.hpp"
#include "drast/error.hpp"
#include "drast/features.hpp"
#include "drast/relevancy.hpp"

namespace drast {

enum class RelevancyScope { PerFold, Global };

struct PairingConfig {
    double threshold = 0.1;          // negatives below or at this f1 are dropped
    std::size_t bugs_per_fold = 100;
    RelevancyScope relevancy_scope = RelevancyScope::PerFold;
    RelevancyConfig relevancy;
    std::uint64_t seed = 1;
};

// Chronologically contiguous bug groups. Fold indices are 1-based in reports.
struct FoldPlan {
    std::size_t bugs_per_fold = 100;
    std::vector<std::vector<std::string>> folds;  // bug ids, chronological

    std::size_t fold_count() const { return folds.size(); }

    // 0-based fold index of a bug id, or npos.
    std::size_t fold_of(const std::string& bug_id) const {
        for (std::size_t i = 0; i < folds.size(); ++i)
            if (std::find(folds[i].begin(), folds[i].end(), bug_id) != folds[i].end())
                return i;
        return static_cast<std::size_t>(-1);
    }
};

struct PairSet {
    std::vector<FeatureRow> rows;  // ascending (reported_at, bug id, file)
};

// Groups the bugs of a chronologically sorted PairSet into consecutive folds
// of `bugs_per_fold`; the final fold may be smaller.
inline FoldPlan split_folds(std::span<const std::string> ordered_bug_ids,
                            std::size_t bugs_per_fold) {
    if (bugs_per_fold == 0)
        throw Error(errc::invalid_argument, "bugs_per_fold must be at least 1");
    FoldPlan plan;
    plan.bugs_per_fold = bugs_per_fold;
    std::vector<std::string> current;
    for (const std::string& id : ordered_bug_ids) {
        current.push_back(id);
        if (current.size() == bugs_per_fold) {
            plan.folds.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) plan.folds.push_back(std::move(current));
    return plan;
}

// Encodes each corpus unit once per model so per-pair scoring is one forward
// pass over the concatenated encodings.
class RelevancyScorer {
public:
    RelevancyScorer(const RelevancyModel& model, const Corpus& corpus,
                    const std::unordered_set<std::string>& stopwords)
        : model_(&model) {
        for (const SourceUnit& unit : corpus.units) {
            SparseVec vec = tfidf(
                preprocess_tokens(unit.characteristics.all_tokens(), stopwords),
                model.vocab);
            encoded_units_.push_back(model.encode(vec));
        }
    }

    std::vector<double> encode_bug(const BugReport& bug,
                                   const std::unordered_set<std::string>& stopwords) const {
        return model_->encode(tfidf(preprocess(bug.text(), stopwords), model_->vocab));
    }

    double score(const std::vector<double>& encoded_bug, std::size_t unit_idx) const {
        std::vector<double> x = encoded_bug;
        x.insert(x.end(), encoded_units_[unit_idx].begin(), encoded_units_[unit_idx].end());
        return model_->relnet.forward(x)[0];
    }

private:
    const RelevancyModel* model_;
    std::vector<std::vector<double>> encoded_units_;
};

// Relevancy model with no training signal yet: vocabulary over the corpus
// characteristics only, seeded random weights. Scores stay in (0,1).
inline RelevancyModel untrained_relevancy_model(
    const Corpus& corpus, const RelevancyConfig& config,
    const std::unordered_set<std::string>& stopwords = default_stopwords()) {
    std::vector<TokenList> docs;
    for (const SourceUnit& unit : corpus.units)
        docs.push_back(preprocess_tokens(unit.characteristics.all_tokens(), stopwords));
    RelevancyModel model;
    model.config = config;
    if (docs.empty()) docs.push_back({});
    bool all_empty = std::all_of(docs.begin(), docs.end(),
                                 [](const TokenList& d) { return d.empty(); });
    if (all_empty) docs.push_back({"placeholder"});  // a vocabulary needs one term
    model.vocab = build_vocabulary(docs);
    std::size_t v = model.vocab.size();
    std::size_t h = autoencoder_width(v);
    model.autoencoder = FeedForwardNet({v, h, v},
                                       {Activation::Tanh, Activation::Identity},
                                       config.seed);
    model.relnet = FeedForwardNet({2 * h, config.hidden, 1},
                                  {config.hidden_act, Activation::Sigmoid},
                                  config.seed + 2);
    return model;
}

struct PairBuild {
    PairSet pairs;
    FoldPlan folds;
    std::vector<std::string> warnings;   // one per skipped bug
    RelevancyModel query_relevancy;      // trained on all retained bugs, for
                                         // scoring previously unseen reports
};

// Builds the labeled six-feature dataset. Bugs whose fixed files are missing
// from the corpus are reported and skipped. Positives are always retained;
// negatives must clear the textual-similarity threshold. Feature six comes
// from a relevancy model trained per fold on strictly earlier folds
// (fold 1 scores with an untrained seeded model), or from one global model
// when configured so.
inline PairBuild build_pairs(std::span<const BugReport> bugs, const Corpus& corpus,
                             const PairingConfig& config,
                             const std::unordered_set<std::string>& stopwords =
                                 default_stopwords()) {
    PairBuild build;

    std::vector<BugReport> retained;
    for (const BugReport& bug : bugs) {
        if (!bug.trainable || bug.fixed_files.empty()) continue;
        std::vector<std::string> missing;
        for (const std::string& f : bug.fixed_files)
            if (!corpus.find(f)) missing.push_back(f);
        if (!missing.empty()) {
            std::string files;
            for (const auto& f : missing) files += (files.empty() ? "" : ", ") + f;
            build.warnings.push_back("UnknownFixedFile: bug " + bug.id +
                                     " skipped; missing " + files);
            continue;
        }
        retained.push_back(bug);
    }
    if (retained.empty())
        throw Error(errc::no_positive_pairs, "no bug with in-corpus fixed files");

    std::sort(retained.begin(), retained.end(),
              [](const BugReport& a, const BugReport& b) {
                  if (a.reported_at != b.reported_at) return a.reported_at < b.reported_at;
                  return a.id < b.id;
              });

    CorpusStats stats = CorpusStats::build(corpus, retained, stopwords);
    FixHistory history = history_from_bugs(retained);

    std::vector<std::string> ordered_ids;
    for (const BugReport& bug : retained) ordered_ids.push_back(bug.id);
    build.folds = split_folds(ordered_ids, config.bugs_per_fold);

    // One relevancy model per fold (on all strictly earlier folds), plus the
    // query-time model over everything.
    std::vector<RelevancyModel> fold_models;
    std::unordered_map<std::string, std::size_t> fold_of;
    for (std::size_t i = 0; i < build.folds.folds.size(); ++i)
        for (const std::string& id : build.folds.folds[i]) fold_of[id] = i;

    RelevancyConfig rc = config.relevancy;
    rc.seed = config.seed;
    build.query_relevancy = train_relevancy_model(retained, corpus, rc, &stats, stopwords);

    auto scorer_index = [&](std::size_t fold) {
        return config.relevancy_scope == RelevancyScope::Global ? 0 : fold;
    };
    if (config.relevancy_scope == RelevancyScope::Global) {
        fold_models.push_back(build.query_relevancy);
    } else {
        std::vector<BugReport> prefix;
        for (std::size_t i = 0; i < build.folds.fold_count(); ++i) {
            if (prefix.empty()) {
                fold_models.push_back(untrained_relevancy_model(corpus, rc, stopwords));
            } else {
                fold_models.push_back(
                    train_relevancy_model(prefix, corpus, rc, &stats, stopwords));
            }
            for (const std::string& id : build.folds.folds[i]) {
                auto it = std::find_if(retained.begin(), retained.end(),
                                       [&](const BugReport& b) { return b.id == id; });
                prefix.push_back(*it);
            }
        }
    }

    std::vector<RelevancyScorer> scorers;
    scorers.reserve(fold_models.size());
    for (const RelevancyModel& model : fold_models)
        scorers.emplace_back(model, corpus, stopwords);

    std::unordered_map<std::string, std::int64_t> reported;
    for (const BugReport& bug : retained) reported[bug.id] = bug.reported_at;

    for (const BugReport& bug : retained) {
        std::size_t fold = fold_of.at(bug.id);
        const RelevancyScorer& scorer = scorers[scorer_index(fold)];
        std::vector<double> encoded_bug = scorer.encode_bug(bug, stopwords);
        const SparseVec& bug_vec = stats.bug_vecs.at(bug.id);
        std::unordered_set<std::string> fixed(bug.fixed_files.begin(),
                                              bug.fixed_files.end());
        for (std::size_t u = 0; u < corpus.units.size(); ++u) {
            const std::string& path = corpus.units[u].path;
            FeatureRow row;
            row.bug_id = bug.id;
            row.file = path;
            row.label = fixed.count(path) ? 1 : 0;
            row.f[0] = textual_similarity(bug_vec, stats.units[u], stats);
            if (row.label == 0 && !(row.f[0] > config.threshold)) continue;
            row.f[1] = collaborative_filtering(bug, path, history, stats.bug_vecs);
            row.f[2] = feature_name_similarity(bug_vec, stats.units[u]);
            row.f[3] = bug_fixing_recency(bug, path, history);
            row.f[4] = static_cast<double>(bug_fixing_frequency(bug, path, history));
            row.f[5] = scorer.score(encoded_bug, u);
            build.pairs.rows.push_back(std::move(row));
        }
    }

    std::sort(build.pairs.rows.begin(), build.pairs.rows.end(),
              [&](const FeatureRow& a, const FeatureRow& b) {
                  std::int64_t ta = reported.at(a.bug_id), tb = reported.at(b.bug_id);
                  if (ta != tb) return ta < tb;
                  if (a.bug_id != b.bug_id) return a.bug_id < b.bug_id;
                  return a.file < b.file;
              });
    return build;
}

}  // namespace drast
