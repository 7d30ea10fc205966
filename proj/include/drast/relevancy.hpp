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
#include "drast/net.hpp"
#include "drast/tfidf.hpp"

// Feature six: a learned relevancy score between a bug report and a file's
// code characteristics. Both sides share one tf-idf vocabulary, pass through
// one autoencoder that narrows them to 75% of the vocabulary width, and a
// 3-layer net with a sigmoid output scores the concatenated encodings.

namespace drast {

inline std::size_t autoencoder_width(std::size_t vocab_size) {
    return (3 * vocab_size + 3) / 4;  // ceil(0.75 v)
}

struct RelevancyConfig {
    std::size_t hidden = 700;
    Activation hidden_act = Activation::Relu;  // tanh selectable
    std::size_t ae_epochs = 50;
    std::size_t rel_epochs = 50;
    std::size_t batch_size = 32;
    double ae_rate = 0.01;
    double rel_rate = 0.01;
    std::uint64_t seed = 1;
};

struct RelevancyModel {
    Vocabulary vocab;
    FeedForwardNet autoencoder;  // V -> ceil(0.75 V) -> V
    FeedForwardNet relnet;       // 2*ceil(0.75 V) -> hidden -> 1, sigmoid out
    RelevancyConfig config;

    std::size_t encoded_width() const { return autoencoder.sizes()[1]; }

    std::vector<double> encode(const SparseVec& vec) const {
        if (vec.dimension != vocab.size())
            throw Error(errc::vocabulary_mismatch,
                        "vector width " + std::to_string(vec.dimension) +
                            " does not match the model vocabulary of " +
                            std::to_string(vocab.size()));
        return autoencoder.forward_partial(to_dense(vec), 1);
    }

    double score_vectors(const SparseVec& bug_vec, const SparseVec& code_vec) const {
        std::vector<double> joint = encode(bug_vec);
        std::vector<double> code = encode(code_vec);
        joint.insert(joint.end(), code.begin(), code.end());
        return relnet.forward(joint)[0];
    }
};

// One candidate (bug, unit) pair during relevancy training.
struct RelevancyPair {
    std::size_t bug_idx = 0;
    std::size_t unit_idx = 0;
    bool positive = false;
    double textual = 0.0;
};

// Per bug report: keep every positive and the top-k negatives by textual
// similarity, k = that bug's positive count. Bugs without positives
// contribute nothing. Negative ties break on the lower unit index.
inline std::vector<RelevancyPair> balance_pairs(std::span<const RelevancyPair> pairs) {
    std::vector<std::size_t> bug_order;  // first-seen order of bug indices
    std::unordered_map<std::size_t, std::vector<RelevancyPair>> by_bug;
    for (const RelevancyPair& pair : pairs) {
        auto [it, inserted] = by_bug.try_emplace(pair.bug_idx);
        if (inserted) bug_order.push_back(pair.bug_idx);
        it->second.push_back(pair);
    }

    std::vector<RelevancyPair> balanced;
    for (std::size_t bug : bug_order) {
        auto& group = by_bug[bug];
        std::vector<RelevancyPair> negatives;
        std::size_t positives = 0;
        for (const RelevancyPair& pair : group) {
            if (pair.positive) {
                balanced.push_back(pair);
                ++positives;
            } else {
                negatives.push_back(pair);
            }
        }
        if (positives == 0) continue;  // nothing retained for this bug
        std::sort(negatives.begin(), negatives.end(),
                  [](const RelevancyPair& a, const RelevancyPair& b) {
                      if (a.textual != b.textual) return a.textual > b.textual;
                      return a.unit_idx < b.unit_idx;
                  });
        std::size_t take = std::min(positives, negatives.size());
        balanced.insert(balanced.end(), negatives.begin(),
                        negatives.begin() + static_cast<std::ptrdiff_t>(take));
    }
    return balanced;
}

// Trains the full relevancy stack on the given bugs. The vocabulary covers
// bug texts and code characteristics together; the autoencoder trains on the
// union of both vector populations appearing in the balanced pairs; the
// relevancy net trains on concatenated encodings with BCE.
inline RelevancyModel train_relevancy_model(
    std::span<const BugReport> bugs, const Corpus& corpus, const RelevancyConfig& config,
    const CorpusStats* textual_stats = nullptr,
    const std::unordered_set<std::string>& stopwords = default_stopwords()) {
    // Shared vocabulary over both document populations.
    std::vector<TokenList> bug_docs, char_docs, all_docs;
    for (const BugReport& bug : bugs) {
        bug_docs.push_back(preprocess(bug.text(), stopwords));
        all_docs.push_back(bug_docs.back());
    }
    for (const SourceUnit& unit : corpus.units) {
        char_docs.push_back(preprocess_tokens(unit.characteristics.all_tokens(), stopwords));
        all_docs.push_back(char_docs.back());
    }
    if (all_docs.empty())
        throw Error(errc::empty_corpus, "no documents for the relevancy vocabulary");

    RelevancyModel model;
    model.config = config;
    model.vocab = build_vocabulary(all_docs);
    std::size_t v = model.vocab.size();
    std::size_t h = autoencoder_width(v);
    model.autoencoder = FeedForwardNet({v, h, v},
                                       {Activation::Tanh, Activation::Identity},
                                       config.seed);
    model.relnet = FeedForwardNet({2 * h, config.hidden, 1},
                                  {config.hidden_act, Activation::Sigmoid},
                                  config.seed + 2);

    std::vector<SparseVec> bug_vecs, unit_vecs;
    for (const auto& doc : bug_docs) bug_vecs.push_back(tfidf(doc, model.vocab));
    for (const auto& doc : char_docs) unit_vecs.push_back(tfidf(doc, model.vocab));

    // Fallback textual ordering when no rVSM stats are supplied: similarity of
    // the bug text to the unit's characteristics under the shared vocabulary.
    CorpusStats local_stats;
    if (!textual_stats) {
        local_stats = CorpusStats::build(corpus, bugs, stopwords);
        textual_stats = &local_stats;
    }

    std::vector<RelevancyPair> pairs;
    for (std::size_t b = 0; b < bugs.size(); ++b) {
        const BugReport& bug = bugs[b];
        if (!bug.trainable || bug.fixed_files.empty()) continue;
        std::unordered_set<std::string> fixed(bug.fixed_files.begin(),
                                              bug.fixed_files.end());
        bool any_positive = false;
        for (const std::string& f : bug.fixed_files)
            if (corpus.find(f)) any_positive = true;
        if (!any_positive) continue;
        auto bug_vec_it = textual_stats->bug_vecs.find(bug.id);
        for (std::size_t u = 0; u < corpus.units.size(); ++u) {
            RelevancyPair pair;
            pair.bug_idx = b;
            pair.unit_idx = u;
            pair.positive = fixed.count(corpus.units[u].path) > 0;
            pair.textual = bug_vec_it == textual_stats->bug_vecs.end()
                               ? 0.0
                               : textual_similarity(bug_vec_it->second,
                                                    textual_stats->units[u],
                                                    *textual_stats);
            pairs.push_back(pair);
        }
    }

    std::vector<RelevancyPair> balanced = balance_pairs(pairs);
    bool any_positive =
        std::any_of(balanced.begin(), balanced.end(),
                    [](const RelevancyPair& p) { return p.positive; });
    if (!any_positive)
        throw Error(errc::no_positive_pairs,
                    "no (bug, fixed file) pair maps into the corpus");

    // Autoencoder training set: unique vectors of both sides of the pairs.
    std::vector<TrainSample> ae_samples;
    {
        std::unordered_set<std::size_t> seen_bugs, seen_units;
        for (const RelevancyPair& pair : balanced) {
            if (seen_bugs.insert(pair.bug_idx).second) {
                auto dense = to_dense(bug_vecs[pair.bug_idx]);
                ae_samples.push_back({dense, dense});
            }
            if (seen_units.insert(pair.unit_idx).second) {
                auto dense = to_dense(unit_vecs[pair.unit_idx]);
                ae_samples.push_back({dense, dense});
            }
        }
    }
    net_train(model.autoencoder, ae_samples, LossKind::Mse, config.ae_epochs,
              config.batch_size, config.ae_rate, config.seed + 1);

    std::vector<TrainSample> rel_samples;
    for (const RelevancyPair& pair : balanced) {
        std::vector<double> x = model.encode(bug_vecs[pair.bug_idx]);
        std::vector<double> code = model.encode(unit_vecs[pair.unit_idx]);
        x.insert(x.end(), code.begin(), code.end());
        rel_samples.push_back({std::move(x), {pair.positive ? 1.0 : 0.0}});
    }
    net_train(model.relnet, rel_samples, LossKind::Bce, config.rel_epochs,
              config.batch_size, config.rel_rate, config.seed + 3);
    return model;
}

// Scores one (bug, unit) pair with a trained model. Pure: the model is never
// mutated.
inline double relevancy_score(const RelevancyModel& model, const BugReport& bug,
                              const SourceUnit& unit,
                              const std::unordered_set<std::string>& stopwords =
                                  default_stopwords()) {
    SparseVec bug_vec = tfidf(preprocess(bug.text(), stopwords), model.vocab);
    SparseVec code_vec =
        tfidf(preprocess_tokens(unit.characteristics.all_tokens(), stopwords), model.vocab);
    return model.score_vectors(bug_vec, code_vec);
}

}  // namespace drast
