#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "drast/corpus.hpp"
#include "drast/error.hpp"
#include "drast/tfidf.hpp"

namespace drast {

struct BugReport {
    std::string id;
    std::string summary;
    std::string description;
    std::int64_t reported_at = 0;  // epoch seconds, UTC
    std::vector<std::string> fixed_files;
    bool trainable = false;  // has ground-truth fixed files

    std::string text() const { return summary + " " + description; }
};

struct FixEvent {
    std::string bug_id;
    std::int64_t at = 0;
    std::vector<std::string> files;
};

// Chronological record of which files past bugs touched.
using FixHistory = std::vector<FixEvent>;

inline FixHistory history_from_bugs(std::span<const BugReport> bugs) {
    FixHistory history;
    for (const BugReport& bug : bugs)
        if (bug.trainable && !bug.fixed_files.empty())
            history.push_back({bug.id, bug.reported_at, bug.fixed_files});
    std::stable_sort(history.begin(), history.end(),
                     [](const FixEvent& a, const FixEvent& b) {
                         if (a.at != b.at) return a.at < b.at;
                         return a.bug_id < b.bug_id;
                     });
    return history;
}

// The six scores for one (bug, file) pair plus its label.
struct FeatureRow {
    std::string bug_id;
    std::string file;
    std::array<double, 6> f{};  // f1 textual, f2 collab, f3 name, f4 recency,
                                // f5 frequency, f6 dnn relevancy
    int label = 0;
};

// ---------------------------------------------------------------------------
// Corpus-wide text statistics shared by all feature computations: one
// vocabulary over bug reports, code blocks and code characteristics, plus
// cached tf-idf vectors and block lengths.
// ---------------------------------------------------------------------------
struct UnitStats {
    std::string path;
    std::vector<SparseVec> block_vecs;
    std::vector<std::size_t> block_lens;  // raw token counts
    SparseVec chars_vec;
};

struct CorpusStats {
    Vocabulary vocab;
    std::vector<UnitStats> units;  // corpus order (sorted by path)
    std::unordered_map<std::string, std::size_t> unit_index;
    std::unordered_map<std::string, SparseVec> bug_vecs;
    std::size_t min_block_len = 0;
    std::size_t max_block_len = 0;

    static CorpusStats build(const Corpus& corpus, std::span<const BugReport> bugs,
                             const std::unordered_set<std::string>& stopwords =
                                 default_stopwords()) {
        CorpusStats stats;
        std::vector<TokenList> docs;
        std::vector<TokenList> bug_docs;
        std::vector<std::vector<TokenList>> block_docs(corpus.units.size());
        std::vector<TokenList> char_docs(corpus.units.size());

        for (const BugReport& bug : bugs) {
            bug_docs.push_back(preprocess(bug.text(), stopwords));
            docs.push_back(bug_docs.back());
        }
        for (std::size_t u = 0; u < corpus.units.size(); ++u) {
            const SourceUnit& unit = corpus.units[u];
            for (const CodeBlock& block : unit.blocks) {
                block_docs[u].push_back(preprocess_tokens(block.tokens, stopwords));
                docs.push_back(block_docs[u].back());
            }
            char_docs[u] = preprocess_tokens(unit.characteristics.all_tokens(), stopwords);
            docs.push_back(char_docs[u]);
        }
        if (docs.empty())
            throw Error(errc::empty_corpus, "no bugs and no units to index");
        stats.vocab = build_vocabulary(docs);

        for (std::size_t b = 0; b < bug_docs.size(); ++b)
            stats.bug_vecs.emplace(bugs[b].id, tfidf(bug_docs[b], stats.vocab));

        bool any_block = false;
        for (std::size_t u = 0; u < corpus.units.size(); ++u) {
            const SourceUnit& unit = corpus.units[u];
            UnitStats us;
            us.path = unit.path;
            for (std::size_t k = 0; k < unit.blocks.size(); ++k) {
                us.block_vecs.push_back(tfidf(block_docs[u][k], stats.vocab));
                std::size_t len = unit.blocks[k].tokens.size();
                us.block_lens.push_back(len);
                if (!any_block) {
                    stats.min_block_len = stats.max_block_len = len;
                    any_block = true;
                } else {
                    stats.min_block_len = std::min(stats.min_block_len, len);
                    stats.max_block_len = std::max(stats.max_block_len, len);
                }
            }
            us.chars_vec = tfidf(char_docs[u], stats.vocab);
            stats.unit_index.emplace(unit.path, stats.units.size());
            stats.units.push_back(std::move(us));
        }
        return stats;
    }

    const UnitStats* unit(const std::string& path) const {
        auto it = unit_index.find(path);
        return it == unit_index.end() ? nullptr : &units[it->second];
    }
};

// ---------------------------------------------------------------------------
// Feature 1: rVSM textual similarity. Longer blocks score higher through a
// logistic factor over the min-max-normalized block length.
// ---------------------------------------------------------------------------
inline double rvsm_length_factor(std::size_t len, std::size_t min_len,
                                 std::size_t max_len) {
    double n = max_len == min_len
                   ? 0.5
                   : (static_cast<double>(len) - static_cast<double>(min_len)) /
                         (static_cast<double>(max_len) - static_cast<double>(min_len));
    return 1.0 / (1.0 + std::exp(-n));
}

inline double rvsm_similarity(const SparseVec& query, const SparseVec& block,
                              std::size_t block_len, std::size_t min_len,
                              std::size_t max_len) {
    double cos = std::max(0.0, cosine(query, block));
    return rvsm_length_factor(block_len, min_len, max_len) * cos;
}

// Maximum rVSM score over the unit's blocks; a blockless unit scores 0.
inline double textual_similarity(const SparseVec& bug_vec, const UnitStats& unit,
                                 const CorpusStats& stats) {
    double best = 0.0;
    for (std::size_t k = 0; k < unit.block_vecs.size(); ++k)
        best = std::max(best, rvsm_similarity(bug_vec, unit.block_vecs[k],
                                              unit.block_lens[k], stats.min_block_len,
                                              stats.max_block_len));
    return best;
}

// ---------------------------------------------------------------------------
// Feature 2: collaborative filtering. Similarity to each strictly-earlier bug
// that fixed this file, normalized by how many files that fix touched.
// ---------------------------------------------------------------------------
inline double collaborative_filtering(
    const BugReport& bug, const std::string& file, const FixHistory& history,
    const std::unordered_map<std::string, SparseVec>& bug_vecs) {
    auto self = bug_vecs.find(bug.id);
    if (self == bug_vecs.end()) return 0.0;
    double score = 0.0;
    for (const FixEvent& event : history) {
        if (event.at >= bug.reported_at) break;  // history is chronological
        if (event.bug_id == bug.id) continue;
        if (std::find(event.files.begin(), event.files.end(), file) == event.files.end())
            continue;
        auto prior = bug_vecs.find(event.bug_id);
        if (prior == bug_vecs.end()) continue;
        score += cosine(self->second, prior->second) /
                 static_cast<double>(event.files.size());
    }
    return score;
}

// ---------------------------------------------------------------------------
// Feature 3: similarity between the bug text and the unit's code
// characteristics (no length factor).
// ---------------------------------------------------------------------------
inline double feature_name_similarity(const SparseVec& bug_vec,
                                      const UnitStats& unit) {
    return std::max(0.0, cosine(bug_vec, unit.chars_vec));
}

// ---------------------------------------------------------------------------
// Features 4 and 5: fix recency and frequency.
// ---------------------------------------------------------------------------
namespace time_detail {

// Civil date from epoch days (Howard Hinnant's algorithm), UTC.
struct YearMonth {
    int year = 0;
    int month = 0;  // 1..12
};

inline YearMonth civil_year_month(std::int64_t epoch_seconds) {
    std::int64_t z = epoch_seconds / 86400;
    if (epoch_seconds % 86400 < 0) --z;
    z += 719468;
    std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    std::int64_t doe = z - era * 146097;
    std::int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    std::int64_t y = yoe + era * 400;
    std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    std::int64_t mp = (5 * doy + 2) / 153;
    std::int64_t m = mp < 10 ? mp + 3 : mp - 9;
    y += (m <= 2);
    return {static_cast<int>(y), static_cast<int>(m)};
}

inline int month_difference(std::int64_t later, std::int64_t earlier) {
    YearMonth a = civil_year_month(later);
    YearMonth b = civil_year_month(earlier);
    return (a.year - b.year) * 12 + (a.month - b.month);
}

}  // namespace time_detail

// 1/(delta_months + 1) against the most recent strictly-earlier fix of the
// file; 0 when the file has never been fixed.
inline double bug_fixing_recency(const BugReport& bug, const std::string& file,
                                 const FixHistory& history) {
    const FixEvent* latest = nullptr;
    for (const FixEvent& event : history) {
        if (event.at >= bug.reported_at) break;
        if (event.bug_id == bug.id) continue;
        if (std::find(event.files.begin(), event.files.end(), file) != event.files.end())
            latest = &event;
    }
    if (!latest) return 0.0;
    int delta = time_detail::month_difference(bug.reported_at, latest->at);
    if (delta < 0) delta = 0;
    return 1.0 / (static_cast<double>(delta) + 1.0);
}

// Count of strictly-earlier bugs whose fix touched the file.
inline int bug_fixing_frequency(const BugReport& bug, const std::string& file,
                                const FixHistory& history) {
    int count = 0;
    for (const FixEvent& event : history) {
        if (event.at >= bug.reported_at) break;
        if (event.bug_id == bug.id) continue;
        if (std::find(event.files.begin(), event.files.end(), file) != event.files.end())
            ++count;
    }
    return count;
}

}  // namespace drast
