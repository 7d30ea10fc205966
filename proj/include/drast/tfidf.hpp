#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "drast/error.hpp"
#include "drast/text.hpp"

namespace drast {

// Shared term space. Indices are dense and assigned in first-seen order, so
// the same document stream always produces the same mapping.
struct Vocabulary {
    std::unordered_map<std::string, std::size_t> index;
    std::vector<std::string> terms;                       // index -> term
    std::vector<std::size_t> document_frequency;          // index -> df
    std::size_t document_count = 0;

    std::size_t size() const { return terms.size(); }
};

inline Vocabulary build_vocabulary(const std::vector<TokenList>& documents) {
    if (documents.empty())
        throw Error(errc::empty_corpus, "no documents to build a vocabulary from");
    Vocabulary vocab;
    vocab.document_count = documents.size();
    std::vector<std::size_t> seen_in;  // index -> last document that counted it
    for (std::size_t d = 0; d < documents.size(); ++d) {
        for (const std::string& term : documents[d]) {
            auto [it, inserted] = vocab.index.try_emplace(term, vocab.terms.size());
            if (inserted) {
                vocab.terms.push_back(term);
                vocab.document_frequency.push_back(0);
                seen_in.push_back(static_cast<std::size_t>(-1));
            }
            std::size_t idx = it->second;
            if (seen_in[idx] != d) {
                seen_in[idx] = d;
                ++vocab.document_frequency[idx];
            }
        }
    }
    return vocab;
}

struct SparseVec {
    std::size_t dimension = 0;
    std::vector<std::pair<std::size_t, double>> entries;  // strictly increasing indices

    double norm() const {
        double s = 0;
        for (const auto& [i, w] : entries) s += w * w;
        return std::sqrt(s);
    }
    bool zero() const { return entries.empty(); }
};

// Log tf, idf = ln(N/df), L2-normalized. Out-of-vocabulary terms are ignored
// and an all-zero vector stays all-zero.
inline SparseVec tfidf(const TokenList& tokens, const Vocabulary& vocab) {
    std::map<std::size_t, std::size_t> counts;  // ordered -> sorted entries
    for (const std::string& term : tokens) {
        auto it = vocab.index.find(term);
        if (it != vocab.index.end()) ++counts[it->second];
    }
    SparseVec vec;
    vec.dimension = vocab.size();
    double sumsq = 0;
    for (const auto& [idx, count] : counts) {
        double tf = 1.0 + std::log(static_cast<double>(count));
        double idf = std::log(static_cast<double>(vocab.document_count) /
                              static_cast<double>(vocab.document_frequency[idx]));
        double w = tf * idf;
        if (w != 0.0) {
            vec.entries.emplace_back(idx, w);
            sumsq += w * w;
        }
    }
    if (sumsq > 0) {
        double inv = 1.0 / std::sqrt(sumsq);
        for (auto& [idx, w] : vec.entries) w *= inv;
    }
    return vec;
}

inline double cosine(const SparseVec& u, const SparseVec& v) {
    if (u.dimension != v.dimension)
        throw Error(errc::dimension_mismatch,
                    "cosine of vectors with dimensions " +
                        std::to_string(u.dimension) + " and " +
                        std::to_string(v.dimension));
    double nu = u.norm(), nv = v.norm();
    if (nu == 0.0 || nv == 0.0) return 0.0;
    double dot = 0;
    std::size_t i = 0, j = 0;
    while (i < u.entries.size() && j < v.entries.size()) {
        if (u.entries[i].first < v.entries[j].first) ++i;
        else if (u.entries[i].first > v.entries[j].first) ++j;
        else dot += u.entries[i++].second * v.entries[j++].second;
    }
    return dot / (nu * nv);
}

// Densify for feeding networks.
inline std::vector<double> to_dense(const SparseVec& v) {
    std::vector<double> out(v.dimension, 0.0);
    for (const auto& [i, w] : v.entries) out[i] = w;
    return out;
}

}  // namespace drast
