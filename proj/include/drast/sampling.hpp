#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "drast/error.hpp"
#include "drast/rng.hpp"

namespace drast {

// Fixed-width rows with 0/1 labels, the shape the final ranker trains on.
struct LabeledMatrix {
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;

    std::size_t size() const { return rows.size(); }
    std::size_t count(int label) const {
        std::size_t n = 0;
        for (int l : labels) n += (l == label);
        return n;
    }
};

enum class ResampleMode { Over, Under };

namespace sampling_detail {

inline double squared_distance(const std::vector<double>& a,
                               const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

inline void validate(const LabeledMatrix& data) {
    if (data.rows.size() != data.labels.size())
        throw Error(errc::shape_mismatch, "rows and labels differ in length");
    if (data.rows.empty()) return;
    std::size_t width = data.rows[0].size();
    for (const auto& row : data.rows) {
        if (row.size() != width)
            throw Error(errc::shape_mismatch, "ragged labeled matrix");
        for (double v : row)
            if (!std::isfinite(v))
                throw Error(errc::degenerate_data, "non-finite feature value");
    }
}

// Label of the class with fewer rows; -1 on a tie.
inline int minority_label(const LabeledMatrix& data) {
    std::size_t zeros = data.count(0), ones = data.count(1);
    if (zeros == ones) return -1;
    return zeros < ones ? 0 : 1;
}

// Indices of a's k nearest neighbors among `pool` (excluding a itself),
// distance ties broken by the lower row index.
inline std::vector<std::size_t> k_nearest(const std::vector<std::vector<double>>& rows,
                                          const std::vector<std::size_t>& pool,
                                          std::size_t self, std::size_t k) {
    std::vector<std::pair<double, std::size_t>> dist;
    for (std::size_t i : pool) {
        if (i == self) continue;
        dist.emplace_back(squared_distance(rows[self], rows[i]), i);
    }
    std::sort(dist.begin(), dist.end());
    if (dist.size() > k) dist.resize(k);
    std::vector<std::size_t> out;
    for (const auto& [d, i] : dist) out.push_back(i);
    return out;
}

}  // namespace sampling_detail

// SMOTE: synthesizes minority rows on segments between a random minority
// sample and one of its k nearest minority neighbors until the classes are
// balanced. Originals are always retained.
inline LabeledMatrix smote(const LabeledMatrix& data, std::size_t k, std::uint64_t seed) {
    sampling_detail::validate(data);
    if (k == 0) throw Error(errc::invalid_argument, "k must be at least 1");
    int minority = sampling_detail::minority_label(data);
    if (minority < 0) return data;  // already balanced

    std::vector<std::size_t> minority_rows;
    for (std::size_t i = 0; i < data.size(); ++i)
        if (data.labels[i] == minority) minority_rows.push_back(i);
    if (minority_rows.size() < 2)
        throw Error(errc::too_few_minority,
                    "SMOTE needs at least 2 minority rows, found " +
                        std::to_string(minority_rows.size()));

    std::size_t deficit = data.count(1 - minority) - minority_rows.size();
    std::size_t k_eff = std::min(k, minority_rows.size() - 1);

    // Precompute each minority row's neighbor list once.
    std::vector<std::vector<std::size_t>> neighbors(minority_rows.size());
    for (std::size_t a = 0; a < minority_rows.size(); ++a)
        neighbors[a] = sampling_detail::k_nearest(data.rows, minority_rows,
                                                  minority_rows[a], k_eff);

    LabeledMatrix out = data;
    Rng rng(seed);
    for (std::size_t n = 0; n < deficit; ++n) {
        std::size_t a = rng.uniform_index(minority_rows.size());
        const auto& nbrs = neighbors[a];
        std::size_t b = nbrs[rng.uniform_index(nbrs.size())];
        double lambda = rng.uniform();
        std::vector<double> synthetic = data.rows[minority_rows[a]];
        for (std::size_t j = 0; j < synthetic.size(); ++j)
            synthetic[j] += lambda * (data.rows[b][j] - synthetic[j]);
        out.rows.push_back(std::move(synthetic));
        out.labels.push_back(minority);
    }
    return out;
}

// Random over-sampling duplicates uniformly chosen minority rows; random
// under-sampling deletes uniformly chosen majority rows. Both stop at balance.
inline LabeledMatrix random_resample(const LabeledMatrix& data, ResampleMode mode,
                                     std::uint64_t seed) {
    sampling_detail::validate(data);
    if (data.count(0) == 0 || data.count(1) == 0)
        throw Error(errc::empty_class, "both classes must be nonempty");
    int minority = sampling_detail::minority_label(data);
    if (minority < 0) return data;  // balanced
    int majority = 1 - minority;

    Rng rng(seed);
    if (mode == ResampleMode::Over) {
        std::vector<std::size_t> minority_rows;
        for (std::size_t i = 0; i < data.size(); ++i)
            if (data.labels[i] == minority) minority_rows.push_back(i);
        std::size_t deficit = data.count(majority) - minority_rows.size();
        LabeledMatrix out = data;
        for (std::size_t n = 0; n < deficit; ++n) {
            std::size_t pick = minority_rows[rng.uniform_index(minority_rows.size())];
            out.rows.push_back(data.rows[pick]);
            out.labels.push_back(minority);
        }
        return out;
    }

    // Under: choose which majority rows survive, keeping original order.
    std::vector<std::size_t> majority_rows;
    for (std::size_t i = 0; i < data.size(); ++i)
        if (data.labels[i] == majority) majority_rows.push_back(i);
    std::size_t keep = data.count(minority);
    rng.shuffle(majority_rows);
    majority_rows.resize(keep);
    std::vector<bool> survives(data.size(), false);
    for (std::size_t i : majority_rows) survives[i] = true;
    LabeledMatrix out;
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (data.labels[i] == minority || survives[i]) {
            out.rows.push_back(data.rows[i]);
            out.labels.push_back(data.labels[i]);
        }
    }
    return out;
}

// TOMEK links: opposite-label pairs that are each other's 1-nearest neighbor
// (ties on distance broken by the lower row index). The majority-class member
// of each link is removed; with equal class counts there is no majority and
// the data passes through unchanged.
inline LabeledMatrix tomek_links(const LabeledMatrix& data) {
    sampling_detail::validate(data);
    if (data.count(0) == 0 || data.count(1) == 0)
        throw Error(errc::empty_class, "both classes must be nonempty");
    int minority = sampling_detail::minority_label(data);
    if (minority < 0) return data;
    int majority = 1 - minority;

    // 1-nearest neighbor over all rows, lowest index wins ties.
    std::vector<std::size_t> nn(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_j = i;
        for (std::size_t j = 0; j < data.size(); ++j) {
            if (j == i) continue;
            double d = sampling_detail::squared_distance(data.rows[i], data.rows[j]);
            if (d < best) {
                best = d;
                best_j = j;
            }
        }
        nn[i] = best_j;
    }

    std::vector<bool> remove(data.size(), false);
    for (std::size_t i = 0; i < data.size(); ++i) {
        std::size_t j = nn[i];
        if (nn[j] == i && data.labels[i] != data.labels[j]) {
            std::size_t member = data.labels[i] == majority ? i : j;
            remove[member] = true;
        }
    }

    LabeledMatrix out;
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (!remove[i]) {
            out.rows.push_back(data.rows[i]);
            out.labels.push_back(data.labels[i]);
        }
    }
    return out;
}

}  // namespace drast
