#pragma once

// Acceleration of a word pair between two years: the change in their cosine
// similarity, positive when the pair converges.

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "drift/embedding/similarity.hpp"
#include "drift/embedding/temporal_model.hpp"

namespace drift::analytics {

struct AccelerationEntry {
    std::string word_a;  // word_a <= word_b
    std::string word_b;
    int from_year = 0;
    int to_year = 0;
    double similarity_from = 0.0;
    double similarity_to = 0.0;
    double value = 0.0;
};

inline double pair_similarity(const embedding::TemporalModel& model, const std::string& a, const std::string& b,
                              int year) {
    if (a == b) {
        model.embedding_of(a, year);  // vocabulary and year checks
        return 1.0;
    }
    return embedding::word_similarity(model, a, b, year);
}

/// sim(to_year) - sim(from_year) for the unordered pair.
inline AccelerationEntry acceleration_between(const embedding::TemporalModel& model, const std::string& wi,
                                              const std::string& wj, int from_year, int to_year) {
    AccelerationEntry e;
    e.word_a = std::min(wi, wj);
    e.word_b = std::max(wi, wj);
    e.from_year = from_year;
    e.to_year = to_year;
    e.similarity_from = pair_similarity(model, e.word_a, e.word_b, from_year);
    e.similarity_to = pair_similarity(model, e.word_a, e.word_b, to_year);
    e.value = e.similarity_to - e.similarity_from;
    return e;
}

/// Acceleration over the adjacent span t -> t+1.
inline AccelerationEntry acceleration(const embedding::TemporalModel& model, const std::string& wi,
                                      const std::string& wj, int t) {
    return acceleration_between(model, wi, wj, t, t + 1);
}

/// Splits a word list into unique in-vocabulary words (input order) and OOV warnings.
inline std::vector<std::string> usable_words(const embedding::TemporalModel& model,
                                             const std::vector<std::string>& words,
                                             std::vector<std::string>& oov) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto& w : words) {
        if (!seen.insert(w).second)
            continue;
        if (model.vocabulary().contains(w))
            out.push_back(w);
        else
            oov.push_back(w);
    }
    return out;
}

struct AccelerationRanking {
    std::vector<AccelerationEntry> pairs;
    std::vector<std::string> oov;
};

/// Top k_acc unordered keyword pairs by acceleration over t -> t+1, descending;
/// equal values ordered by (word_a, word_b).
inline AccelerationRanking top_accelerated_pairs(const embedding::TemporalModel& model,
                                                 const std::vector<std::string>& keywords, int t, std::size_t k_acc) {
    AccelerationRanking r;
    auto words = usable_words(model, keywords, r.oov);
    model.year_model(t);
    model.year_model(t + 1);
    std::sort(words.begin(), words.end());
    for (std::size_t i = 0; i < words.size(); ++i)
        for (std::size_t j = i + 1; j < words.size(); ++j)
            r.pairs.push_back(acceleration(model, words[i], words[j], t));
    std::stable_sort(r.pairs.begin(), r.pairs.end(), [](const auto& a, const auto& b) {
        if (a.value != b.value)
            return a.value > b.value;
        if (a.word_a != b.word_a)
            return a.word_a < b.word_a;
        return a.word_b < b.word_b;
    });
    if (r.pairs.size() > k_acc)
        r.pairs.resize(k_acc);
    return r;
}

struct AccelerationHeatmap {
    std::vector<std::string> terms;
    int from_year = 0;
    int to_year = 0;
    std::vector<std::vector<double>> values;  // values[i][j] = sim_to(i,j) - sim_from(i,j)
    std::vector<std::string> oov;
};

/// Pairwise acceleration between two arbitrary years; symmetric with a zero diagonal.
inline AccelerationHeatmap acceleration_heatmap(const embedding::TemporalModel& model,
                                                const std::vector<std::string>& keywords, int t1, int t2) {
    AccelerationHeatmap h;
    h.terms = usable_words(model, keywords, h.oov);
    h.from_year = t1;
    h.to_year = t2;
    model.year_model(t1);
    model.year_model(t2);
    const std::size_t n = h.terms.size();
    h.values.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = acceleration_between(model, h.terms[i], h.terms[j], t1, t2).value;
            h.values[i][j] = v;
            h.values[j][i] = v;
        }
    return h;
}

}  // namespace drift::analytics
