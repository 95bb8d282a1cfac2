#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "drift/embedding/temporal_model.hpp"
#include "drift/error.hpp"

namespace drift::embedding {

inline double cosine_similarity(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size())
        fail(ErrorKind::config, "cosine similarity of vectors with different dimensions");
    const double nu = norm(u);
    const double nv = norm(v);
    if (nu == 0.0 || nv == 0.0)
        fail(ErrorKind::undefined, "cosine similarity is undefined for a zero vector");
    return std::clamp(dot(u, v) / (nu * nv), -1.0, 1.0);
}

struct Neighbor {
    std::string term;
    int year = 0;
    double similarity = 0.0;
};

/// Top-k (term, year) pairs by cosine similarity to `query` over the given years.
/// Ties are broken by ascending year, then term.
inline std::vector<Neighbor> most_similar(const TemporalModel& model, std::span<const double> query,
                                          const std::vector<int>& years, std::size_t k,
                                          const std::set<std::string>& exclude = {}) {
    if (k == 0)
        fail(ErrorKind::config, "k must be >= 1");
    const double qn = norm(query);
    if (qn == 0.0)
        fail(ErrorKind::undefined, "query vector is zero");
    const auto& vocab = model.vocabulary();

    std::vector<Neighbor> all;
    for (int year : years) {
        const auto& m = model.year_model(year).context_matrix;
        for (std::size_t id = 0; id < vocab.size(); ++id) {
            const auto& term = vocab.term(id);
            if (exclude.contains(term))
                continue;
            auto row = m.row(id);
            const double rn = norm(row);
            if (rn == 0.0)
                continue;
            all.push_back({term, year, std::clamp(dot(query, row) / (qn * rn), -1.0, 1.0)});
        }
    }
    auto better = [](const Neighbor& a, const Neighbor& b) {
        if (a.similarity != b.similarity)
            return a.similarity > b.similarity;
        if (a.year != b.year)
            return a.year < b.year;
        return a.term < b.term;
    };
    const std::size_t keep = std::min(k, all.size());
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep), all.end(), better);
    all.resize(keep);
    return all;
}

/// Cosine similarity of two words inside one year's space.
inline double word_similarity(const TemporalModel& model, const std::string& a, const std::string& b, int year) {
    return cosine_similarity(model.embedding_of(a, year), model.embedding_of(b, year));
}

}  // namespace drift::embedding
