#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "drift/analytics/acceleration.hpp"
#include "drift/embedding/similarity.hpp"
#include "drift/embedding/temporal_model.hpp"

namespace drift::analytics {

enum class DistanceMetric { euclidean, cosine };

inline std::string_view to_string(DistanceMetric m) {
    return m == DistanceMetric::euclidean ? "euclidean" : "cosine";
}

inline std::optional<DistanceMetric> parse_distance_metric(std::string_view s) {
    if (s == "euclidean") return DistanceMetric::euclidean;
    if (s == "cosine") return DistanceMetric::cosine;
    return std::nullopt;
}

/// Euclidean distance, or cosine distance 1 - cos clamped to [0, 2]. Identical vectors give exactly 0.
inline double vector_distance(std::span<const double> u, std::span<const double> v, DistanceMetric metric) {
    if (std::equal(u.begin(), u.end(), v.begin(), v.end()))
        return 0.0;
    if (metric == DistanceMetric::euclidean) {
        double s = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i)
            s += (u[i] - v[i]) * (u[i] - v[i]);
        return std::sqrt(s);
    }
    return std::clamp(1.0 - embedding::cosine_similarity(u, v), 0.0, 2.0);
}

struct DriftEntry {
    std::string word;
    int year_from = 0;
    int year_to = 0;
    double distance = 0.0;
    DistanceMetric metric = DistanceMetric::euclidean;
};

struct DriftRanking {
    std::vector<DriftEntry> entries;  // descending by distance
    std::vector<std::string> oov;
};

/// Distance between each word's year-y1 and year-y2 vectors, most drifted first.
inline DriftRanking semantic_drift(const embedding::TemporalModel& model, const std::vector<std::string>& words, int y1,
                                   int y2, DistanceMetric metric) {
    model.year_model(y1);
    model.year_model(y2);
    DriftRanking r;
    const auto usable = usable_words(model, words, r.oov);
    if (usable.empty())
        fail(ErrorKind::out_of_vocabulary, "none of the requested words is in the vocabulary");
    for (const auto& w : usable)
        r.entries.push_back({w, y1, y2,
                             vector_distance(model.embedding_of(w, y1), model.embedding_of(w, y2), metric), metric});
    std::stable_sort(r.entries.begin(), r.entries.end(), [](const auto& a, const auto& b) {
        if (a.distance != b.distance)
            return a.distance > b.distance;
        return a.word < b.word;
    });
    return r;
}

struct AnchoredPoint {
    std::string term;
    int year = 0;
    double similarity = 1.0;  // to the anchor; 1 for the anchor itself
    bool anchor = false;
    std::vector<double> vector;
};

struct DriftNeighborhood {
    std::string word;
    int year_from = 0;
    int year_to = 0;
    std::vector<AnchoredPoint> from_points;  // anchor first, then k_sim neighbors in year_from
    std::vector<AnchoredPoint> to_points;
};

/// The word's two year-vectors, each with its k_sim nearest neighbors inside that year.
inline DriftNeighborhood drift_neighborhood(const embedding::TemporalModel& model, const std::string& word, int y1,
                                            int y2, std::size_t k_sim) {
    DriftNeighborhood n;
    n.word = word;
    n.year_from = y1;
    n.year_to = y2;
    auto collect = [&](int year, std::vector<AnchoredPoint>& out) {
        auto anchor = model.embedding_of(word, year);
        out.push_back({word, year, 1.0, true, {anchor.begin(), anchor.end()}});
        if (k_sim == 0)
            return;
        for (const auto& nb : embedding::most_similar(model, anchor, {year}, k_sim, {word})) {
            auto v = model.embedding_of(nb.term, year);
            out.push_back({nb.term, year, nb.similarity, false, {v.begin(), v.end()}});
        }
    };
    collect(y1, n.from_points);
    collect(y2, n.to_points);
    return n;
}

}  // namespace drift::analytics
