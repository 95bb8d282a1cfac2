#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <set>
#include <vector>

#include "drift/embedding/random.hpp"
#include "drift/projection/points.hpp"

namespace drift::projection {

struct ClusteringResult {
    std::size_t k = 0;
    std::vector<int> labels;
    PointSet centroids;
    std::optional<double> silhouette;  // set when 2 <= k < n
    double inertia = 0.0;
    std::size_t iterations = 0;
    std::vector<double> inertia_history;  // after each Lloyd update
    std::vector<std::pair<std::size_t, double>> candidate_scores;  // (k, silhouette) from model selection
};

/// Mean over points of (b - a) / max(a, b); singleton clusters score 0.
inline double silhouette(const PointSet& points, const std::vector<int>& labels) {
    common_dimension(points);
    if (points.size() != labels.size())
        fail(ErrorKind::config, "silhouette: one label per point required");
    std::set<int> clusters(labels.begin(), labels.end());
    if (clusters.size() < 2)
        fail(ErrorKind::undefined, "silhouette is undefined for fewer than 2 clusters");
    const std::size_t n = points.size();
    std::vector<int> ids(clusters.begin(), clusters.end());
    std::vector<std::size_t> sizes(ids.size(), 0);
    std::vector<std::size_t> slot(n);
    for (std::size_t i = 0; i < n; ++i) {
        slot[i] = static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), labels[i]) - ids.begin());
        ++sizes[slot[i]];
    }
    double total = 0.0;
    std::vector<double> sums(ids.size());
    for (std::size_t i = 0; i < n; ++i) {
        std::fill(sums.begin(), sums.end(), 0.0);
        for (std::size_t j = 0; j < n; ++j)
            if (j != i)
                sums[slot[j]] += std::sqrt(squared_distance(points[i], points[j]));
        if (sizes[slot[i]] <= 1)
            continue;
        const double a = sums[slot[i]] / static_cast<double>(sizes[slot[i]] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < ids.size(); ++c)
            if (c != slot[i])
                b = std::min(b, sums[c] / static_cast<double>(sizes[c]));
        const double m = std::max(a, b);
        total += m > 0.0 ? (b - a) / m : 0.0;
    }
    return total / static_cast<double>(n);
}

namespace detail {

inline double assign_nearest(const PointSet& points, const PointSet& centroids, std::vector<int>& labels) {
    double inertia = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        int arg = 0;
        for (std::size_t c = 0; c < centroids.size(); ++c) {
            const double d = squared_distance(points[i], centroids[c]);
            if (d < best) {
                best = d;
                arg = static_cast<int>(c);
            }
        }
        labels[i] = arg;
        inertia += best;
    }
    return inertia;
}

inline double inertia_of(const PointSet& points, const PointSet& centroids, const std::vector<int>& labels) {
    double s = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        s += squared_distance(points[i], centroids[static_cast<std::size_t>(labels[i])]);
    return s;
}

inline PointSet kmeans_plus_plus(const PointSet& points, std::size_t k, Rng& rng) {
    const std::size_t n = points.size();
    PointSet centroids;
    centroids.push_back(points[rng.below(n)]);
    std::vector<double> d2(n, std::numeric_limits<double>::infinity());
    while (centroids.size() < k) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            d2[i] = std::min(d2[i], squared_distance(points[i], centroids.back()));
            total += d2[i];
        }
        std::size_t pick = 0;
        if (total <= 0.0) {
            pick = rng.below(n);
        } else {
            const double u = rng.uniform() * total;
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (d2[i] <= 0.0)
                    continue;
                pick = i;
                acc += d2[i];
                if (u < acc)
                    break;
            }
        }
        centroids.push_back(points[pick]);
    }
    return centroids;
}

}  // namespace detail

/// k-means++ seeding, then Lloyd iterations to an assignment fixpoint or max_iters.
/// A cluster that empties keeps its previous centroid.
inline ClusteringResult kmeans(const PointSet& points, std::size_t k, std::uint64_t seed, std::size_t max_iters = 300) {
    const auto dim = common_dimension(points);
    const std::size_t n = points.size();
    if (k < 1)
        fail(ErrorKind::config, "k must be >= 1");
    if (k > n)
        fail(ErrorKind::config, "k = " + std::to_string(k) + " exceeds the " + std::to_string(n) + " points");

    Rng rng(seed);
    ClusteringResult r;
    r.k = k;
    r.centroids = detail::kmeans_plus_plus(points, k, rng);
    r.labels.assign(n, -1);
    std::vector<int> next(n, 0);
    detail::assign_nearest(points, r.centroids, next);
    for (std::size_t it = 0; it < max_iters; ++it) {
        r.labels = next;
        PointSet sums(k, Vector(dim, 0.0));
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto c = static_cast<std::size_t>(r.labels[i]);
            ++counts[c];
            for (std::size_t d = 0; d < dim; ++d)
                sums[c][d] += points[i][d];
        }
        for (std::size_t c = 0; c < k; ++c)
            if (counts[c] > 0)
                for (std::size_t d = 0; d < dim; ++d)
                    r.centroids[c][d] = sums[c][d] / static_cast<double>(counts[c]);
        r.inertia_history.push_back(detail::inertia_of(points, r.centroids, r.labels));
        r.iterations = it + 1;
        detail::assign_nearest(points, r.centroids, next);
        if (next == r.labels)
            break;
    }
    r.inertia = r.inertia_history.back();
    std::set<int> used(r.labels.begin(), r.labels.end());
    if (used.size() >= 2 && used.size() < n)
        r.silhouette = silhouette(points, r.labels);
    return r;
}

/// Runs k-means for every k in [3, max_k] (capped at n - 1) and keeps the best
/// silhouette; ties go to the smaller k.
inline ClusteringResult optimal_k(const PointSet& points, std::size_t max_k, std::uint64_t seed) {
    const std::size_t n = points.size();
    if (n <= 3)
        fail(ErrorKind::insufficient_data, "automatic cluster count needs more than 3 points");
    if (max_k < 3)
        fail(ErrorKind::config, "max_k must be >= 3");
    const std::size_t upper = std::min(max_k, n - 1);
    std::optional<ClusteringResult> best;
    std::vector<std::pair<std::size_t, double>> scores;
    for (std::size_t k = 3; k <= upper; ++k) {
        auto r = kmeans(points, k, seed);
        const double s = r.silhouette.value_or(-1.0);
        scores.emplace_back(k, s);
        if (!best || s > best->silhouette.value_or(-1.0))
            best = std::move(r);
    }
    best->candidate_scores = std::move(scores);
    return *best;
}

}  // namespace drift::projection
