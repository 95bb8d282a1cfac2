#pragma once

#include <map>
#include <string>
#include <vector>

#include "drift/analytics/acceleration.hpp"
#include "drift/embedding/temporal_model.hpp"
#include "drift/projection/kmeans.hpp"
#include "drift/projection/pca.hpp"
#include "drift/projection/tsne.hpp"

namespace drift::projection {

struct ClusterTrackOptions {
    std::size_t clusters = 0;  // 0 selects the count by silhouette
    std::size_t max_clusters = 10;
    std::uint64_t seed = 1;
    ProjectionMethod method = ProjectionMethod::pca;
    double perplexity = 30.0;
    std::size_t tsne_iterations = 1000;
};

struct YearClusters {
    int year = 0;
    std::vector<ProjectedPoint> points;
    ClusteringResult clustering;
};

struct ClusterTrack {
    std::map<int, YearClusters> years;
    std::vector<std::string> oov;
};

inline Coordinates project_2d(const PointSet& points, ProjectionMethod method, std::uint64_t seed, double perplexity,
                              std::size_t tsne_iterations) {
    if (method == ProjectionMethod::pca)
        return pca_2d(points).coordinates;
    TsneOptions t;
    t.seed = seed;
    t.perplexity = perplexity;
    t.iterations = tsne_iterations;
    return tsne_2d(points, t).coordinates;
}

/// Clusters the keywords independently inside every trained year of [from, to] and projects each year to 2-D.
inline ClusterTrack track_clusters(const embedding::TemporalModel& model, const std::vector<std::string>& keywords,
                                   int from, int to, const ClusterTrackOptions& opts) {
    ClusterTrack track;
    const auto words = analytics::usable_words(model, keywords, track.oov);
    if (words.empty())
        fail(ErrorKind::out_of_vocabulary, "none of the requested words is in the vocabulary");
    for (int year : model.years()) {
        if (year < from || year > to)
            continue;
        PointSet vectors;
        for (const auto& w : words) {
            auto v = model.embedding_of(w, year);
            vectors.emplace_back(v.begin(), v.end());
        }
        YearClusters yc;
        yc.year = year;
        yc.clustering = opts.clusters == 0 ? optimal_k(vectors, opts.max_clusters, opts.seed)
                                           : kmeans(vectors, opts.clusters, opts.seed);
        const auto coords = project_2d(vectors, opts.method, opts.seed, opts.perplexity, opts.tsne_iterations);
        for (std::size_t i = 0; i < words.size(); ++i)
            yc.points.push_back({words[i], year, coords[i][0], coords[i][1], yc.clustering.labels[i]});
        track.years.emplace(year, std::move(yc));
    }
    if (track.years.empty())
        fail(ErrorKind::range, "no trained year in [" + std::to_string(from) + ", " + std::to_string(to) + "]");
    return track;
}

}  // namespace drift::projection
