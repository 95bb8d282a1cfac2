#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "drift/error.hpp"

namespace drift::projection {

using Vector = std::vector<double>;
using PointSet = std::vector<Vector>;
using Coordinates = std::vector<std::array<double, 2>>;

struct ProjectedPoint {
    std::string term;
    int year = 0;
    double x = 0.0;
    double y = 0.0;
    std::optional<int> cluster_id;

    std::string label() const { return term + "@" + std::to_string(year); }
};

enum class ProjectionMethod { pca, tsne };

inline std::string_view to_string(ProjectionMethod m) { return m == ProjectionMethod::pca ? "pca" : "tsne"; }

inline std::optional<ProjectionMethod> parse_projection_method(std::string_view s) {
    if (s == "pca") return ProjectionMethod::pca;
    if (s == "tsne" || s == "t-sne") return ProjectionMethod::tsne;
    return std::nullopt;
}

inline std::size_t common_dimension(const PointSet& points) {
    if (points.empty())
        return 0;
    const auto dim = points.front().size();
    for (const auto& p : points)
        if (p.size() != dim)
            fail(ErrorKind::config, "points have inconsistent dimensions");
    return dim;
}

inline double squared_distance(const Vector& a, const Vector& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += (a[i] - b[i]) * (a[i] - b[i]);
    return s;
}

}  // namespace drift::projection
