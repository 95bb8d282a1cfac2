#pragma once

#include <cmath>
#include <Eigen/Dense>

#include "drift/projection/points.hpp"

namespace drift::projection {

struct PcaResult {
    Coordinates coordinates;
    std::array<Vector, 2> components;   // unit loadings, largest-magnitude entry positive
    std::array<double, 2> variance{};   // explained variance per component, non-increasing
    Vector mean;
};

/// Projection of mean-centered data onto its top-2 principal axes.
inline PcaResult pca_2d(const PointSet& points) {
    const auto dim = common_dimension(points);
    if (points.size() < 2)
        fail(ErrorKind::config, "PCA needs at least 2 points");
    if (dim < 2)
        fail(ErrorKind::config, "PCA needs at least 2 dimensions");
    const auto n = points.size();

    Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t d = 0; d < dim; ++d)
            x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d)) = points[i][d];
    const Eigen::RowVectorXd mean = x.colwise().mean();
    x.rowwise() -= mean;
    const Eigen::MatrixXd cov = (x.transpose() * x) / static_cast<double>(n - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success)
        fail(ErrorKind::undefined, "PCA eigendecomposition failed");

    PcaResult r;
    r.mean.assign(mean.data(), mean.data() + dim);
    const auto& vals = solver.eigenvalues();
    const auto& vecs = solver.eigenvectors();
    for (int c = 0; c < 2; ++c) {
        const auto col = static_cast<Eigen::Index>(dim) - 1 - c;
        Eigen::VectorXd v = vecs.col(col);
        Eigen::Index arg = 0;
        v.cwiseAbs().maxCoeff(&arg);
        if (v(arg) < 0.0)
            v = -v;
        r.components[static_cast<std::size_t>(c)].assign(v.data(), v.data() + dim);
        r.variance[static_cast<std::size_t>(c)] = std::max(0.0, vals(col));
    }
    r.coordinates.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        for (int c = 0; c < 2; ++c) {
            double s = 0.0;
            for (std::size_t d = 0; d < dim; ++d)
                s += x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d)) *
                     r.components[static_cast<std::size_t>(c)][d];
            r.coordinates[i][static_cast<std::size_t>(c)] = s;
        }
    return r;
}

}  // namespace drift::projection
