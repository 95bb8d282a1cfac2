#pragma once

// Exact O(n^2) t-SNE. Gradient descent with momentum, gains and early
// exaggeration; the final tenth of the iterations switches to plain descent
// with backtracking so the KL divergence never increases there.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "drift/embedding/random.hpp"
#include "drift/hash.hpp"
#include "drift/projection/pca.hpp"
#include "drift/projection/points.hpp"

namespace drift::projection {

struct TsneOptions {
    double perplexity = 30.0;
    std::size_t iterations = 1000;
    std::uint64_t seed = 1;
    double learning_rate = 200.0;
    double exaggeration = 12.0;
};

struct TsneResult {
    Coordinates coordinates;
    double perplexity = 0.0;  // after clamping
    std::vector<double> kl_history;  // KL divergence after each iteration
};

namespace detail {

inline std::vector<double> tsne_affinities(const PointSet& points, double perplexity) {
    const std::size_t n = points.size();
    std::vector<double> d2(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            d2[i * n + j] = d2[j * n + i] = squared_distance(points[i], points[j]);

    std::vector<double> p(n * n, 0.0);
    const double target = std::log(perplexity);
    for (std::size_t i = 0; i < n; ++i) {
        double beta = 1.0, lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
        for (int attempt = 0; attempt < 200; ++attempt) {
            double sum = 0.0;
            double min_d = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < n; ++j)
                if (j != i)
                    min_d = std::min(min_d, d2[i * n + j]);
            for (std::size_t j = 0; j < n; ++j) {
                p[i * n + j] = j == i ? 0.0 : std::exp(-beta * (d2[i * n + j] - min_d));
                sum += p[i * n + j];
            }
            double h = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                p[i * n + j] /= sum;
                if (p[i * n + j] > 1e-300)
                    h -= p[i * n + j] * std::log(p[i * n + j]);
            }
            const double diff = h - target;
            if (std::abs(diff) < 1e-5)
                break;
            if (diff > 0) {
                lo = beta;
                beta = std::isinf(hi) ? beta * 2.0 : 0.5 * (beta + hi);
            } else {
                hi = beta;
                beta = std::isinf(lo) ? beta / 2.0 : 0.5 * (beta + lo);
            }
        }
    }
    std::vector<double> sym(n * n, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            sym[i * n + j] = p[i * n + j] + p[j * n + i];
            total += sym[i * n + j];
        }
    for (auto& v : sym)
        v = std::max(v / total, 1e-12);
    for (std::size_t i = 0; i < n; ++i)
        sym[i * n + i] = 0.0;
    return sym;
}

// KL(P || Q) and its gradient at y.
inline double tsne_kl_and_gradient(const std::vector<double>& p, const Coordinates& y, double exaggeration,
                                   Coordinates* grad) {
    const std::size_t n = y.size();
    std::vector<double> num(n * n, 0.0);
    double sum_num = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = y[i][0] - y[j][0], dy = y[i][1] - y[j][1];
            const double v = 1.0 / (1.0 + dx * dx + dy * dy);
            num[i * n + j] = num[j * n + i] = v;
            sum_num += 2.0 * v;
        }
    double kl = 0.0;
    if (grad)
        grad->assign(n, {0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j)
                continue;
            const double q = std::max(num[i * n + j] / sum_num, 1e-300);
            const double pij = p[i * n + j];
            kl += pij * std::log(pij / q);
            if (grad) {
                const double mult = 4.0 * (exaggeration * pij - q) * num[i * n + j];
                (*grad)[i][0] += mult * (y[i][0] - y[j][0]);
                (*grad)[i][1] += mult * (y[i][1] - y[j][1]);
            }
        }
    return kl;
}

inline void center(Coordinates& y) {
    double mx = 0.0, my = 0.0;
    for (const auto& p : y) {
        mx += p[0];
        my += p[1];
    }
    mx /= static_cast<double>(y.size());
    my /= static_cast<double>(y.size());
    for (auto& p : y) {
        p[0] -= mx;
        p[1] -= my;
    }
}

// PCA start scaled to a small spread, plus a jitter keyed on (seed, point content)
// so that reordering the input reorders the output.
inline Coordinates tsne_initial(const PointSet& points, std::uint64_t seed) {
    const std::size_t n = points.size();
    Coordinates y(n, {0.0, 0.0});
    if (points.front().size() >= 2) {
        const auto pca = pca_2d(points);
        double sd = 0.0;
        for (const auto& c : pca.coordinates)
            sd += c[0] * c[0];
        sd = std::sqrt(sd / static_cast<double>(n));
        if (sd > 0.0)
            for (std::size_t i = 0; i < n; ++i)
                y[i] = {pca.coordinates[i][0] / sd * 1e-4, pca.coordinates[i][1] / sd * 1e-4};
    }
    for (std::size_t i = 0; i < n; ++i) {
        Fnv1a h;
        h.update_value(seed);
        for (double v : points[i])
            h.update_value(v);
        Rng rng(h.digest());
        y[i][0] += 1e-5 * rng.normal();
        y[i][1] += 1e-5 * rng.normal();
    }
    return y;
}

inline TsneResult tsne_ordered(const PointSet& points, const TsneOptions& opts) {
    common_dimension(points);
    const std::size_t n = points.size();
    if (n < 4)
        fail(ErrorKind::config, "t-SNE needs at least 4 points, got " + std::to_string(n));
    if (!(opts.perplexity > 0.0))
        fail(ErrorKind::config, "perplexity must be positive");
    TsneResult r;
    r.perplexity = std::min(opts.perplexity, static_cast<double>(n - 1) / 3.0);
    if (r.perplexity < 1.0)
        fail(ErrorKind::config, "perplexity infeasible for " + std::to_string(n) + " points");

    const auto p = detail::tsne_affinities(points, r.perplexity);
    auto y = detail::tsne_initial(points, opts.seed);
    const std::size_t iters = opts.iterations;
    const std::size_t exaggeration_stop = std::min<std::size_t>(250, iters / 4);
    const std::size_t momentum_switch = exaggeration_stop;
    const std::size_t monotone_start = iters - iters / 10;

    Coordinates grad, velocity(n, {0.0, 0.0}), gains(n, {1.0, 1.0});
    for (std::size_t it = 0; it < iters; ++it) {
        if (it < monotone_start) {
            const double ex = it < exaggeration_stop ? opts.exaggeration : 1.0;
            const double momentum = it < momentum_switch ? 0.5 : 0.8;
            detail::tsne_kl_and_gradient(p, y, ex, &grad);
            for (std::size_t i = 0; i < n; ++i)
                for (int d = 0; d < 2; ++d) {
                    auto& g = gains[i][d];
                    g = (grad[i][d] > 0.0) != (velocity[i][d] > 0.0) ? g + 0.2 : g * 0.8;
                    g = std::max(g, 0.01);
                    velocity[i][d] = momentum * velocity[i][d] - opts.learning_rate * g * grad[i][d];
                    y[i][d] += velocity[i][d];
                }
            detail::center(y);
            r.kl_history.push_back(detail::tsne_kl_and_gradient(p, y, 1.0, nullptr));
        } else {
            const double kl = detail::tsne_kl_and_gradient(p, y, 1.0, &grad);
            double step = opts.learning_rate;
            double best = kl;
            for (int halving = 0; halving < 40; ++halving, step *= 0.5) {
                Coordinates trial = y;
                for (std::size_t i = 0; i < n; ++i)
                    for (int d = 0; d < 2; ++d)
                        trial[i][d] -= step * grad[i][d];
                detail::center(trial);
                const double trial_kl = detail::tsne_kl_and_gradient(p, trial, 1.0, nullptr);
                if (trial_kl <= kl) {
                    y = std::move(trial);
                    best = trial_kl;
                    break;
                }
            }
            r.kl_history.push_back(best);
        }
    }
    r.coordinates = std::move(y);
    return r;
}

}  // namespace detail

/// Points are processed in lexicographic order and the result mapped back, so
/// permuting the input permutes the output exactly.
inline TsneResult tsne_2d(const PointSet& points, const TsneOptions& opts = {}) {
    std::vector<std::size_t> order(points.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return points[a] < points[b]; });
    PointSet sorted;
    sorted.reserve(points.size());
    for (auto i : order)
        sorted.push_back(points[i]);
    auto r = detail::tsne_ordered(sorted, opts);
    Coordinates back(points.size());
    for (std::size_t k = 0; k < order.size(); ++k)
        back[order[k]] = r.coordinates[k];
    r.coordinates = std::move(back);
    return r;
}

}  // namespace drift::projection
