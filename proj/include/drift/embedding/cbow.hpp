#pragma once

// CBOW with negative sampling. For one example with context rows c_1..c_m,
// target w and negatives n_1..n_k:
//
//   h = (1/m) sum_j C[c_j]
//   L = -log sigma(U[w].h) - sum_i log sigma(-U[n_i].h)
//
// C is the context (input) matrix, U the target (output) matrix. In compass
// training both are updated; in per-year training U is the frozen compass.

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "drift/embedding/matrix.hpp"

namespace drift::embedding {

struct CbowExample {
    std::span<const std::size_t> context;
    std::size_t target = 0;
    std::span<const std::size_t> negatives;
};

template <typename T>
T log_sigmoid(T x) {
    return x >= T(0) ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

template <typename T>
T sigmoid(T x) {
    if (x >= T(0))
        return T(1) / (T(1) + std::exp(-x));
    const T e = std::exp(x);
    return e / (T(1) + e);
}

template <typename T>
std::vector<T> cbow_hidden(const BasicMatrix<T>& context_matrix, std::span<const std::size_t> context) {
    std::vector<T> h(context_matrix.cols(), T(0));
    for (auto c : context) {
        auto row = context_matrix.row(c);
        for (std::size_t d = 0; d < h.size(); ++d)
            h[d] += row[d];
    }
    const T inv = T(1) / static_cast<T>(context.size());
    for (auto& v : h)
        v *= inv;
    return h;
}

template <typename T>
T cbow_loss(const BasicMatrix<T>& context_matrix, const BasicMatrix<T>& target_matrix, const CbowExample& ex) {
    const auto h = cbow_hidden(context_matrix, ex.context);
    std::span<const T> hs(h);
    T loss = -log_sigmoid(dot(target_matrix.row(ex.target), hs));
    for (auto n : ex.negatives)
        loss -= log_sigmoid(-dot(target_matrix.row(n), hs));
    return loss;
}

/// Gradient of one example. Output-row gradients are listed per term occurrence
/// (target first, then negatives in order); `hidden` is dL/dh, and each context
/// occurrence receives hidden / m.
template <typename T>
struct CbowGradient {
    T loss{};
    std::vector<T> hidden;
    std::vector<std::size_t> output_rows;
    std::vector<std::vector<T>> output;
};

template <typename T>
CbowGradient<T> cbow_gradient(const BasicMatrix<T>& context_matrix, const BasicMatrix<T>& target_matrix,
                              const CbowExample& ex) {
    const std::size_t dim = context_matrix.cols();
    CbowGradient<T> g;
    const auto h = cbow_hidden(context_matrix, ex.context);
    std::span<const T> hs(h);
    g.hidden.assign(dim, T(0));

    auto accumulate = [&](std::size_t row, T label) {
        auto u = target_matrix.row(row);
        const T score = dot(u, hs);
        // d/dx of -log sigma(x) is sigma(x) - 1; of -log sigma(-x) is sigma(x)
        const T coeff = sigmoid(score) - label;
        g.loss -= label > T(0) ? log_sigmoid(score) : log_sigmoid(-score);
        std::vector<T> grad_u(dim);
        for (std::size_t d = 0; d < dim; ++d) {
            grad_u[d] = coeff * h[d];
            g.hidden[d] += coeff * u[d];
        }
        g.output_rows.push_back(row);
        g.output.push_back(std::move(grad_u));
    };
    accumulate(ex.target, T(1));
    for (auto n : ex.negatives)
        accumulate(n, T(0));
    return g;
}

/// Dense form of the gradient, for checking against finite differences.
template <typename T>
std::pair<BasicMatrix<T>, BasicMatrix<T>> cbow_dense_gradient(const BasicMatrix<T>& context_matrix,
                                                              const BasicMatrix<T>& target_matrix,
                                                              const CbowExample& ex) {
    const auto g = cbow_gradient(context_matrix, target_matrix, ex);
    BasicMatrix<T> d_context(context_matrix.rows(), context_matrix.cols());
    BasicMatrix<T> d_target(target_matrix.rows(), target_matrix.cols());
    const T inv = T(1) / static_cast<T>(ex.context.size());
    for (auto c : ex.context) {
        auto row = d_context.row(c);
        for (std::size_t d = 0; d < row.size(); ++d)
            row[d] += g.hidden[d] * inv;
    }
    for (std::size_t i = 0; i < g.output_rows.size(); ++i) {
        auto row = d_target.row(g.output_rows[i]);
        for (std::size_t d = 0; d < row.size(); ++d)
            row[d] += g.output[i][d];
    }
    return {std::move(d_context), std::move(d_target)};
}

/// Scratch buffers reused across SGD steps.
template <typename T>
struct CbowWorkspace {
    std::vector<T> hidden;
    std::vector<T> hidden_grad;
};

/// One fused SGD step; returns the example loss before the update. `target_matrix`
/// is null when the output layer is frozen, in which case `target_view` is read only.
/// Matches subtracting `learning_rate` times `cbow_gradient` when output rows are distinct.
template <typename T>
T cbow_sgd_step(BasicMatrix<T>& context_matrix, BasicMatrix<T>* target_matrix,
                const BasicMatrix<T>& target_view, const CbowExample& ex, T learning_rate,
                CbowWorkspace<T>& ws) {
    const std::size_t dim = context_matrix.cols();
    ws.hidden.assign(dim, T(0));
    ws.hidden_grad.assign(dim, T(0));
    for (auto c : ex.context) {
        auto row = context_matrix.row(c);
        for (std::size_t d = 0; d < dim; ++d)
            ws.hidden[d] += row[d];
    }
    const T inv = T(1) / static_cast<T>(ex.context.size());
    for (auto& v : ws.hidden)
        v *= inv;
    std::span<const T> hs(ws.hidden);

    T loss{};
    auto visit = [&](std::size_t r, T label) {
        auto u = target_view.row(r);
        const T score = dot(u, hs);
        const T coeff = sigmoid(score) - label;
        loss -= label > T(0) ? log_sigmoid(score) : log_sigmoid(-score);
        for (std::size_t d = 0; d < dim; ++d)
            ws.hidden_grad[d] += coeff * u[d];
        if (target_matrix) {
            auto w = target_matrix->row(r);
            const T step = learning_rate * coeff;
            for (std::size_t d = 0; d < dim; ++d)
                w[d] -= step * ws.hidden[d];
        }
    };
    visit(ex.target, T(1));
    for (auto n : ex.negatives)
        visit(n, T(0));

    const T step = learning_rate * inv;
    for (auto c : ex.context) {
        auto row = context_matrix.row(c);
        for (std::size_t d = 0; d < dim; ++d)
            row[d] -= step * ws.hidden_grad[d];
    }
    return loss;
}

}  // namespace drift::embedding
