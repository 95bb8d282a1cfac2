#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace drift::embedding {

/// Row-major dense matrix; one row per vocabulary term.
template <typename T>
class BasicMatrix {
public:
    using value_type = T;

    BasicMatrix() = default;
    BasicMatrix(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    T operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<T>& data() { return data_; }
    const std::vector<T>& data() const { return data_; }

    bool all_finite() const {
        for (T v : data_)
            if (!std::isfinite(v))
                return false;
        return true;
    }

    friend bool operator==(const BasicMatrix&, const BasicMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using Matrix = BasicMatrix<double>;

template <typename T>
T dot(std::span<const T> a, std::span<const T> b) {
    T s{};
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

template <typename T>
T norm(std::span<const T> a) {
    return std::sqrt(dot(a, a));
}

}  // namespace drift::embedding
