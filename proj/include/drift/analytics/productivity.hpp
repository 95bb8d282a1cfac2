#pragma once

// Term productivity: the Shannon entropy (bits) of the distribution of a
// term's two-word continuations within one year slice,
//
//   e(t, y) = -sum_i p(m_i, y) log2 p(m_i, y),   p(m, y) = f(m) / sum_i f(m_i)
//
// where m_i ranges over the distinct bigrams containing t, on either side.

#include <cmath>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "drift/corpus/slice.hpp"
#include "drift/error.hpp"

namespace drift::analytics {

/// Bigram ("left right") -> count for every adjacent pair in the slice that contains `term`.
inline std::map<std::string, std::size_t> continuation_counts(const std::string& term,
                                                              const corpus::CorpusSlice& slice) {
    std::map<std::string, std::size_t> counts;
    for (const auto& doc : slice.documents)
        for (std::size_t i = 0; i + 1 < doc.size(); ++i)
            if (doc[i] == term || doc[i + 1] == term)
                ++counts[doc[i] + ' ' + doc[i + 1]];
    return counts;
}

/// Probabilities of each continuation; empty when there are none.
inline std::vector<double> continuation_probabilities(std::span<const std::size_t> counts) {
    double total = 0.0;
    for (auto c : counts)
        total += static_cast<double>(c);
    std::vector<double> p;
    if (total == 0.0)
        return p;
    for (auto c : counts)
        if (c > 0)
            p.push_back(static_cast<double>(c) / total);
    return p;
}

inline double entropy_bits(std::span<const std::size_t> counts) {
    double e = 0.0;
    for (double p : continuation_probabilities(counts))
        e -= p * std::log2(p);
    return e == 0.0 ? 0.0 : e;  // no negative zero
}

inline double productivity(const std::string& term, const corpus::CorpusSlice& slice) {
    std::vector<std::size_t> counts;
    for (const auto& [bigram, c] : continuation_counts(term, slice))
        counts.push_back(c);
    return entropy_bits(counts);
}

enum class TrendClass { growing, consolidated, declining };

inline std::string_view to_string(TrendClass c) {
    switch (c) {
    case TrendClass::growing: return "growing";
    case TrendClass::consolidated: return "consolidated";
    case TrendClass::declining: return "declining";
    }
    return "declining";
}

struct ProductivitySeries {
    std::string term;
    std::map<int, double> entropy;
    std::map<int, double> norm_freq;
    std::optional<TrendClass> trend;  // unset when the series is shorter than the window
};

/// Least-squares slope of y over x.
inline double ls_slope(std::span<const double> x, std::span<const double> y) {
    const auto n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxx == 0.0 ? 0.0 : sxy / sxx;
}

inline constexpr double trend_dead_zone = 1e-6;

/// Slope signs over the last `recent_window` years: frequency and productivity both
/// rising -> growing; frequency rising only -> consolidated; anything else -> declining.
inline TrendClass classify_trend(const ProductivitySeries& series, std::size_t recent_window = 5) {
    if (recent_window < 2)
        fail(ErrorKind::config, "recent_window must be >= 2");
    if (series.norm_freq.size() < recent_window || series.entropy.size() < recent_window)
        fail(ErrorKind::insufficient_data, "series for '" + series.term + "' covers " +
                                               std::to_string(series.norm_freq.size()) + " years, window needs " +
                                               std::to_string(recent_window));
    auto tail = [&](const std::map<int, double>& m, std::vector<double>& xs, std::vector<double>& ys) {
        auto it = m.end();
        std::advance(it, -static_cast<std::ptrdiff_t>(recent_window));
        for (; it != m.end(); ++it) {
            xs.push_back(static_cast<double>(it->first));
            ys.push_back(it->second);
        }
    };
    std::vector<double> fx, fy, ex, ey;
    tail(series.norm_freq, fx, fy);
    tail(series.entropy, ex, ey);
    const bool freq_up = ls_slope(fx, fy) > trend_dead_zone;
    const bool prod_up = ls_slope(ex, ey) > trend_dead_zone;
    if (freq_up && prod_up)
        return TrendClass::growing;
    if (freq_up)
        return TrendClass::consolidated;
    return TrendClass::declining;
}

/// Entropy and normalized frequency of `term` for every slice in [from, to].
inline ProductivitySeries productivity_series(const std::string& term, const corpus::SliceMap& slices, int from,
                                              int to, std::size_t recent_window = 5) {
    ProductivitySeries s;
    s.term = term;
    for (auto it = slices.lower_bound(from); it != slices.end() && it->first <= to; ++it) {
        const auto& slice = it->second;
        const auto total = slice.total_tokens();
        s.entropy[it->first] = productivity(term, slice);
        s.norm_freq[it->first] =
            total == 0 ? 0.0 : static_cast<double>(slice.count_of(term)) / static_cast<double>(total);
    }
    if (s.norm_freq.size() >= std::max<std::size_t>(recent_window, 2))
        s.trend = classify_trend(s, recent_window);
    return s;
}

}  // namespace drift::analytics
