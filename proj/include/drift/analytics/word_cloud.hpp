#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "drift/corpus/slice.hpp"
#include "drift/error.hpp"

namespace drift::analytics {

struct WordCloudOptions {
    std::size_t k = 50;
    double min_font = 10.0;
    double max_font = 60.0;
    double width = 800.0;
    double height = 400.0;
    std::string color = "#1f77b4";
};

struct WordCloudEntry {
    std::string term;
    std::size_t count = 0;
    double weight = 0.0;  // font size
    std::string color;
    double opacity = 1.0;
    double x = 0.0;  // text baseline origin
    double y = 0.0;
    bool placed = false;  // false when the canvas overflowed
};

/// Frequencies of the top-k terms mapped linearly onto [min_font, max_font], laid out
/// left to right in rows, largest first. A single distinct count maps to max_font.
inline std::vector<WordCloudEntry> word_cloud_data(const corpus::CorpusSlice& slice, const WordCloudOptions& opts) {
    if (opts.k == 0)
        fail(ErrorKind::config, "k must be >= 1");
    if (opts.min_font <= 0.0 || opts.max_font < opts.min_font)
        fail(ErrorKind::config, "font sizes must satisfy 0 < min_font <= max_font");

    std::vector<std::pair<std::string, std::size_t>> terms(slice.token_counts.begin(), slice.token_counts.end());
    std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    if (terms.size() > opts.k)
        terms.resize(opts.k);
    std::vector<WordCloudEntry> out;
    if (terms.empty())
        return out;

    const double hi = static_cast<double>(terms.front().second);
    const double lo = static_cast<double>(terms.back().second);
    double cursor_x = 0.0, row_top = 0.0, row_height = 0.0;
    for (const auto& [term, count] : terms) {
        WordCloudEntry e;
        e.term = term;
        e.count = count;
        e.weight = hi == lo ? opts.max_font
                            : opts.min_font + (static_cast<double>(count) - lo) / (hi - lo) * (opts.max_font - opts.min_font);
        e.color = opts.color;
        e.opacity = 0.45 + 0.55 * (e.weight - opts.min_font) / std::max(1e-12, opts.max_font - opts.min_font);
        if (hi == lo)
            e.opacity = 1.0;

        const double w = 0.6 * e.weight * static_cast<double>(term.size()) + 0.4 * e.weight;
        if (cursor_x > 0.0 && cursor_x + w > opts.width) {
            row_top += row_height;
            cursor_x = 0.0;
            row_height = 0.0;
        }
        row_height = std::max(row_height, e.weight * 1.2);
        e.x = cursor_x;
        e.y = row_top + e.weight;
        e.placed = row_top + e.weight * 1.2 <= opts.height;
        cursor_x += w;
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace drift::analytics
