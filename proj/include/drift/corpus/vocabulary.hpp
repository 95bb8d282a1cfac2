#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "drift/corpus/slice.hpp"
#include "drift/error.hpp"
#include "drift/hash.hpp"

namespace drift::corpus {

/// Dense term ids ordered by descending total count, ties lexicographic.
class Vocabulary {
public:
    Vocabulary() = default;

    Vocabulary(std::vector<std::string> terms, std::vector<std::size_t> totals,
               std::map<int, std::vector<std::size_t>> per_year, std::size_t min_count)
        : terms_(std::move(terms)), totals_(std::move(totals)), per_year_(std::move(per_year)),
          min_count_(min_count) {
        index_.reserve(terms_.size());
        for (std::size_t i = 0; i < terms_.size(); ++i)
            index_.emplace(terms_[i], i);
    }

    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }
    std::size_t min_count() const { return min_count_; }

    std::optional<std::size_t> id_of(const std::string& term) const {
        auto it = index_.find(term);
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }
    bool contains(const std::string& term) const { return index_.contains(term); }

    const std::string& term(std::size_t id) const { return terms_.at(id); }
    const std::vector<std::string>& terms() const { return terms_; }
    std::size_t total_count(std::size_t id) const { return totals_.at(id); }
    const std::vector<std::size_t>& totals() const { return totals_; }

    std::size_t year_count(std::size_t id, int year) const {
        auto it = per_year_.find(year);
        return it == per_year_.end() ? 0 : it->second.at(id);
    }
    const std::map<int, std::vector<std::size_t>>& per_year_counts() const { return per_year_; }

    std::uint64_t hash() const {
        Fnv1a h;
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            h.update(terms_[i]);
            h.update_value(static_cast<std::uint64_t>(totals_[i]));
        }
        return h.digest();
    }

private:
    std::vector<std::string> terms_;
    std::vector<std::size_t> totals_;
    std::map<int, std::vector<std::size_t>> per_year_;
    std::unordered_map<std::string, std::size_t> index_;
    std::size_t min_count_ = 1;
};

inline Vocabulary build_vocabulary(const SliceMap& slices, std::size_t min_count) {
    if (slices.empty())
        fail(ErrorKind::config, "cannot build a vocabulary from zero slices");
    std::map<std::string, std::size_t> totals;
    for (const auto& [year, slice] : slices)
        for (const auto& [term, count] : slice.token_counts)
            totals[term] += count;

    std::vector<std::pair<std::string, std::size_t>> kept;
    for (auto& [term, count] : totals)
        if (count >= min_count)
            kept.emplace_back(term, count);
    if (kept.empty())
        fail(ErrorKind::config, "vocabulary is empty at min_count=" + std::to_string(min_count));
    std::stable_sort(kept.begin(), kept.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });

    std::vector<std::string> terms;
    std::vector<std::size_t> counts;
    for (auto& [term, count] : kept) {
        terms.push_back(term);
        counts.push_back(count);
    }
    std::map<int, std::vector<std::size_t>> per_year;
    for (const auto& [year, slice] : slices) {
        auto& row = per_year[year];
        row.resize(terms.size());
        for (std::size_t i = 0; i < terms.size(); ++i)
            row[i] = slice.count_of(terms[i]);
    }
    return Vocabulary(std::move(terms), std::move(counts), std::move(per_year), min_count);
}

}  // namespace drift::corpus
