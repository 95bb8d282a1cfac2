#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "drift/corpus/document.hpp"
#include "drift/corpus/preprocess.hpp"
#include "drift/error.hpp"

namespace drift::corpus {

/// Tokenized documents of one year bucket.
struct CorpusSlice {
    int year = 0;
    std::vector<TokenSequence> documents;
    std::map<std::string, std::size_t> token_counts;
    std::vector<std::string> raw_texts;  // parallel to documents when available (keyword extraction on raw text)

    void add_document(TokenSequence tokens, std::string raw = {}) {
        for (const auto& t : tokens)
            ++token_counts[t];
        documents.push_back(std::move(tokens));
        raw_texts.push_back(std::move(raw));
    }

    std::size_t total_tokens() const {
        std::size_t n = 0;
        for (const auto& [term, count] : token_counts)
            n += count;
        return n;
    }

    std::size_t count_of(const std::string& term) const {
        auto it = token_counts.find(term);
        return it == token_counts.end() ? 0 : it->second;
    }
};

using SliceMap = std::map<int, CorpusSlice>;

struct YearRange {
    int min = 0;
    int max = 0;
    bool contains(int y) const { return y >= min && y <= max; }
};

struct SliceResult {
    SliceMap slices;
    std::size_t dropped_out_of_range = 0;
    std::size_t dropped_bad_date = 0;

    std::size_t dropped() const { return dropped_out_of_range + dropped_bad_date; }
};

inline SliceResult slice_by_year(const std::vector<RawDocument>& docs, const PreprocessOptions& opts,
                                 YearRange range) {
    if (range.min > range.max)
        fail(ErrorKind::config, "year range is empty: [" + std::to_string(range.min) + ", " +
                                    std::to_string(range.max) + "]");
    SliceResult result;
    for (const auto& doc : docs) {
        auto year = leading_year(doc.submitted);
        if (!year) {
            ++result.dropped_bad_date;
            continue;
        }
        if (!range.contains(*year)) {
            ++result.dropped_out_of_range;
            continue;
        }
        auto& slice = result.slices[*year];
        slice.year = *year;
        slice.add_document(preprocess(doc.abstract, opts), doc.abstract);
    }
    if (result.slices.empty())
        fail(ErrorKind::empty_corpus, "no documents fall inside year range [" +
                                          std::to_string(range.min) + ", " +
                                          std::to_string(range.max) + "]");
    return result;
}

/// Concatenation of several slices; the year is that of the first one.
inline CorpusSlice merge_slices(const SliceMap& slices, int from, int to) {
    CorpusSlice merged;
    merged.year = from;
    for (auto it = slices.lower_bound(from); it != slices.end() && it->first <= to; ++it) {
        for (std::size_t d = 0; d < it->second.documents.size(); ++d)
            merged.add_document(it->second.documents[d],
                                d < it->second.raw_texts.size() ? it->second.raw_texts[d] : std::string{});
    }
    return merged;
}

}  // namespace drift::corpus
