#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "drift/corpus/pos_tagger.hpp"
#include "drift/corpus/slice.hpp"
#include "drift/error.hpp"

namespace drift::analytics {

enum class KeywordScoring { norm_freq, raw_freq, tfidf };

inline std::string_view to_string(KeywordScoring s) {
    switch (s) {
    case KeywordScoring::norm_freq: return "norm_freq";
    case KeywordScoring::raw_freq: return "raw_freq";
    case KeywordScoring::tfidf: return "tfidf";
    }
    return "norm_freq";
}

inline std::optional<KeywordScoring> parse_keyword_scoring(std::string_view s) {
    if (s == "norm_freq") return KeywordScoring::norm_freq;
    if (s == "raw_freq" || s == "freq") return KeywordScoring::raw_freq;
    if (s == "tfidf") return KeywordScoring::tfidf;
    return std::nullopt;
}

struct KeywordScore {
    std::string term;
    int year = 0;
    std::size_t raw_freq = 0;
    double norm_freq = 0.0;
    double tfidf = 0.0;
    corpus::PosTag pos = corpus::PosTag::noun;
};

/// Term frequency normalized by slice size, times ln(N / df) with year slices as documents.
inline double tfidf(const corpus::CorpusSlice& slice, const std::string& term, const corpus::SliceMap& all_slices) {
    const std::size_t total = slice.total_tokens();
    if (total == 0 || all_slices.empty())
        return 0.0;
    std::size_t df = 0;
    for (const auto& [year, s] : all_slices)
        if (s.count_of(term) > 0)
            ++df;
    if (df == 0)
        return 0.0;
    const double tf = static_cast<double>(slice.count_of(term)) / static_cast<double>(total);
    return tf * std::log(static_cast<double>(all_slices.size()) / static_cast<double>(df));
}

struct KeywordQuery {
    std::size_t k = 10;
    KeywordScoring scoring = KeywordScoring::norm_freq;
    std::optional<std::set<corpus::PosTag>> pos_filter;
    const corpus::SliceMap* all_slices = nullptr;       // required for tfidf
    std::function<bool(const std::string&)> admit;      // extra term filter, e.g. model vocabulary
};

/// Top-k terms of a slice under the chosen score; ties broken lexicographically.
inline std::vector<KeywordScore> extract_keywords(const corpus::CorpusSlice& slice, const KeywordQuery& q) {
    if (q.k == 0)
        fail(ErrorKind::config, "k must be >= 1");
    if (q.scoring == KeywordScoring::tfidf && (q.all_slices == nullptr || q.all_slices->empty()))
        fail(ErrorKind::config, "tfidf scoring needs the full set of year slices");
    const std::size_t total = slice.total_tokens();

    std::vector<std::pair<double, KeywordScore>> scored;
    for (const auto& [term, count] : slice.token_counts) {
        if (count == 0)
            continue;
        const auto tag = corpus::tag_word(term);
        if (q.pos_filter && !q.pos_filter->contains(tag))
            continue;
        if (q.admit && !q.admit(term))
            continue;
        KeywordScore ks;
        ks.term = term;
        ks.year = slice.year;
        ks.raw_freq = count;
        ks.norm_freq = static_cast<double>(count) / static_cast<double>(total);
        ks.tfidf = q.all_slices ? tfidf(slice, term, *q.all_slices) : 0.0;
        ks.pos = tag;
        double score = 0.0;
        switch (q.scoring) {
        case KeywordScoring::norm_freq: score = ks.norm_freq; break;
        case KeywordScoring::raw_freq: score = static_cast<double>(ks.raw_freq); break;
        case KeywordScoring::tfidf: score = ks.tfidf; break;
        }
        scored.emplace_back(score, std::move(ks));
    }
    std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first)
            return a.first > b.first;
        return a.second.term < b.second.term;
    });
    std::vector<KeywordScore> out;
    for (std::size_t i = 0; i < scored.size() && i < q.k; ++i)
        out.push_back(std::move(scored[i].second));
    return out;
}

inline std::vector<std::string> keyword_terms(const std::vector<KeywordScore>& ks) {
    std::vector<std::string> out;
    out.reserve(ks.size());
    for (const auto& k : ks)
        out.push_back(k.term);
    return out;
}

}  // namespace drift::analytics
