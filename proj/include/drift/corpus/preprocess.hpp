#pragma once

#include <cctype>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "drift/corpus/lemmatizer.hpp"
#include "drift/corpus/stopwords.hpp"

namespace drift::corpus {

using TokenSequence = std::vector<std::string>;

struct PreprocessOptions {
    bool lowercase = true;
    bool lemmatize = true;
    bool strip_punctuation = true;
    bool strip_stopwords = true;
    bool strip_non_alphanumeric = true;
    std::set<std::string> domain_stopwords = default_domain_stopwords();
    std::size_t min_token_length = 2;
};

namespace detail {

inline bool is_separator(unsigned char c, bool punctuation_splits) {
    if (std::isspace(c))
        return true;
    return punctuation_splits && c < 0x80 && std::ispunct(c);
}

inline bool is_dropped_word(const std::string& w, const PreprocessOptions& opts) {
    if (opts.strip_stopwords && english_stopwords().contains(w))
        return true;
    return opts.domain_stopwords.contains(w);
}

}  // namespace detail

/// Tokenize and normalize raw text. Deterministic for fixed options and idempotent
/// over its own whitespace-joined output.
inline TokenSequence preprocess(std::string_view text, const PreprocessOptions& opts) {
    TokenSequence out;
    std::string token;

    auto flush = [&] {
        if (token.empty())
            return;
        std::string word = std::move(token);
        token.clear();
        if (opts.strip_non_alphanumeric) {
            std::string kept;
            kept.reserve(word.size());
            for (unsigned char c : word)
                if (c < 0x80 && std::isalnum(c))
                    kept.push_back(static_cast<char>(c));
            word = std::move(kept);
        }
        if (word.empty() || detail::is_dropped_word(word, opts))
            return;
        if (opts.lemmatize) {
            word = lemmatize(word);
            if (detail::is_dropped_word(word, opts))
                return;
        }
        if (word.size() < opts.min_token_length)
            return;
        out.push_back(std::move(word));
    };

    for (unsigned char c : text) {
        if (detail::is_separator(c, opts.strip_punctuation)) {
            flush();
            continue;
        }
        token.push_back(opts.lowercase ? static_cast<char>(std::tolower(c)) : static_cast<char>(c));
    }
    flush();
    return out;
}

inline std::string join_tokens(const TokenSequence& tokens) {
    std::string s;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i)
            s.push_back(' ');
        s += tokens[i];
    }
    return s;
}

}  // namespace drift::corpus
