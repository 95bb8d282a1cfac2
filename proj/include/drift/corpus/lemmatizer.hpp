#pragma once

// Rule-based lemma proxy built on the inflectional steps (1a/1b) of the Porter
// stemmer. Derivational suffixes are left alone so lemmas stay readable
// ("language", "translation"), which matters for keyword displays. This is an
// approximation of dictionary lemmatization, not a replacement for it.

#include <string>
#include <string_view>

namespace drift::corpus {

namespace detail {

inline bool is_consonant(std::string_view w, std::size_t i) {
    switch (w[i]) {
    case 'a': case 'e': case 'i': case 'o': case 'u':
        return false;
    case 'y':
        return i == 0 ? true : !is_consonant(w, i - 1);
    default:
        return true;
    }
}

// Porter's m: number of VC sequences in [C](VC)^m[V].
inline int measure(std::string_view w) {
    int m = 0;
    std::size_t i = 0;
    const std::size_t n = w.size();
    while (i < n && is_consonant(w, i))
        ++i;
    while (i < n) {
        while (i < n && !is_consonant(w, i))
            ++i;
        if (i >= n)
            break;
        while (i < n && is_consonant(w, i))
            ++i;
        ++m;
    }
    return m;
}

inline bool has_vowel(std::string_view w) {
    for (std::size_t i = 0; i < w.size(); ++i)
        if (!is_consonant(w, i))
            return true;
    return false;
}

inline bool ends_double_consonant(std::string_view w) {
    const auto n = w.size();
    return n >= 2 && w[n - 1] == w[n - 2] && is_consonant(w, n - 1);
}

// *o: stem ends consonant-vowel-consonant, last consonant not w, x or y.
inline bool ends_cvc(std::string_view w) {
    const auto n = w.size();
    if (n < 3)
        return false;
    if (!is_consonant(w, n - 3) || is_consonant(w, n - 2) || !is_consonant(w, n - 1))
        return false;
    const char c = w[n - 1];
    return c != 'w' && c != 'x' && c != 'y';
}

inline bool ends_with(std::string_view w, std::string_view suffix) {
    return w.size() >= suffix.size() && w.substr(w.size() - suffix.size()) == suffix;
}

inline std::string strip_plural(std::string w) {
    if (ends_with(w, "sses")) {
        w.resize(w.size() - 2);
    } else if (ends_with(w, "ies")) {
        // studies -> study, ties -> tie
        if (w.size() > 4) {
            w.resize(w.size() - 3);
            w += 'y';
        } else {
            w.resize(w.size() - 1);
        }
    } else if (ends_with(w, "ches") || ends_with(w, "shes") || ends_with(w, "xes") ||
               ends_with(w, "zes")) {
        w.resize(w.size() - 2);
    } else if (ends_with(w, "s") && w.size() > 3) {
        const char before = w[w.size() - 2];
        // corpus, bias, analysis, class keep their final s
        if (before != 's' && before != 'u' && before != 'i')
            w.pop_back();
    }
    return w;
}

inline std::string strip_verbal(std::string w) {
    bool stripped = false;
    if (ends_with(w, "eed")) {
        if (measure(std::string_view(w).substr(0, w.size() - 3)) > 0)
            w.pop_back();
        return w;
    }
    if (ends_with(w, "ed") && has_vowel(std::string_view(w).substr(0, w.size() - 2))) {
        w.resize(w.size() - 2);
        stripped = true;
    } else if (ends_with(w, "ing") && has_vowel(std::string_view(w).substr(0, w.size() - 3))) {
        w.resize(w.size() - 3);
        stripped = true;
    }
    if (!stripped)
        return w;
    if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
        w += 'e';
    } else if (ends_double_consonant(w)) {
        const char c = w.back();
        if (c == 'l') {
            if (measure(w) > 1)
                w.pop_back();  // modelling -> model
        } else if (c != 's' && c != 'z') {
            w.pop_back();
        }
    } else if (measure(w) == 1 && ends_cvc(w)) {
        w += 'e';
    }
    return w;
}

inline std::string lemma_step(std::string w) {
    return strip_verbal(strip_plural(std::move(w)));
}

}  // namespace detail

inline bool is_lemmatizable(std::string_view w) {
    if (w.size() < 3)
        return false;
    for (char c : w)
        if (c < 'a' || c > 'z')
            return false;
    return true;
}

/// Lemma proxy for a lowercase ASCII word. Applied to a fixed point, so
/// lemmatize(lemmatize(w)) == lemmatize(w) always holds. Other tokens pass through.
inline std::string lemmatize(std::string_view word) {
    std::string current(word);
    if (!is_lemmatizable(current))
        return current;
    for (;;) {
        std::string next = detail::lemma_step(current);
        if (next == current || next.size() < 2)
            return next.size() < 2 ? current : next;
        current = std::move(next);
    }
}

}  // namespace drift::corpus
