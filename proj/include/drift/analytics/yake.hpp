#pragma once

// YAKE unsupervised keyword extraction. Per-term features:
//
//   casing     max(TF_acronym, TF_proper) / (1 + ln TF)
//   position   ln(ln(3 + median sentence index))
//   frequency  TF / (mean TF + std TF)          over non-stopword terms
//   relatedness 1 + (DL + DR) * TF / max TF      DL, DR = distinct/total left, right neighbours
//   dispersion  sentences containing term / sentences
//
//   S(t) = relatedness * position / (casing + frequency/relatedness + dispersion/relatedness)
//
// A candidate n-gram scores prod S(t) / (TF(kw) * (1 + sum S(t))), with stopwords
// inside an n-gram weighted by their bigram transition probabilities. Lower is better.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "drift/corpus/stopwords.hpp"
#include "drift/error.hpp"

namespace drift::analytics {

struct YakeKeyword {
    std::string ngram;
    double raw_score = 0.0;      // lower = more important
    double display_score = 0.0;  // 1 / (1e5 * raw_score)
};

inline double yake_display_score(double raw_score) { return 1.0 / (1e5 * raw_score); }

struct YakeOptions {
    std::size_t max_ngram = 3;
    std::size_t k = 20;
    std::size_t window = 1;
    double dedup_threshold = 0.9;
};

namespace detail {

struct YakeToken {
    std::string text;
    bool punctuation = false;
};

inline bool is_punct_char(unsigned char c) { return c < 0x80 && std::ispunct(c); }

// Sentences of word and punctuation tokens. A chunk ending in . ! or ? closes a sentence.
inline std::vector<std::vector<YakeToken>> yake_sentences(std::string_view text) {
    std::vector<std::vector<YakeToken>> sentences(1);
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
        if (i >= text.size())
            break;
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])))
            ++j;
        std::string_view chunk = text.substr(i, j - i);
        i = j;

        std::size_t lo = 0, hi = chunk.size();
        std::vector<YakeToken> trailing;
        auto& sent = sentences.back();
        while (lo < hi && is_punct_char(static_cast<unsigned char>(chunk[lo])))
            sent.push_back({std::string(1, chunk[lo++]), true});
        while (hi > lo && is_punct_char(static_cast<unsigned char>(chunk[hi - 1])))
            trailing.push_back({std::string(1, chunk[--hi]), true});
        if (hi > lo)
            sent.push_back({std::string(chunk.substr(lo, hi - lo)), false});
        bool closes = false;
        for (auto it = trailing.rbegin(); it != trailing.rend(); ++it) {
            sent.push_back(*it);
            if (it->text == "." || it->text == "!" || it->text == "?")
                closes = true;
        }
        if (closes && !sent.empty())
            sentences.emplace_back();
    }
    while (!sentences.empty() && sentences.back().empty())
        sentences.pop_back();
    return sentences;
}

// d: number, u: unusual, a: acronym, n: capitalized mid-sentence, p: plain
inline char yake_tag(const std::string& w, std::size_t position_in_sentence) {
    std::string stripped;
    for (char c : w)
        if (c != ',')
            stripped.push_back(c);
    bool number = !stripped.empty();
    bool seen_dot = false;
    for (char c : stripped) {
        if (c == '.' && !seen_dot) {
            seen_dot = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(c)))
            number = false;
    }
    if (number && stripped != ".")
        return 'd';
    std::size_t digits = 0, alpha = 0, upper = 0, special = 0;
    for (unsigned char c : w) {
        if (std::isdigit(c)) ++digits;
        if (std::isalpha(c)) ++alpha;
        if (std::isupper(c)) ++upper;
        if (is_punct_char(c)) ++special;
    }
    if ((digits > 0 && alpha > 0) || (digits == 0 && alpha == 0) || special > 1)
        return 'u';
    if (upper == w.size())
        return 'a';
    if (upper == 1 && w.size() > 1 && std::isupper(static_cast<unsigned char>(w[0])) && position_in_sentence > 0)
        return 'n';
    return 'p';
}

inline std::string lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

struct YakeTerm {
    std::size_t tf = 0;
    std::size_t tf_acronym = 0;
    std::size_t tf_proper = 0;
    std::set<std::size_t> sentences;
    bool stopword = false;
    std::map<std::size_t, std::size_t> left;   // neighbour id -> co-occurrences
    std::map<std::size_t, std::size_t> right;
    double score = 0.0;
};

struct YakeCandidate {
    std::vector<std::size_t> terms;
    std::size_t tf = 0;
    bool any_clean_occurrence = false;  // some occurrence free of number/unusual tokens
};

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const auto n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

inline std::size_t levenshtein(std::string_view a, std::string_view b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j)
        prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j)
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0u : 1u)});
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

inline double levenshtein_ratio(std::string_view a, std::string_view b) {
    const auto len = std::max(a.size(), b.size());
    if (len == 0)
        return 1.0;
    return 1.0 - static_cast<double>(levenshtein(a, b)) / static_cast<double>(len);
}

}  // namespace detail

inline std::vector<YakeKeyword> yake_keywords(std::string_view text, const YakeOptions& opts = {}) {
    if (opts.max_ngram < 1)
        fail(ErrorKind::config, "max_ngram must be >= 1");
    if (opts.k < 1)
        fail(ErrorKind::config, "k must be >= 1");
    const auto sentences = detail::yake_sentences(text);
    if (sentences.empty())
        return {};

    const auto& stop = corpus::english_stopwords();
    std::vector<detail::YakeTerm> terms;
    std::unordered_map<std::string, std::size_t> term_ids;
    std::vector<std::string> term_names;
    std::map<std::string, detail::YakeCandidate> candidates;

    auto term_id = [&](const std::string& word) {
        const auto key = detail::lower(word);
        auto [it, inserted] = term_ids.emplace(key, terms.size());
        if (inserted) {
            detail::YakeTerm t;
            std::string singular = key;
            if (singular.size() > 3 && singular.back() == 's')
                singular.pop_back();
            t.stopword = stop.contains(key) || stop.contains(singular) || key.size() < 3;
            terms.push_back(std::move(t));
            term_names.push_back(key);
        }
        return it->second;
    };

    struct BlockWord {
        char tag;
        std::size_t id;
    };
    for (std::size_t s = 0; s < sentences.size(); ++s) {
        std::vector<BlockWord> block;
        std::size_t pos = 0;
        for (const auto& tok : sentences[s]) {
            if (tok.punctuation) {
                block.clear();
                ++pos;
                continue;
            }
            const char tag = detail::yake_tag(tok.text, pos++);
            const auto id = term_id(tok.text);
            auto& term = terms[id];
            ++term.tf;
            if (tag == 'a') ++term.tf_acronym;
            if (tag == 'n') ++term.tf_proper;
            term.sentences.insert(s);
            if (tag != 'd' && tag != 'u') {
                const std::size_t from = block.size() > opts.window ? block.size() - opts.window : 0;
                for (std::size_t b = from; b < block.size(); ++b) {
                    if (block[b].tag == 'd' || block[b].tag == 'u')
                        continue;
                    ++terms[block[b].id].right[id];
                    ++terms[id].left[block[b].id];
                }
            }
            // every n-gram ending at this word
            std::vector<BlockWord> gram{{tag, id}};
            auto add_candidate = [&](const std::vector<BlockWord>& reversed) {
                std::vector<std::size_t> ids;
                bool clean = true;
                std::string key;
                for (auto it = reversed.rbegin(); it != reversed.rend(); ++it) {
                    ids.push_back(it->id);
                    if (it->tag == 'd' || it->tag == 'u')
                        clean = false;
                    if (!key.empty())
                        key.push_back(' ');
                    key += term_names[it->id];
                }
                auto& c = candidates[key];
                c.terms = std::move(ids);
                ++c.tf;
                c.any_clean_occurrence = c.any_clean_occurrence || clean;
            };
            add_candidate(gram);
            for (std::size_t back = 0; back + 1 < opts.max_ngram && back < block.size(); ++back) {
                gram.push_back(block[block.size() - 1 - back]);
                add_candidate(gram);
            }
            block.push_back({tag, id});
        }
    }

    // term scores
    std::size_t max_tf = 0;
    std::vector<double> valid_tf;
    for (const auto& t : terms) {
        max_tf = std::max(max_tf, t.tf);
        if (!t.stopword)
            valid_tf.push_back(static_cast<double>(t.tf));
    }
    double mean_tf = 0.0, std_tf = 0.0;
    if (!valid_tf.empty()) {
        for (double v : valid_tf)
            mean_tf += v;
        mean_tf /= static_cast<double>(valid_tf.size());
        for (double v : valid_tf)
            std_tf += (v - mean_tf) * (v - mean_tf);
        std_tf = std::sqrt(std_tf / static_cast<double>(valid_tf.size()));
    }
    const double n_sent = static_cast<double>(sentences.size());
    for (auto& t : terms) {
        auto spread = [](const std::map<std::size_t, std::size_t>& edges) {
            std::size_t total = 0;
            for (const auto& [id, c] : edges)
                total += c;
            return total == 0 ? 0.0 : static_cast<double>(edges.size()) / static_cast<double>(total);
        };
        const double tf = static_cast<double>(t.tf);
        const double rel_scale = tf / static_cast<double>(max_tf);
        const double relatedness = (0.5 + spread(t.left) * rel_scale) + (0.5 + spread(t.right) * rel_scale);
        const double frequency = (mean_tf + std_tf) > 0.0 ? tf / (mean_tf + std_tf) : 0.0;
        const double dispersion = static_cast<double>(t.sentences.size()) / n_sent;
        const double casing =
            static_cast<double>(std::max(t.tf_acronym, t.tf_proper)) / (1.0 + std::log(tf));
        std::vector<double> sent_ids(t.sentences.begin(), t.sentences.end());
        const double position = std::log(std::log(3.0 + detail::median(sent_ids)));
        t.score = (position * relatedness) / (casing + frequency / relatedness + dispersion / relatedness);
    }

    auto edge = [&](std::size_t a, std::size_t b) -> double {
        auto it = terms[a].right.find(b);
        return it == terms[a].right.end() ? 0.0 : static_cast<double>(it->second);
    };

    std::vector<YakeKeyword> scored;
    for (const auto& [key, c] : candidates) {
        if (!c.any_clean_occurrence || terms[c.terms.front()].stopword || terms[c.terms.back()].stopword)
            continue;
        double prod = 1.0, sum = 0.0;
        for (std::size_t i = 0; i < c.terms.size(); ++i) {
            const auto& t = terms[c.terms[i]];
            if (!t.stopword) {
                prod *= t.score;
                sum += t.score;
                continue;
            }
            // interior stopword: probability of the bigrams linking it to its neighbours
            const auto prev = c.terms[i - 1], cur = c.terms[i], next = c.terms[i + 1];
            const double p1 = edge(prev, cur) / static_cast<double>(terms[prev].tf);
            const double p2 = edge(cur, next) / static_cast<double>(terms[next].tf);
            const double prob = p1 * p2;
            prod *= 1.0 + (1.0 - prob);
            sum -= 1.0 - prob;
        }
        const double raw = prod / ((sum + 1.0) * static_cast<double>(c.tf));
        if (!(raw > 0.0) || !std::isfinite(raw))
            continue;
        scored.push_back({key, raw, yake_display_score(raw)});
    }
    std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.raw_score != b.raw_score)
            return a.raw_score < b.raw_score;
        return a.ngram < b.ngram;
    });

    std::vector<YakeKeyword> out;
    for (auto& kw : scored) {
        bool duplicate = false;
        for (const auto& kept : out)
            if (detail::levenshtein_ratio(kw.ngram, kept.ngram) > opts.dedup_threshold) {
                duplicate = true;
                break;
            }
        if (duplicate)
            continue;
        out.push_back(std::move(kw));
        if (out.size() == opts.k)
            break;
    }
    return out;
}

inline std::vector<YakeKeyword> yake_keywords(std::string_view text, std::size_t max_ngram, std::size_t k) {
    YakeOptions opts;
    opts.max_ngram = max_ngram;
    opts.k = k;
    return yake_keywords(text, opts);
}

}  // namespace drift::analytics
