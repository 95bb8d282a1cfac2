#pragma once

// Latent Dirichlet Allocation by collapsed Gibbs sampling. Each "document" is
// the concatenated token stream of one year.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "drift/corpus/preprocess.hpp"
#include "drift/embedding/matrix.hpp"
#include "drift/embedding/random.hpp"
#include "drift/error.hpp"

namespace drift::analytics {

struct LdaOptions {
    std::size_t topics = 10;
    std::optional<double> alpha;  // default 50 / topics
    double beta = 0.01;
    std::size_t iterations = 1000;
    std::uint64_t seed = 1;
};

struct TopicModel {
    std::size_t topics = 0;
    double alpha = 0.0;
    double beta = 0.0;
    std::vector<std::string> vocabulary;
    std::vector<int> documents;        // year label of each doc_topic row
    embedding::Matrix topic_word;      // topics x |V|, rows sum to 1
    embedding::Matrix doc_topic;       // documents x topics, rows sum to 1
};

struct GibbsSweepStats {
    std::size_t sweep = 0;
    std::size_t tokens = 0;
    std::size_t topic_total = 0;      // sum_k n_k
    std::size_t doc_topic_total = 0;  // sum_d,k n_dk
    std::size_t topic_word_total = 0; // sum_k,w n_kw
};

using GibbsObserver = std::function<void(const GibbsSweepStats&)>;

inline TopicModel lda_train(const std::map<int, corpus::TokenSequence>& year_documents, const LdaOptions& opts,
                            const GibbsObserver& observer = {}) {
    const std::size_t K = opts.topics;
    if (K < 2)
        fail(ErrorKind::config, "LDA needs at least 2 topics");
    if (year_documents.size() < 2)
        fail(ErrorKind::insufficient_data, "LDA needs at least 2 documents");
    const double alpha = opts.alpha.value_or(50.0 / static_cast<double>(K));
    if (!(alpha > 0.0) || !(opts.beta > 0.0))
        fail(ErrorKind::config, "alpha and beta must be positive");

    TopicModel model;
    model.topics = K;
    model.alpha = alpha;
    model.beta = opts.beta;
    {
        std::map<std::string, std::size_t> index;
        for (const auto& [year, tokens] : year_documents)
            for (const auto& t : tokens)
                index.emplace(t, 0);
        for (auto& [term, id] : index) {
            id = model.vocabulary.size();
            model.vocabulary.push_back(term);
        }
        if (model.vocabulary.empty())
            fail(ErrorKind::empty_corpus, "LDA documents contain no tokens");
        if (K > model.vocabulary.size())
            fail(ErrorKind::config, "topic count " + std::to_string(K) + " exceeds vocabulary size " +
                                        std::to_string(model.vocabulary.size()));
    }
    std::unordered_map<std::string, std::size_t> ids;
    for (std::size_t i = 0; i < model.vocabulary.size(); ++i)
        ids.emplace(model.vocabulary[i], i);

    const std::size_t V = model.vocabulary.size();
    const std::size_t D = year_documents.size();
    std::vector<std::vector<std::size_t>> words(D), assign(D);
    std::vector<std::size_t> n_dk(D * K, 0), n_kw(K * V, 0), n_k(K, 0);
    Rng rng(opts.seed);
    std::size_t tokens = 0;
    {
        std::size_t d = 0;
        for (const auto& [year, toks] : year_documents) {
            model.documents.push_back(year);
            for (const auto& t : toks) {
                const auto w = ids.at(t);
                const auto z = static_cast<std::size_t>(rng.below(K));
                words[d].push_back(w);
                assign[d].push_back(z);
                ++n_dk[d * K + z];
                ++n_kw[z * V + w];
                ++n_k[z];
                ++tokens;
            }
            ++d;
        }
    }

    const double vbeta = static_cast<double>(V) * opts.beta;
    std::vector<double> p(K);
    for (std::size_t sweep = 0; sweep < opts.iterations; ++sweep) {
        for (std::size_t d = 0; d < D; ++d) {
            for (std::size_t i = 0; i < words[d].size(); ++i) {
                const auto w = words[d][i];
                auto z = assign[d][i];
                --n_dk[d * K + z];
                --n_kw[z * V + w];
                --n_k[z];
                double total = 0.0;
                for (std::size_t k = 0; k < K; ++k) {
                    total += (static_cast<double>(n_dk[d * K + k]) + alpha) *
                             (static_cast<double>(n_kw[k * V + w]) + opts.beta) /
                             (static_cast<double>(n_k[k]) + vbeta);
                    p[k] = total;
                }
                const double u = rng.uniform() * total;
                z = static_cast<std::size_t>(std::upper_bound(p.begin(), p.end(), u) - p.begin());
                if (z >= K)
                    z = K - 1;
                assign[d][i] = z;
                ++n_dk[d * K + z];
                ++n_kw[z * V + w];
                ++n_k[z];
            }
        }
        if (observer) {
            GibbsSweepStats st;
            st.sweep = sweep;
            st.tokens = tokens;
            for (auto c : n_k) st.topic_total += c;
            for (auto c : n_dk) st.doc_topic_total += c;
            for (auto c : n_kw) st.topic_word_total += c;
            observer(st);
        }
    }

    model.topic_word = embedding::Matrix(K, V);
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t w = 0; w < V; ++w)
            model.topic_word(k, w) =
                (static_cast<double>(n_kw[k * V + w]) + opts.beta) / (static_cast<double>(n_k[k]) + vbeta);
    model.doc_topic = embedding::Matrix(D, K);
    for (std::size_t d = 0; d < D; ++d) {
        const double len = static_cast<double>(words[d].size());
        for (std::size_t k = 0; k < K; ++k)
            model.doc_topic(d, k) =
                (static_cast<double>(n_dk[d * K + k]) + alpha) / (len + static_cast<double>(K) * alpha);
    }
    return model;
}

inline std::vector<double> year_topic_distribution(const TopicModel& model, int year) {
    auto it = std::find(model.documents.begin(), model.documents.end(), year);
    if (it == model.documents.end())
        fail(ErrorKind::range, "year " + std::to_string(year) + " is not a document of this topic model");
    const auto d = static_cast<std::size_t>(it - model.documents.begin());
    auto row = model.doc_topic.row(d);
    return {row.begin(), row.end()};
}

struct TopicWord {
    std::string term;
    double probability = 0.0;
};

inline std::vector<TopicWord> top_topic_words(const TopicModel& model, std::size_t topic, std::size_t n) {
    if (topic >= model.topics)
        fail(ErrorKind::range, "topic " + std::to_string(topic) + " out of range");
    std::vector<TopicWord> all;
    for (std::size_t w = 0; w < model.vocabulary.size(); ++w)
        all.push_back({model.vocabulary[w], model.topic_word(topic, w)});
    std::stable_sort(all.begin(), all.end(),
                     [](const auto& a, const auto& b) { return a.probability > b.probability; });
    if (all.size() > n)
        all.resize(n);
    return all;
}

}  // namespace drift::analytics
