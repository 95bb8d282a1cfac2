#pragma once

// Shared builders for synthetic corpora and scratch directories.

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "drift/corpus/slice.hpp"
#include "drift/embedding/train_config.hpp"

namespace drift::testing {

class TempDir {
public:
    explicit TempDir(const std::string& tag = "drift") {
        static int counter = 0;
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                (tag + "-" + std::to_string(rd()) + "-" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline void write_text(const std::filesystem::path& p, const std::string& s) {
    std::ofstream out(p, std::ios::binary);
    out << s;
}

inline std::string read_text(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Slice from already-tokenized documents.
inline corpus::CorpusSlice make_slice(int year, const std::vector<std::vector<std::string>>& docs) {
    corpus::CorpusSlice s;
    s.year = year;
    for (const auto& d : docs) {
        std::string raw;
        for (const auto& t : d)
            raw += (raw.empty() ? "" : " ") + t;
        s.add_document(d, raw + ".");
    }
    return s;
}

/// Words w0..w{n-1} with the given prefix.
inline std::vector<std::string> word_list(const std::string& prefix, std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(prefix + std::to_string(i));
    return out;
}

/// Topical corpus: every word keeps one context cluster in both years except `pivot`, which
/// moves from cluster 0 to cluster 2 between the first and second year.
struct PlantedDrift {
    std::vector<std::vector<std::string>> clusters;
    std::vector<std::string> distractors;
    std::string pivot = "pivot";
    corpus::SliceMap slices;
    int year_a = 2000;
    int year_b = 2001;
};

inline PlantedDrift planted_drift_corpus(std::uint64_t seed, std::size_t distractors = 24,
                                         std::size_t sentences_per_word = 30) {
    PlantedDrift p;
    const char* names[] = {"alpha", "beta", "gamma", "delta"};
    for (auto* n : names)
        p.clusters.push_back(word_list(n, 8));
    p.distractors = word_list("word", distractors);
    std::mt19937_64 rng(seed);
    auto sentence = [&](const std::string& w, std::size_t cluster) {
        std::vector<std::string> s;
        const auto& c = p.clusters[cluster];
        for (int i = 0; i < 6; ++i)
            s.push_back(c[rng() % c.size()]);
        s.insert(s.begin() + static_cast<long>(rng() % 7), w);
        return s;
    };
    for (int year : {p.year_a, p.year_b}) {
        std::vector<std::vector<std::string>> docs;
        for (std::size_t r = 0; r < sentences_per_word; ++r) {
            for (std::size_t d = 0; d < p.distractors.size(); ++d)
                docs.push_back(sentence(p.distractors[d], d % p.clusters.size()));
            docs.push_back(sentence(p.pivot, year == p.year_a ? 0 : 2));
        }
        std::shuffle(docs.begin(), docs.end(), rng);
        p.slices.emplace(year, make_slice(year, docs));
    }
    return p;
}

inline embedding::TrainConfig small_config(std::uint64_t seed = 1) {
    embedding::TrainConfig c;
    c.dim = 16;
    c.static_iters = 5;
    c.dynamic_iters = 5;
    c.negatives = 5;
    c.window = 3;
    c.learning_rate = 0.05;
    c.seed = seed;
    c.min_count = 1;
    c.threads = 1;
    return c;
}

/// Raw JSON corpus in the arXiv cache layout, spread over the given years.
inline std::string toy_raw_corpus_json(int first_year, int last_year, std::size_t docs_per_year,
                                       std::uint64_t seed = 7) {
    const std::vector<std::vector<std::string>> topics = {
        {"neural", "network", "deep", "learning", "transformer", "attention", "layer", "gradient"},
        {"statistical", "markov", "hidden", "probability", "bayesian", "inference", "gaussian", "mixture"},
        {"speech", "recognition", "acoustic", "phonetic", "audio", "signal", "spoken", "decoder"}};
    std::mt19937_64 rng(seed);
    std::string out = "[";
    bool first = true;
    for (int y = first_year; y <= last_year; ++y) {
        for (std::size_t d = 0; d < docs_per_year; ++d) {
            const auto& t = topics[rng() % topics.size()];
            std::string text = "We study";
            for (int i = 0; i < 30; ++i)
                text += " " + t[rng() % t.size()];
            text += y >= (first_year + last_year) / 2 ? " with bert models." : " with lstm models.";
            out += std::string(first ? "" : ",") + "{\"url\":\"http://arxiv.org/abs/" + std::to_string(y) + "." +
                   std::to_string(d) + "\",\"date\":\"" + std::to_string(y) +
                   "-05-01\",\"title\":\"t\",\"authors\":[\"a\"],\"abstract\":\"" + text + "\"}";
            first = false;
        }
    }
    return out + "]";
}

}  // namespace drift::testing
