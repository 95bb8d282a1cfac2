// Acceptance runner: one PASS/FAIL/SKIP line per primary criterion. Exits non-zero when a
// gating criterion fails.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "drift/analytics/acceleration.hpp"
#include "drift/analytics/keywords.hpp"
#include "drift/analytics/lda.hpp"
#include "drift/analytics/productivity.hpp"
#include "drift/analytics/semantic_drift.hpp"
#include "drift/analytics/yake.hpp"
#include "drift/embedding/similarity.hpp"
#include "drift/embedding/trainer.hpp"
#include "drift/projection/kmeans.hpp"
#include "drift/service/dataset.hpp"
#include "drift/service/model_store.hpp"
#include "support/fake_arxiv.hpp"
#include "support/fixtures.hpp"
#include "support/gradcheck.hpp"
#include "support/handmade_model.hpp"
#include "support/oracles.hpp"
#include "support/process.hpp"

namespace fs = std::filesystem;
using namespace drift;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    enum class Status { pass, fail, skip } status = Status::pass;
    std::string detail;
};

Outcome pass(std::string d) { return {Outcome::Status::pass, std::move(d)}; }
Outcome fail_with(std::string d) { return {Outcome::Status::fail, std::move(d)}; }
Outcome verdict(bool ok, std::string d) { return ok ? pass(std::move(d)) : fail_with(std::move(d)); }

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

// ---------------------------------------------------------------------------------------------

Outcome compass_freeze() {
    const auto t0 = Clock::now();
    // 24 distractors plus the pivot, 4 sentences each, two years: 200 documents.
    const auto p = testing::planted_drift_corpus(11, 24, 4);
    std::size_t docs = 0;
    for (const auto& [y, s] : p.slices)
        docs += s.documents.size();
    const auto config = testing::small_config(11);
    auto vocab = corpus::build_vocabulary(p.slices, config.min_count);
    const auto compass = embedding::train_compass(p.slices, std::move(vocab), config);
    const auto target = compass.target_matrix;
    bool frozen = true;
    for (const auto& [year, slice] : p.slices) {
        const auto ym = embedding::train_year_slice(compass, slice, config);
        frozen = frozen && compass.target_matrix == target;
    }
    const auto model = embedding::train_temporal_model(p.slices, config);
    frozen = frozen && model.compass().target_matrix == target;
    const double secs = seconds_since(t0);
    return verdict(frozen && secs < 60.0,
                   std::to_string(docs) + " documents, target matrix bit-identical after every year slice, " +
                       fmt(secs) + " s");
}

Outcome gradient_check() {
    const auto r = testing::cbow_gradient_check(150, 2024);
    return verdict(r.triples >= 100 && r.max_relative_error < 1e-4,
                   std::to_string(r.triples) + " triples, max relative error " + fmt(r.max_relative_error));
}

Outcome planted_drift() {
    const auto t0 = Clock::now();
    int euclid_hits = 0, cosine_hits = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto p = testing::planted_drift_corpus(seed);
        const auto model = embedding::train_temporal_model(p.slices, testing::small_config(seed));
        std::vector<std::string> words = p.distractors;
        words.push_back(p.pivot);
        for (auto metric : {analytics::DistanceMetric::euclidean, analytics::DistanceMetric::cosine}) {
            const auto r = analytics::semantic_drift(model, words, p.year_a, p.year_b, metric);
            if (r.entries.front().word == p.pivot)
                ++(metric == analytics::DistanceMetric::euclidean ? euclid_hits : cosine_hits);
        }
    }
    const double secs = seconds_since(t0);
    return verdict(euclid_hits >= 9 && cosine_hits >= 9 && secs < 120.0,
                   "pivot ranked first in " + std::to_string(euclid_hits) + "/10 seeds (euclidean), " +
                       std::to_string(cosine_hits) + "/10 (cosine), 24 distractors, " + fmt(secs) + " s");
}

Outcome entropy_forms() {
    using V = std::vector<std::size_t>;
    bool ok = std::abs(analytics::entropy_bits(V{7}) - 0.0) <= 1e-9 &&
              std::abs(analytics::entropy_bits(V{1, 1}) - 1.0) <= 1e-9 &&
              std::abs(analytics::entropy_bits(V{2, 1, 1}) - 1.5) <= 1e-9;
    const auto toy = testing::make_slice(2000, {{"t", "a"}, {"t", "a"}, {"t", "b"}, {"c", "t"}});
    ok = ok && std::abs(analytics::productivity("t", toy) - 1.5) <= 1e-9;
    std::mt19937_64 rng(5);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        V counts(1 + rng() % 30);
        for (auto& c : counts)
            c = rng() % 40;
        counts[0] += 1;
        worst = std::max(worst, std::abs(analytics::entropy_bits(counts) - oracle::entropy(counts)));
    }
    return verdict(ok && worst <= 1e-9, "closed forms exact to 1e-9; max oracle deviation " + fmt(worst) +
                                            " over 100 random count vectors");
}

Outcome acceleration_algebra() {
    const auto m = testing::random_model(20, 8, 2000, 3, 99);
    const std::vector<std::string> words(m.vocabulary().terms().begin(), m.vocabulary().terms().end());
    bool antisymmetric = true, zero_diagonal = true;
    for (const auto& a : words)
        for (const auto& b : words) {
            const auto f = analytics::acceleration_between(m, a, b, 2000, 2002).value;
            const auto r = analytics::acceleration_between(m, a, b, 2002, 2000).value;
            antisymmetric = antisymmetric && f == -r;
            zero_diagonal = zero_diagonal && analytics::acceleration_between(m, a, b, 2001, 2001).value == 0.0;
            if (a == b)
                zero_diagonal = zero_diagonal && f == 0.0;
        }
    bool top_matches = true;
    for (int t : {2000, 2001}) {
        std::vector<analytics::AccelerationEntry> all;
        for (std::size_t i = 0; i < words.size(); ++i)
            for (std::size_t j = i + 1; j < words.size(); ++j)
                all.push_back(analytics::acceleration(m, words[i], words[j], t));
        const auto best = std::max_element(all.begin(), all.end(), [](const auto& x, const auto& y) {
            return x.value < y.value;
        });
        const auto ranked = analytics::top_accelerated_pairs(m, words, t, 190);
        std::vector<double> sorted_values;
        for (const auto& e : all)
            sorted_values.push_back(e.value);
        std::sort(sorted_values.rbegin(), sorted_values.rend());
        top_matches = top_matches && ranked.pairs.size() == all.size() && ranked.pairs.front().value == best->value &&
                      ranked.pairs.front().word_a == best->word_a && ranked.pairs.front().word_b == best->word_b;
        for (std::size_t i = 0; i < ranked.pairs.size() && top_matches; ++i)
            top_matches = ranked.pairs[i].value == sorted_values[i];
    }
    return verdict(antisymmetric && zero_diagonal && top_matches,
                   std::string("antisymmetry ") + (antisymmetric ? "exact" : "broken") + ", zero diagonal " +
                       (zero_diagonal ? "exact" : "broken") + ", top pairs " +
                       (top_matches ? "equal" : "differ from") + " brute force over 190 pairs of a 20-word model");
}

Outcome lda_checks() {
    const auto t0 = Clock::now();
    const std::vector<std::string> a{"ant", "apple", "arch", "atom", "axle", "acorn"};
    const std::vector<std::string> b{"bear", "bell", "bird", "boat", "bone", "brick"};
    std::mt19937_64 rng(8);
    std::map<int, corpus::TokenSequence> docs;
    const double shares[] = {1.0, 0.0, 0.9, 0.1, 0.5, 0.7, 0.3, 1.0};
    for (int d = 0; d < 8; ++d) {
        auto& doc = docs[2000 + d];
        for (int i = 0; i < 250; ++i) {
            const bool from_a = std::uniform_real_distribution<double>(0, 1)(rng) < shares[d];
            doc.push_back((from_a ? a : b)[rng() % a.size()]);
        }
    }
    analytics::LdaOptions o;
    o.topics = 2;
    o.iterations = 500;
    o.seed = 2;
    bool conserved = true;
    std::size_t sweeps = 0;
    const auto tm = analytics::lda_train(docs, o, [&](const analytics::GibbsSweepStats& s) {
        ++sweeps;
        conserved = conserved && s.topic_total == s.tokens && s.doc_topic_total == s.tokens &&
                    s.topic_word_total == s.tokens;
    });
    double worst_row = 0.0;
    for (std::size_t k = 0; k < tm.topics; ++k) {
        double s = 0.0;
        for (std::size_t w = 0; w < tm.vocabulary.size(); ++w)
            s += tm.topic_word(k, w);
        worst_row = std::max(worst_row, std::abs(s - 1.0));
    }
    for (std::size_t d = 0; d < tm.documents.size(); ++d) {
        double s = 0.0;
        for (std::size_t k = 0; k < tm.topics; ++k)
            s += tm.doc_topic(d, k);
        worst_row = std::max(worst_row, std::abs(s - 1.0));
    }
    std::size_t pure = 0;
    for (std::size_t k = 0; k < 2; ++k) {
        std::size_t in_a = 0;
        for (const auto& w : analytics::top_topic_words(tm, k, 6))
            in_a += std::find(a.begin(), a.end(), w.term) != a.end();
        pure += std::max(in_a, 6 - in_a);
    }
    const double purity = static_cast<double>(pure) / 12.0;
    const double secs = seconds_since(t0);
    return verdict(worst_row <= 1e-6 && conserved && sweeps == o.iterations && purity >= 0.9 && secs < 120.0,
                   "2000 tokens, row sums within " + fmt(worst_row) + ", counts conserved in " +
                       std::to_string(sweeps) + " sweeps, purity " + fmt(purity) + ", " + fmt(secs) + " s");
}

Outcome clustering() {
    int hits = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        std::mt19937_64 rng(1000 + seed);
        std::normal_distribution<double> g(0.0, 0.7);
        projection::PointSet pts;
        const double centers[3][3] = {{0, 0, 0}, {12, 0, 0}, {0, 12, 0}};
        for (const auto& c : centers)
            for (int i = 0; i < 15; ++i)
                pts.push_back({c[0] + g(rng), c[1] + g(rng), c[2] + g(rng)});
        hits += projection::optimal_k(pts, 10, seed).k == 3;
    }
    double worst = 0.0;
    std::mt19937_64 rng(77);
    for (std::size_t n : {10u, 50u, 120u, 200u}) {
        projection::PointSet pts(n, projection::Vector(4));
        for (auto& v : pts)
            for (auto& x : v)
                x = std::uniform_real_distribution<double>(-1, 1)(rng);
        std::vector<int> labels(n);
        for (std::size_t i = 0; i < n; ++i)
            labels[i] = static_cast<int>(i % 3 == 0 ? 0 : rng() % 4);
        worst = std::max(worst, std::abs(projection::silhouette(pts, labels) - oracle::silhouette(pts, labels)));
    }
    return verdict(hits == 10 && worst <= 1e-9, "k=3 selected in " + std::to_string(hits) +
                                                    "/10 seeds; max silhouette deviation " + fmt(worst) +
                                                    " for n <= 200");
}

Outcome tfidf_and_yake() {
    std::mt19937 rng(4);
    const std::vector<std::string> pool{"a", "b", "c", "d", "e", "f"};
    std::vector<std::vector<std::string>> tokens(5);
    corpus::SliceMap slices;
    for (int y = 0; y < 5; ++y) {
        std::vector<std::vector<std::string>> docs(2);
        for (auto& d : docs)
            for (int i = 0; i < 7; ++i) {
                d.push_back(pool[rng() % (2 + static_cast<unsigned>(y))]);
                tokens[static_cast<std::size_t>(y)].push_back(d.back());
            }
        slices.emplace(2000 + y, testing::make_slice(2000 + y, docs));
    }
    bool exact = true;
    for (int y = 0; y < 5; ++y)
        for (const auto& t : pool)
            exact = exact && analytics::tfidf(slices.at(2000 + y), t, slices) ==
                                 oracle::tfidf(tokens, static_cast<std::size_t>(y), t);
    double worst_display = 0.0;
    for (double raw : {1e-5, 3.7e-4, 0.02, 1.0, 42.0}) {
        const double expected = 1.0 / (1e5 * raw);
        worst_display = std::max(worst_display, std::abs(analytics::yake_display_score(raw) - expected) / expected);
    }
    const std::string text =
        "Neural machine translation improves translation quality. Attention helps neural machine translation. "
        "Statistical machine translation used phrase tables. Phrase tables are large.";
    const auto first = analytics::yake_keywords(text, 3, 10);
    const auto second = analytics::yake_keywords(text, 3, 10);
    bool same = first.size() == second.size() && !first.empty();
    for (std::size_t i = 0; same && i < first.size(); ++i)
        same = first[i].ngram == second[i].ngram && first[i].raw_score == second[i].raw_score;
    return verdict(exact && worst_display <= 1e-12 && same,
                   std::string("tf-idf ") + (exact ? "bit-identical to" : "differs from") +
                       " the oracle on 5 toy slices; display transform error " + fmt(worst_display) +
                       "; YAKE ranking " + (same ? "deterministic" : "unstable"));
}

// ---------------------------------------------------------------------------------------------

struct Pipeline {
    std::string cli;
    fs::path work;
};

std::string run_ok(const std::vector<std::string>& argv) {
    const auto r = testing::run_process(argv);
    if (r.exit_code != 0)
        throw std::runtime_error(argv[1] + " exited with " + std::to_string(r.exit_code) + ": " + r.err);
    return r.out;
}

/// fetch -> preprocess -> train -> analyze into `dir`; returns the files whose bytes must match.
std::map<std::string, std::string> pipeline_run(const Pipeline& p, const fs::path& dir, const std::string& base_url) {
    fs::create_directories(dir);
    const auto raw = dir / "raw.jsonl", data = dir / "corpus.jsonl", models = dir / "models", out = dir / "out";
    run_ok({p.cli, "fetch", "--category", "cs.CL", "--max-results", "120", "--out", raw.string(), "--cache-dir",
            (p.work / "arxiv_cache").string(), "--base-url", base_url, "--page-size", "40", "--delay-ms", "0"});
    run_ok({p.cli, "preprocess", "--json-path", raw.string(), "--data-path", data.string()});
    run_ok({p.cli, "train", "--data-path", data.string(), "--model-root", models.string(), "--dim", "16",
            "--static-iters", "4", "--dynamic-iters", "4", "--window", "3", "--negatives", "5", "--min-count", "2",
            "--seed", "5", "--threads", "1"});
    const std::vector<std::vector<std::string>> analyses{
        {"word_cloud", "--k", "20"},
        {"productivity", "--words", "neural,speech,embeddings"},
        {"acceleration", "--k", "15"},
        {"semantic_drift", "--k", "15", "--k-sim", "4"},
        {"semantic_drift", "--k", "10", "--k-sim", "3", "--projection", "tsne", "--iterations", "200"},
        {"track_clusters", "--k", "15"},
        {"acceleration_heatmap", "--k", "8"},
        {"track_trends", "--word", "neural", "--stride", "2"},
        {"yake", "--k", "10"},
        {"lda", "--topics", "3", "--iterations", "100"}};
    std::map<std::string, std::string> files;
    files["raw.jsonl"] = testing::read_text(raw);
    files["corpus.jsonl"] = testing::read_text(data);
    for (std::size_t i = 0; i < analyses.size(); ++i) {
        const auto sub = out / std::to_string(i);
        std::vector<std::string> argv{p.cli, "analyze", analyses[i][0], "--model-root", models.string(),
                                      "--out", sub.string(), "--format", "svg"};
        argv.insert(argv.end(), analyses[i].begin() + 1, analyses[i].end());
        run_ok(argv);
        files[analyses[i][0] + "#" + std::to_string(i) + ".json"] = testing::read_text(sub / (analyses[i][0] + ".json"));
        if (fs::exists(sub / (analyses[i][0] + ".svg")))
            files[analyses[i][0] + "#" + std::to_string(i) + ".svg"] =
                testing::read_text(sub / (analyses[i][0] + ".svg"));
    }
    return files;
}

Outcome end_to_end(const Pipeline& p) {
    const auto t0 = Clock::now();
    fs::remove_all(p.work);
    fs::create_directories(p.work);
    std::map<std::string, std::string> first;
    int requests = 0;
    {
        testing::FakeArxiv server(120, 2015, 6);
        first = pipeline_run(p, p.work / "run1", server.base_url());
        requests = server.requests();
    }
    // The second run has no server: fetch must be served from the cache.
    const auto second = pipeline_run(p, p.work / "run2", "http://127.0.0.1:1");
    std::vector<std::string> differing;
    for (const auto& [name, bytes] : first) {
        auto it = second.find(name);
        if (it == second.end() || it->second != bytes)
            differing.push_back(name);
    }
    std::size_t json_files = 0;
    for (const auto& [name, bytes] : first)
        json_files += name.ends_with(".json");
    std::string detail = std::to_string(first.size()) + " artifacts (" + std::to_string(json_files) +
                         " analysis JSON) compared, fetch hit the server " + std::to_string(requests) +
                         " times then the cache, " + fmt(seconds_since(t0)) + " s";
    if (!differing.empty()) {
        detail += "; differing:";
        for (const auto& d : differing)
            detail += " " + d;
    }
    return verdict(differing.empty() && second.size() == first.size(), detail);
}

/// Needs a real cs.CL crawl; reports but never gates.
Outcome qualitative(const Pipeline& p) {
    const char* corpus_path = std::getenv("DRIFT_CSCL_CORPUS");
    if (!corpus_path || !*corpus_path)
        return {Outcome::Status::skip, "set DRIFT_CSCL_CORPUS to a crawled cs.CL JSON corpus to run"};
    const auto dir = p.work / "qualitative";
    fs::create_directories(dir);
    service::PreprocessRequest req;
    req.json_path = corpus_path;
    req.data_path = dir / "corpus.jsonl";
    if (const char* k = std::getenv("DRIFT_CSCL_DATE_KEY"))
        req.date_key = k;
    service::preprocess_corpus(req);
    embedding::TrainConfig config;
    config.dim = 100;
    config.min_count = 5;
    config.threads = std::max(1u, std::thread::hardware_concurrency());
    const auto t0 = Clock::now();
    service::ModelStore store(dir / "models");
    const auto id = store.train(req.data_path, config).model_id;
    const double train_secs = seconds_since(t0);
    const auto lm = store.get(id);
    const int latest = lm->model.years().back();
    std::vector<std::string> neighbours;
    for (const auto& n : embedding::most_similar(lm->model, lm->model.embedding_of("model", latest), {latest}, 15,
                                                 {"model"}))
        neighbours.push_back(n.term);
    const std::set<std::string> family{"transformer", "bert", "gpt", "pretrain", "pretrained", "roberta", "xlnet",
                                       "elmo", "attention", "language"};
    const bool transformer_like = std::any_of(neighbours.begin(), neighbours.end(),
                                              [&](const auto& w) { return family.contains(w); });
    std::string trends;
    bool trends_ok = true;
    const std::map<std::string, analytics::TrendClass> expected{{"bert", analytics::TrendClass::growing},
                                                                {"lstm", analytics::TrendClass::declining},
                                                                {"train", analytics::TrendClass::consolidated}};
    for (const auto& [w, want] : expected) {
        const auto s = analytics::productivity_series(w, lm->slices, 2015, 2020, 5);
        const auto got = s.trend ? std::string(analytics::to_string(*s.trend)) : std::string("n/a");
        trends += " " + w + "=" + got;
        trends_ok = trends_ok && s.trend && *s.trend == want;
    }
    std::string hood;
    for (const auto& n : neighbours)
        hood += " " + n;
    return verdict(transformer_like && trends_ok && train_secs < 1800.0,
                   "neighbours of 'model' in " + std::to_string(latest) + ":" + hood + ";" + trends +
                       "; training " + fmt(train_secs) + " s");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance checks"};
    Pipeline p;
    p.work = fs::temp_directory_path() / "drift-acceptance";
    app.add_option("--cli", p.cli, "Path to the drift command-line binary")->required();
    app.add_option("--work", p.work, "Scratch directory");
    CLI11_PARSE(app, argc, argv);

    struct Criterion {
        std::string name;
        bool gating;
        std::function<Outcome()> check;
    };
    const std::vector<Criterion> criteria{
        {"compass-freeze", true, compass_freeze},
        {"gradient-check", true, gradient_check},
        {"planted-drift", true, planted_drift},
        {"entropy", true, entropy_forms},
        {"acceleration-algebra", true, acceleration_algebra},
        {"lda", true, lda_checks},
        {"clustering", true, clustering},
        {"tfidf-yake", true, tfidf_and_yake},
        {"end-to-end-determinism", true, [&] { return end_to_end(p); }},
        {"qualitative-smoke (non-gating)", false, [&] { return qualitative(p); }},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = fail_with(std::string("exception: ") + e.what());
        }
        const char* tag = o.status == Outcome::Status::pass ? "PASS" : o.status == Outcome::Status::skip ? "SKIP" : "FAIL";
        std::cout << tag << "  " << c.name << ": " << o.detail << std::endl;
        if (o.status == Outcome::Status::fail && c.gating)
            ++failures;
    }
    std::cout << (failures == 0 ? "all gating criteria passed" : std::to_string(failures) + " gating criteria failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
