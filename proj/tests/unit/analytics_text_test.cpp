#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "drift/analytics/keywords.hpp"
#include "drift/analytics/lda.hpp"
#include "drift/analytics/productivity.hpp"
#include "drift/analytics/word_cloud.hpp"
#include "drift/analytics/yake.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace drift;
using namespace drift::analytics;
using Catch::Approx;
using drift::testing::make_slice;

namespace {

template <class F>
ErrorKind kind_of(F&& f) {
    try {
        f();
    } catch (const drift::Error& e) {
        return e.kind();
    }
    FAIL("expected a drift::Error");
    return ErrorKind::io;
}

}  // namespace

TEST_CASE("keyword frequencies") {
    const auto s = make_slice(2000, {{"a", "a", "b"}});
    KeywordQuery q;
    q.k = 5;
    const auto ks = extract_keywords(s, q);
    REQUIRE(ks.size() == 2);
    CHECK(ks[0].term == "a");
    CHECK(ks[0].raw_freq == 2);
    CHECK(ks[0].norm_freq == Approx(2.0 / 3.0));
    CHECK(ks[1].norm_freq == Approx(1.0 / 3.0));
    q.k = 1;
    CHECK(extract_keywords(s, q).size() == 1);
    q.k = 0;
    CHECK(kind_of([&] { extract_keywords(s, q); }) == ErrorKind::config);
}

TEST_CASE("keyword POS filter") {
    REQUIRE(corpus::tag_word("the") == corpus::PosTag::det);
    const auto s = make_slice(2000, {{"the", "the", "the", "model", "2019"}});
    KeywordQuery q;
    q.pos_filter = std::set<corpus::PosTag>{corpus::PosTag::noun};
    const auto ks = extract_keywords(s, q);
    REQUIRE(ks.size() == 1);
    CHECK(ks[0].term == "model");
}

TEST_CASE("tfidf matches the reference computation") {
    std::mt19937 rng(11);
    const std::vector<std::string> pool{"a", "b", "c", "d", "e", "f", "g"};
    std::vector<std::vector<std::string>> tokens(4);
    corpus::SliceMap slices;
    for (int y = 0; y < 4; ++y) {
        std::vector<std::vector<std::string>> docs(3);
        for (auto& d : docs)
            for (int i = 0; i < 6; ++i) {
                // Restrict the pool per year so document frequencies differ.
                d.push_back(pool[rng() % (3 + static_cast<unsigned>(y))]);
                tokens[static_cast<std::size_t>(y)].push_back(d.back());
            }
        slices.emplace(2000 + y, make_slice(2000 + y, docs));
    }
    for (int y = 0; y < 4; ++y)
        for (const auto& t : pool)
            CHECK(tfidf(slices.at(2000 + y), t, slices) ==
                  Approx(oracle::tfidf(tokens, static_cast<std::size_t>(y), t)).margin(1e-15));

    SECTION("a term exclusive to one slice outranks a shared one of equal frequency") {
        corpus::SliceMap m;
        m.emplace(2000, make_slice(2000, {{"shared", "only"}}));
        m.emplace(2001, make_slice(2001, {{"shared", "other"}}));
        CHECK(tfidf(m.at(2000), "only", m) > tfidf(m.at(2000), "shared", m));
        CHECK(tfidf(m.at(2000), "shared", m) == 0.0);
        KeywordQuery q;
        q.scoring = KeywordScoring::tfidf;
        q.all_slices = &m;
        CHECK(extract_keywords(m.at(2000), q)[0].term == "only");
    }
    SECTION("tfidf scoring without the slice set is a config error") {
        KeywordQuery q;
        q.scoring = KeywordScoring::tfidf;
        CHECK(kind_of([&] { extract_keywords(slices.at(2000), q); }) == ErrorKind::config);
    }
}

TEST_CASE("word cloud font scaling") {
    WordCloudOptions o;
    o.min_font = 10;
    o.max_font = 40;
    const auto s = make_slice(2000, {{"a", "a", "a", "a", "b", "b", "c"}});
    const auto cloud = word_cloud_data(s, o);
    REQUIRE(cloud.size() == 3);
    CHECK(cloud[0].term == "a");
    CHECK(cloud[0].weight == Approx(40.0));
    CHECK(cloud[1].weight == Approx(20.0));
    CHECK(cloud[2].weight == Approx(10.0));
    for (const auto& e : cloud)
        CHECK(e.color == o.color);

    SECTION("a single term gets the largest font") {
        const auto one = word_cloud_data(make_slice(2000, {{"x", "x"}}), o);
        REQUIRE(one.size() == 1);
        CHECK(one[0].weight == Approx(40.0));
    }
    SECTION("k limits the number of terms") {
        o.k = 1;
        CHECK(word_cloud_data(s, o).size() == 1);
    }
    SECTION("invalid font range") {
        o.min_font = 50;
        CHECK(kind_of([&] { word_cloud_data(s, o); }) == ErrorKind::config);
    }
}

TEST_CASE("entropy closed forms") {
    using V = std::vector<std::size_t>;
    CHECK(entropy_bits(V{7}) == 0.0);
    CHECK(entropy_bits(V{1, 1}) == Approx(1.0));
    CHECK(entropy_bits(V{2, 1, 1}) == Approx(1.5));
    CHECK(entropy_bits(V{}) == 0.0);
    CHECK(entropy_bits(V{0, 0, 5}) == 0.0);
}

TEST_CASE("entropy agrees with the reference on random count vectors") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::size_t> counts(1 + rng() % 40);
        for (auto& c : counts)
            c = rng() % 50;
        counts[0] += 1;
        CHECK(entropy_bits(counts) == Approx(oracle::entropy(counts)).margin(1e-9));
        const auto p = continuation_probabilities(counts);
        double sum = 0.0;
        for (double x : p)
            sum += x;
        CHECK(sum == Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("productivity counts bigrams around the term") {
    const auto s = make_slice(2000, {{"t", "a"}, {"t", "a"}, {"t", "b"}, {"c", "t"}, {"x", "y"}});
    const auto counts = continuation_counts("t", s);
    CHECK(counts.size() == 3);
    CHECK(counts.at("t a") == 2);
    CHECK(productivity("t", s) == Approx(1.5));
    CHECK(productivity("absent", s) == 0.0);
}

TEST_CASE("trend classification") {
    ProductivitySeries s;
    s.term = "t";
    for (int y = 0; y < 5; ++y) {
        s.norm_freq[2000 + y] = 0.01 * (y + 1);
        s.entropy[2000 + y] = 0.5 * y;
    }
    CHECK(classify_trend(s, 5) == TrendClass::growing);
    for (auto& [y, e] : s.entropy)
        e = 1.0;
    CHECK(classify_trend(s, 5) == TrendClass::consolidated);
    for (auto& [y, f] : s.norm_freq)
        f = 0.1 - 0.01 * (y - 2000);
    CHECK(classify_trend(s, 5) == TrendClass::declining);
    CHECK(kind_of([&] { classify_trend(s, 6); }) == ErrorKind::insufficient_data);
    CHECK(kind_of([&] { classify_trend(s, 1); }) == ErrorKind::config);
}

TEST_CASE("productivity series over slices") {
    corpus::SliceMap m;
    for (int y = 0; y < 6; ++y) {
        std::vector<std::vector<std::string>> docs;
        for (int i = 0; i <= y; ++i)
            docs.push_back({"t", "c" + std::to_string(i)});
        docs.push_back({"filler", "filler", "filler", "filler"});
        m.emplace(2010 + y, make_slice(2010 + y, docs));
    }
    const auto s = productivity_series("t", m, 2010, 2015, 5);
    CHECK(s.entropy.size() == 6);
    CHECK(s.entropy.at(2010) == 0.0);
    CHECK(s.entropy.at(2013) == Approx(2.0));
    REQUIRE(s.trend.has_value());
    CHECK(*s.trend == TrendClass::growing);
    CHECK_FALSE(productivity_series("t", m, 2010, 2012, 5).trend.has_value());
}

TEST_CASE("YAKE scores") {
    CHECK(yake_display_score(1e-5) == Approx(1.0));
    CHECK(yake_display_score(1e-3) < yake_display_score(1e-4));

    const std::string text =
        "Neural machine translation improves translation quality. Machine translation systems use attention. "
        "Attention layers help neural machine translation. Statistical parsing is an older approach to "
        "translation quality.";
    YakeOptions o;
    o.k = 10;
    const auto a = yake_keywords(text, o);
    const auto b = yake_keywords(text, o);
    REQUIRE_FALSE(a.empty());
    CHECK(a.size() <= 10);
    REQUIRE(a.size() == b.size());
    std::set<std::string> seen;
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].ngram == b[i].ngram);
        CHECK(a[i].raw_score == b[i].raw_score);
        CHECK(a[i].raw_score > 0.0);
        CHECK(a[i].display_score == Approx(yake_display_score(a[i].raw_score)));
        CHECK(seen.insert(a[i].ngram).second);
        if (i > 0)
            CHECK(a[i - 1].raw_score <= a[i].raw_score);
    }
    bool found = false;
    for (const auto& kw : a)
        found |= kw.ngram.find("translation") != std::string::npos;
    CHECK(found);

    CHECK(yake_keywords("", o).empty());
    CHECK(yake_keywords(" ... ", o).empty());
    o.max_ngram = 0;
    CHECK(kind_of([&] { yake_keywords(text, o); }) == ErrorKind::config);
}

TEST_CASE("LDA Gibbs sampler") {
    // Two disjoint word groups; years 2000 and 2001 are pure, later years mix.
    const std::vector<std::string> group_a{"ant", "apple", "arch", "atom", "axle"};
    const std::vector<std::string> group_b{"bear", "bell", "bird", "boat", "bone"};
    std::mt19937_64 rng(21);
    std::map<int, corpus::TokenSequence> docs;
    auto draw = [&](double share_a, std::size_t n) {
        corpus::TokenSequence d;
        for (std::size_t i = 0; i < n; ++i) {
            const bool a = std::uniform_real_distribution<double>(0, 1)(rng) < share_a;
            d.push_back((a ? group_a : group_b)[rng() % 5]);
        }
        return d;
    };
    docs[2000] = draw(1.0, 300);
    docs[2001] = draw(0.0, 300);
    docs[2002] = draw(0.5, 300);
    docs[2003] = draw(0.8, 300);
    docs[2004] = draw(0.2, 300);

    LdaOptions o;
    o.topics = 2;
    o.iterations = 200;
    o.seed = 4;
    std::size_t sweeps = 0;
    const auto model = lda_train(docs, o, [&](const GibbsSweepStats& st) {
        ++sweeps;
        CHECK(st.tokens == 1500);
        CHECK(st.topic_total == st.tokens);
        CHECK(st.doc_topic_total == st.tokens);
        CHECK(st.topic_word_total == st.tokens);
    });
    CHECK(sweeps == 200);
    CHECK(model.alpha == Approx(25.0));
    for (std::size_t k = 0; k < model.topics; ++k) {
        double sum = 0.0;
        for (std::size_t w = 0; w < model.vocabulary.size(); ++w)
            sum += model.topic_word(k, w);
        CHECK(sum == Approx(1.0).margin(1e-12));
    }
    for (std::size_t d = 0; d < model.documents.size(); ++d) {
        double sum = 0.0;
        for (std::size_t k = 0; k < model.topics; ++k)
            sum += model.doc_topic(d, k);
        CHECK(sum == Approx(1.0).margin(1e-12));
    }

    // Purity of the five most probable words of each topic.
    std::size_t pure = 0;
    for (std::size_t k = 0; k < 2; ++k) {
        const auto top = top_topic_words(model, k, 5);
        std::size_t in_a = 0;
        for (const auto& w : top)
            in_a += std::find(group_a.begin(), group_a.end(), w.term) != group_a.end();
        pure += std::max(in_a, 5 - in_a);
    }
    CHECK(static_cast<double>(pure) / 10.0 >= 0.9);
    const auto pure_a = year_topic_distribution(model, 2000);
    CHECK(std::max(pure_a[0], pure_a[1]) > 0.8);

    CHECK(kind_of([&] { year_topic_distribution(model, 1990); }) == ErrorKind::range);
    o.topics = 11;
    CHECK(kind_of([&] { lda_train(docs, o); }) == ErrorKind::config);
    o.topics = 1;
    CHECK(kind_of([&] { lda_train(docs, o); }) == ErrorKind::config);
    o.topics = 2;
    CHECK(kind_of([&] { lda_train({{2000, docs[2000]}}, o); }) == ErrorKind::insufficient_data);
}

TEST_CASE("LDA is deterministic for a seed") {
    std::map<int, corpus::TokenSequence> docs{{2000, {"a", "b", "a", "c"}}, {2001, {"c", "d", "d", "b"}}};
    LdaOptions o;
    o.topics = 2;
    o.iterations = 20;
    const auto a = lda_train(docs, o);
    const auto b = lda_train(docs, o);
    CHECK(a.topic_word == b.topic_word);
    CHECK(a.doc_topic == b.doc_topic);
}
