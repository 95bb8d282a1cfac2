#include <catch_amalgamated.hpp>

#include <random>

#include "drift/corpus/json_loader.hpp"
#include "drift/corpus/slice.hpp"
#include "drift/corpus/vocabulary.hpp"
#include "support/fixtures.hpp"

using namespace drift;
using namespace drift::corpus;

namespace {

RawDocument doc(std::string date, std::string text) {
    RawDocument d;
    d.submitted = std::move(date);
    d.abstract = std::move(text);
    return d;
}

}  // namespace

TEST_CASE("leading year parsing") {
    CHECK(leading_year("2019-05-01") == 2019);
    CHECK(leading_year("2019") == 2019);
    CHECK(leading_year(" 1998-01-01T00:00:00Z") == 1998);
    CHECK_FALSE(leading_year("May 2019").has_value());
    CHECK_FALSE(leading_year("").has_value());
}

TEST_CASE("slicing partitions documents by year") {
    std::mt19937 rng(5);
    std::vector<RawDocument> docs;
    std::size_t expected_in_range = 0;
    for (int i = 0; i < 300; ++i) {
        const int year = 1990 + static_cast<int>(rng() % 40);
        const bool bad = rng() % 10 == 0;
        docs.push_back(doc(bad ? "unknown" : std::to_string(year) + "-01-01", "token" + std::to_string(i % 7)));
        expected_in_range += !bad && year >= 2000 && year <= 2015;
    }
    const auto r = slice_by_year(docs, PreprocessOptions{}, {2000, 2015});
    std::size_t kept = 0;
    for (const auto& [year, s] : r.slices) {
        CHECK(year >= 2000);
        CHECK(year <= 2015);
        CHECK(s.year == year);
        kept += s.documents.size();
    }
    CHECK(kept == expected_in_range);
    CHECK(kept + r.dropped() == docs.size());
}

TEST_CASE("slicing errors") {
    const std::vector<RawDocument> docs = {doc("2001-01-01", "alpha beta")};
    CHECK_THROWS_MATCHES(slice_by_year(docs, {}, {2005, 2001}), drift::Error,
                         Catch::Matchers::Predicate<drift::Error>([](const auto& e) {
                             return e.kind() == ErrorKind::config;
                         }));
    try {
        slice_by_year(docs, {}, {2010, 2020});
        FAIL("expected an error");
    } catch (const drift::Error& e) {
        CHECK(e.kind() == ErrorKind::empty_corpus);
    }
}

TEST_CASE("merge_slices concatenates a year range") {
    SliceMap m;
    m[2000] = drift::testing::make_slice(2000, {{"a", "b"}});
    m[2001] = drift::testing::make_slice(2001, {{"a"}, {"c"}});
    m[2003] = drift::testing::make_slice(2003, {{"d"}});
    const auto merged = merge_slices(m, 2000, 2001);
    CHECK(merged.documents.size() == 3);
    CHECK(merged.count_of("a") == 2);
    CHECK(merged.count_of("d") == 0);
    CHECK(merged.total_tokens() == 4);
}

TEST_CASE("vocabulary counts and ordering") {
    SliceMap m;
    m[2000] = drift::testing::make_slice(2000, {{"a", "b", "a"}, {"c"}});
    m[2001] = drift::testing::make_slice(2001, {{"b", "b", "d"}});
    SECTION("min_count filters and totals add up") {
        const auto v = build_vocabulary(m, 2);
        REQUIRE(v.size() == 2);
        CHECK(v.term(0) == "b");  // 3
        CHECK(v.term(1) == "a");  // 2
        for (std::size_t i = 0; i < v.size(); ++i) {
            std::size_t sum = 0;
            for (const auto& [year, counts] : v.per_year_counts())
                sum += counts[i];
            CHECK(sum == v.total_count(i));
        }
        CHECK(v.year_count(*v.id_of("b"), 2001) == 2);
        CHECK_FALSE(v.contains("c"));
    }
    SECTION("ties ordered lexicographically") {
        const auto v = build_vocabulary(m, 1);
        CHECK(v.terms() == std::vector<std::string>{"b", "a", "c", "d"});
    }
    SECTION("hash depends on content") {
        CHECK(build_vocabulary(m, 1).hash() == build_vocabulary(m, 1).hash());
        CHECK(build_vocabulary(m, 1).hash() != build_vocabulary(m, 2).hash());
    }
}

TEST_CASE("JSON corpus loading") {
    drift::testing::TempDir dir;
    SECTION("array form, records without the text key are skipped") {
        drift::testing::write_text(dir / "c.json",
                                   R"([{"date":"2001-01-01","abstract":"x y"},{"date":"2002-01-01"}])");
        const auto r = load_json_corpus(dir / "c.json", "abstract");
        CHECK(r.documents.size() == 1);
        CHECK(r.skipped == 1);
        CHECK(r.documents[0].submitted == "2001-01-01");
    }
    SECTION("JSON lines with a custom date key") {
        drift::testing::write_text(dir / "c.jsonl",
                                   "{\"published\":\"2003\",\"text\":\"hello\"}\n\n{\"published\":\"2004\",\"text\":\"w\"}\n");
        const auto r = load_json_corpus(dir / "c.jsonl", "text", "published");
        REQUIRE(r.documents.size() == 2);
        CHECK(r.documents[1].submitted == "2004");
    }
    SECTION("bad line is reported by number") {
        drift::testing::write_text(dir / "bad.jsonl", "{\"abstract\":\"a\"}\n{oops\n");
        try {
            load_json_corpus(dir / "bad.jsonl", "abstract");
            FAIL("expected a parse error");
        } catch (const drift::Error& e) {
            CHECK(e.kind() == ErrorKind::parse);
            CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring(":2:"));
        }
    }
    SECTION("no usable record") {
        drift::testing::write_text(dir / "none.json", R"([{"title":"t"}])");
        try {
            load_json_corpus(dir / "none.json", "abstract");
            FAIL("expected an empty-corpus error");
        } catch (const drift::Error& e) {
            CHECK(e.kind() == ErrorKind::empty_corpus);
        }
    }
    SECTION("cache round trip") {
        RawDocument d;
        d.url = "http://arxiv.org/abs/1";
        d.submitted = "2019-01-02";
        d.title = "T";
        d.authors = {"A", "B"};
        d.abstract = "text";
        write_jsonl_corpus({d, d}, dir / "cache.jsonl");
        const auto back = read_jsonl_cache(dir / "cache.jsonl");
        REQUIRE(back.size() == 2);
        CHECK(back[0].url == d.url);
        CHECK(back[0].authors == d.authors);
        CHECK(back[1].abstract == "text");
    }
}
