#include <catch_amalgamated.hpp>

#include <future>

#include "drift/service/jobs.hpp"
#include "drift/service/methods.hpp"
#include "drift/service/render.hpp"
#include "support/service_env.hpp"

using namespace drift;
using namespace drift::service;
using drift::testing::service_env;

namespace {

template <class F>
drift::Error error_of(F&& f) {
    try {
        f();
    } catch (const drift::Error& e) {
        return e;
    }
    FAIL("expected a drift::Error");
    return drift::Error(ErrorKind::io, "");
}

const LoadedModel& toy_model() {
    static ModelStore store(service_env().model_root);
    return *store.get("latest");
}

}  // namespace

TEST_CASE("method schemas") {
    const auto s = schemas_json();
    REQUIRE(s.size() == 9);
    std::vector<std::string> names;
    for (const auto& m : s) {
        names.push_back(m.at("name"));
        CHECK_FALSE(m.at("title").get<std::string>().empty());
        CHECK_FALSE(m.at("description").get<std::string>().empty());
        for (const auto& p : m.at("params")) {
            CHECK(p.contains("type"));
            CHECK(p.contains("required"));
            CHECK(p.contains("default"));
            CHECK_FALSE(p.at("description").get<std::string>().empty());
            if (p.at("type") == "choice")
                CHECK(p.contains("choices"));
        }
    }
    CHECK(names == std::vector<std::string>{"word_cloud", "productivity", "acceleration", "semantic_drift",
                                            "track_clusters", "acceleration_heatmap", "track_trends", "yake",
                                            "lda"});
    CHECK(method_names() == names);
    CHECK(find_method("nope") == nullptr);
    CHECK(find_method("lda")->plot == "topics");
}

TEST_CASE("parameter validation") {
    const auto& prod = *find_method("productivity");
    SECTION("a missing required parameter is named") {
        const auto e = error_of([&] { validate_params(prod, {}); });
        CHECK(e.kind() == ErrorKind::config);
        CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("'words'"));
    }
    SECTION("unknown parameters are rejected") {
        const auto e = error_of([&] { validate_params(prod, {{"words", "a"}, {"colour", "red"}}); });
        CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("'colour'"));
    }
    SECTION("defaults are filled and absent optionals are null") {
        const auto p = validate_params(prod, {{"words", "bert, lstm"}});
        CHECK(p.words("words") == std::vector<std::string>{"bert", "lstm"});
        CHECK(p.integer("recent_window") == 5);
        CHECK(p.json().at("year_from").is_null());
        CHECK_FALSE(p.has("year_from"));
    }
    SECTION("type and range errors") {
        const auto& drift_spec = *find_method("semantic_drift");
        CHECK(error_of([&] { validate_params(drift_spec, {{"k", "ten"}}); }).kind() == ErrorKind::config);
        CHECK(error_of([&] { validate_params(drift_spec, {{"k", "0"}}); }).kind() == ErrorKind::config);
        CHECK(error_of([&] { validate_params(drift_spec, {{"metric", "manhattan"}}); }).kind() == ErrorKind::config);
        CHECK(error_of([&] { validate_params(drift_spec, {{"perplexity", "0"}}); }).kind() == ErrorKind::config);
        CHECK(error_of([&] { validate_params(drift_spec, {{"perplexity", "nan"}}); }).kind() == ErrorKind::config);
        CHECK_NOTHROW(validate_params(drift_spec, {{"perplexity", "2.5"}, {"k_sim", "0"}}));
    }
    CHECK(split_list(" a, ,b ,c,") == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("preprocessing writes a JSON-lines dataset") {
    drift::testing::TempDir dir;
    drift::testing::write_text(dir / "raw.json",
                               R"([{"date":"2001-02-03","abstract":"Models were trained.","id":"x1"},
                                   {"date":"2002","abstract":"Networks learn."},
                                   {"date":"never","abstract":"lost"},
                                   {"date":"1990","abstract":"too early"},
                                   {"date":"2002"}])");
    PreprocessRequest req;
    req.json_path = dir / "raw.json";
    req.data_path = dir / "out.jsonl";
    req.years = {2000, 2010};
    const auto s = preprocess_corpus(req);
    CHECK(s.documents == 2);
    CHECK(s.skipped == 1);
    CHECK(s.dropped_bad_date == 1);
    CHECK(s.dropped_out_of_range == 1);
    const auto text = drift::testing::read_text(dir / "out.jsonl");
    const auto first = nlohmann::json::parse(text.substr(0, text.find('\n')));
    CHECK(first.at("id") == "x1");
    CHECK(first.at("year") == 2001);
    CHECK(first.at("raw") == "Models were trained.");
    CHECK(first.at("tokens") == std::vector<std::string>{"model", "train"});

    const auto ds = load_dataset(dir / "out.jsonl");
    CHECK(ds.slices.size() == 2);
    CHECK(ds.hash == load_dataset(dir / "out.jsonl").hash);

    SECTION("options override the defaults") {
        apply_preprocess_options(nlohmann::json{{"lemmatize", false}, {"year_min", 2002}}, req);
        CHECK_FALSE(req.options.lemmatize);
        CHECK(req.years.min == 2002);
        CHECK(error_of([&] { apply_preprocess_options(nlohmann::json{{"stem", true}}, req); }).kind() ==
              ErrorKind::config);
        CHECK(error_of([&] { apply_preprocess_options(nlohmann::json{{"lowercase", "yes"}}, req); }).kind() ==
              ErrorKind::config);
    }
    SECTION("a text key present nowhere") {
        req.text_key = "body";
        CHECK(error_of([&] { preprocess_corpus(req); }).kind() == ErrorKind::empty_corpus);
    }
    SECTION("an unwritable destination") {
        req.data_path = dir / "missing-dir" / "out.jsonl";
        CHECK(error_of([&] { preprocess_corpus(req); }).kind() == ErrorKind::io);
    }
    SECTION("a malformed dataset line is reported by number") {
        drift::testing::write_text(dir / "bad.jsonl", "{\"year\":2000,\"tokens\":[\"a\"]}\n{\"year\":\n");
        const auto e = error_of([&] { load_dataset(dir / "bad.jsonl"); });
        CHECK(e.kind() == ErrorKind::parse);
        CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("line 2"));
        drift::testing::write_text(dir / "empty.jsonl", "\n");
        CHECK(error_of([&] { load_dataset(dir / "empty.jsonl"); }).kind() == ErrorKind::empty_corpus);
    }
}

TEST_CASE("model store") {
    const auto& env = service_env();
    ModelStore store(env.model_root);
    CHECK(store.resolve("latest") == env.model_id);
    CHECK(store.resolve(env.model_id) == env.model_id);
    CHECK(std::filesystem::exists(env.model_root / env.model_id / dataset_file_name));
    CHECK(store.get("latest").get() == store.get(env.model_id).get());

    const auto e = error_of([&] { store.resolve("../etc"); });
    CHECK(e.kind() == ErrorKind::not_found);
    CHECK(error_of([&] { store.resolve("deadbeef"); }).kind() == ErrorKind::not_found);

    SECTION("an empty root lists nothing and has no latest model") {
        drift::testing::TempDir dir;
        ModelStore empty(dir / "none");
        CHECK(empty.list() == Json::array());
        CHECK(error_of([&] { empty.get("latest"); }).kind() == ErrorKind::not_found);
    }
    SECTION("listing flags broken model directories") {
        drift::testing::TempDir dir;
        std::filesystem::copy(env.model_root, dir / "m", std::filesystem::copy_options::recursive);
        std::filesystem::create_directories(dir / "m" / "broken");
        std::filesystem::create_directories(dir / "m" / ".tmp-1-1");
        const auto list = ModelStore(dir / "m").list();
        REQUIRE(list.size() == 2);
        for (const auto& entry : list) {
            if (entry.at("model_id") == "broken") {
                CHECK(entry.at("valid") == false);
                CHECK(entry.contains("error"));
            } else {
                CHECK(entry.at("model_id") == env.model_id);
                CHECK(entry.at("valid") == true);
                CHECK(entry.at("latest") == true);
                CHECK(entry.at("manifest").at("dataset_hash").is_string());
            }
        }
    }
    SECTION("retraining identical content reuses the id and leaves no scratch directories") {
        drift::testing::TempDir dir;
        ModelStore fresh(dir / "m");
        const auto a = fresh.train(env.data_path, env.config);
        const auto b = fresh.train(env.data_path, env.config);
        CHECK(a.model_id == env.model_id);
        CHECK(b.model_id == a.model_id);
        std::size_t entries = 0;
        for (const auto& d : std::filesystem::directory_iterator(dir / "m"))
            entries += d.path().filename().string().rfind(".tmp", 0) != 0;
        CHECK(entries == 2);  // the model and the alias
    }
}

TEST_CASE("training job queue") {
    std::promise<void> release;
    auto gate = release.get_future().share();
    std::vector<std::string> order;
    std::mutex m;
    JobQueue q([&](const TrainJob& job, const embedding::ProgressFn& progress) {
        gate.wait();
        progress(0.5);
        progress(0.2);
        {
            std::lock_guard lock(m);
            order.push_back(job.id);
        }
        if (job.config.seed == 99)
            fail(ErrorKind::config, "boom");
        return TrainOutcome{"model-" + job.id, "/tmp/" + job.id};
    });
    embedding::TrainConfig c;
    const auto a = q.submit("a.jsonl", c);
    const auto b = q.submit("b.jsonl", c);
    c.seed = 99;
    const auto bad = q.submit("c.jsonl", c);
    // "b" is still queued behind the blocked first job, so an identical submission conflicts.
    embedding::TrainConfig same;
    CHECK(error_of([&] { q.submit("b.jsonl", same); }).kind() == ErrorKind::conflict);
    CHECK(error_of([&] { q.get("job-404"); }).kind() == ErrorKind::not_found);
    CHECK(q.get(b).state == JobState::queued);
    same.dim = 0;
    CHECK(error_of([&] { q.submit("d.jsonl", same); }).kind() == ErrorKind::config);

    release.set_value();
    const auto done = q.wait(a);
    CHECK(done.state == JobState::succeeded);
    CHECK(done.progress == 1.0);
    CHECK(done.model_id == "model-" + a);
    CHECK(q.wait(b).state == JobState::succeeded);
    const auto failed = q.wait(bad);
    CHECK(failed.state == JobState::failed);
    CHECK(failed.error == "boom");
    CHECK_FALSE(failed.model_path.has_value());
    CHECK(order == std::vector<std::string>{a, b, bad});
    const auto j = to_json(done);
    CHECK(j.at("state") == "succeeded");
    CHECK(j.at("error").is_null());
}

TEST_CASE("every method runs on the toy model and renders") {
    const auto& lm = toy_model();
    const std::map<std::string, RawParams> params{
        {"word_cloud", {{"k", "15"}}},
        {"productivity", {{"words", "bert,lstm,absentword"}}},
        {"acceleration", {{"year", "2016"}, {"k", "12"}, {"k_acc", "5"}}},
        {"semantic_drift", {{"year_from", "2015"}, {"year_to", "2020"}, {"k", "12"}, {"k_drift", "3"}, {"k_sim", "4"}}},
        {"track_clusters", {{"k", "12"}, {"year_from", "2019"}}},
        {"acceleration_heatmap", {{"k", "6"}, {"year_from", "2015"}, {"year_to", "2020"}}},
        {"track_trends", {{"word", "neural"}, {"stride", "2"}}},
        {"yake", {{"k", "8"}, {"year_from", "2020"}}},
        {"lda", {{"topics", "3"}, {"iterations", "50"}}}};
    for (const auto& name : method_names()) {
        INFO(name);
        const auto env = run_analysis(lm, name, params.at(name));
        CHECK(env.at("method") == name);
        CHECK(env.at("model_id") == lm.id);
        CHECK(env.at("oov").is_array());
        CHECK(env.at("result").is_object());
        for (const auto& p : find_method(name)->params)
            CHECK(env.at("params").contains(p.name));
        CHECK(env.dump() == run_analysis(lm, name, params.at(name)).dump());

        const auto csv = render_csv(env);
        CHECK(csv.find('\n') != std::string::npos);
        const auto svg = render_svg(env);
        if (name == "track_trends" || name == "lda") {
            CHECK_FALSE(svg.has_value());
        } else {
            REQUIRE(svg.has_value());
            CHECK(svg->rfind("<svg", 0) == 0);
            CHECK(svg->find("</svg>") != std::string::npos);
        }
    }
    const auto prod = run_analysis(lm, "productivity", params.at("productivity"));
    CHECK(prod.at("oov") == Json::array({"absentword"}));
    CHECK(prod.at("params").at("year_from") == 2015);
    const auto lda = run_analysis(lm, "lda", params.at("lda"));
    CHECK(lda.at("params").at("alpha").get<double>() == Catch::Approx(50.0 / 3.0));
}

TEST_CASE("analysis edge cases") {
    const auto& lm = toy_model();
    SECTION("drift over one year is zero everywhere") {
        const auto env = run_analysis(lm, "semantic_drift", {{"year_from", "2017"}, {"year_to", "2017"}, {"k", "10"}});
        for (const auto& e : env.at("result").at("entries"))
            CHECK(e.at("distance") == 0.0);
    }
    SECTION("heatmap between a year and itself is zero") {
        const auto env = run_analysis(lm, "acceleration_heatmap", {{"year_from", "2018"}, {"year_to", "2018"}});
        for (const auto& row : env.at("result").at("values"))
            for (const auto& v : row)
                CHECK(v == 0.0);
    }
    SECTION("untrained years are range errors") {
        CHECK(error_of([&] { run_analysis(lm, "acceleration", {{"year", "2020"}}); }).kind() == ErrorKind::range);
        CHECK(error_of([&] { run_analysis(lm, "semantic_drift", {{"year_from", "2000"}}); }).kind() ==
              ErrorKind::range);
        CHECK(error_of([&] { run_analysis(lm, "word_cloud", {{"year_from", "2019"}, {"year_to", "2016"}}); })
                  .kind() == ErrorKind::range);
    }
    SECTION("explicit words that are all unknown") {
        CHECK(error_of([&] { run_analysis(lm, "semantic_drift", {{"words", "qqq,zzz"}}); }).kind() ==
              ErrorKind::out_of_vocabulary);
        CHECK(error_of([&] { run_analysis(lm, "productivity", {{"words", "qqq"}}); }).kind() ==
              ErrorKind::out_of_vocabulary);
    }
    SECTION("no documents in range") {
        CHECK(error_of([&] { run_analysis(lm, "yake", {{"year_from", "1990"}, {"year_to", "1995"}}); }).kind() ==
              ErrorKind::empty_slice);
    }
    SECTION("stepwise trends agree with the automatic path") {
        const auto automatic = run_analysis(lm, "track_trends", {{"word", "neural"}, {"stride", "2"}});
        const auto& points = automatic.at("result").at("points");
        std::string trajectory = "neural@2015";
        for (std::size_t i = 1; i < points.size(); ++i) {
            const auto step = run_analysis(
                lm, "track_trends",
                {{"word", "neural"}, {"stride", "2"}, {"trajectory", trajectory}, {"chosen_index", "0"}});
            const auto& last = step.at("result").at("points").back();
            CHECK(last == points[i]);
            trajectory += "," + last.at("word").get<std::string>() + "@" + std::to_string(last.at("year").get<int>());
        }
        CHECK(error_of([&] {
                  run_analysis(lm, "track_trends", {{"word", "neural"}, {"trajectory", "network@2015"}});
              }).kind() == ErrorKind::config);
        CHECK(error_of([&] {
                  run_analysis(lm, "track_trends", {{"word", "neural"}, {"chosen_index", "500"}});
              }).kind() == ErrorKind::selection);
        CHECK(error_of([&] { run_analysis(lm, "track_trends", {{"word", "neural"}, {"trajectory", "neural"}}); })
                  .kind() == ErrorKind::config);
    }
    CHECK(error_of([&] { run_analysis(lm, "nope", {}); }).kind() == ErrorKind::config);
}

TEST_CASE("render helpers") {
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(3.0) == "3");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_field("plain") == "plain");
    CHECK(xml_escape("<a & 'b'>") == "&lt;a &amp; &apos;b&apos;&gt;");
}
