#pragma once

// The nine analysis methods: parameter schemas, validation, and one dispatch function used by
// both the CLI and the HTTP server so identical requests yield identical JSON.

#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "drift/service/json.hpp"
#include "drift/service/model_store.hpp"

namespace drift::service {

enum class ParamType { integer, number, string, boolean, word_list, choice };

inline std::string_view to_string(ParamType t) {
    switch (t) {
    case ParamType::integer: return "integer";
    case ParamType::number: return "number";
    case ParamType::string: return "string";
    case ParamType::boolean: return "boolean";
    case ParamType::word_list: return "word_list";
    case ParamType::choice: return "choice";
    }
    return "string";
}

struct ParamSpec {
    std::string name;
    ParamType type = ParamType::string;
    bool required = false;
    std::string description;
    Json default_value;  // null: no default, or resolved from the model
    std::vector<std::string> choices;
    std::optional<double> minimum;
};

struct MethodSpec {
    std::string name;
    std::string title;
    std::string description;
    std::string plot;  // kind of graphic the result renders to; empty when tabular only
    std::vector<ParamSpec> params;

    const ParamSpec* param(std::string_view n) const {
        for (const auto& p : params)
            if (p.name == n)
                return &p;
        return nullptr;
    }
};

namespace detail {

inline ParamSpec year_param(std::string name, std::string description) {
    return {std::move(name), ParamType::integer, false, std::move(description), nullptr, {}, std::nullopt};
}

inline ParamSpec int_param(std::string name, long long def, double min, std::string description) {
    return {std::move(name), ParamType::integer, false, std::move(description), def, {}, min};
}

inline ParamSpec num_param(std::string name, Json def, std::optional<double> min, std::string description) {
    return {std::move(name), ParamType::number, false, std::move(description), std::move(def), {}, min};
}

inline ParamSpec choice_param(std::string name, std::string def, std::vector<std::string> choices,
                              std::string description) {
    return {std::move(name), ParamType::choice, false, std::move(description), std::move(def), std::move(choices),
            std::nullopt};
}

inline std::vector<ParamSpec> year_range_params() {
    return {year_param("year_from", "First year of the range; defaults to the first trained year."),
            year_param("year_to", "Last year of the range; defaults to the last trained year.")};
}

inline std::vector<ParamSpec> keyword_pool_params(long long k_default) {
    return {int_param("k", k_default, 1, "Number of keywords taken from the corpus to analyse."),
            choice_param("scoring", "norm_freq", {"norm_freq", "raw_freq", "tfidf"},
                         "Keyword ranking: normalized frequency, raw frequency or TF-IDF over year slices."),
            {"pos", ParamType::word_list, false,
             "Keep only keywords with these parts of speech (comma separated, e.g. noun,adj).", nullptr, {},
             std::nullopt},
            {"words", ParamType::word_list, false,
             "Explicit comma separated words; replaces the extracted keyword list.", nullptr, {}, std::nullopt}};
}

inline std::vector<ParamSpec> concat(std::initializer_list<std::vector<ParamSpec>> parts) {
    std::vector<ParamSpec> out;
    for (const auto& p : parts)
        out.insert(out.end(), p.begin(), p.end());
    return out;
}

inline std::vector<MethodSpec> build_specs() {
    std::vector<MethodSpec> specs;
    specs.push_back(
        {"word_cloud", "Word Cloud", "Most frequent terms of the selected years, sized by frequency.", "word_cloud",
         concat({year_range_params(),
                 {int_param("k", 50, 1, "Number of words in the cloud."),
                  num_param("min_font", 10.0, 1.0, "Font size of the least frequent word."),
                  num_param("max_font", 60.0, 1.0, "Font size of the most frequent word."),
                  num_param("width", 800.0, 1.0, "Canvas width in pixels."),
                  num_param("height", 400.0, 1.0, "Canvas height in pixels."),
                  {"color", ParamType::string, false, "Fill colour of the words.", "#1f77b4", {}, std::nullopt}}})});
    specs.push_back(
        {"productivity", "Term Productivity",
         "Entropy of each term's bigram continuations per year, with its normalized frequency and a trend class.",
         "productivity",
         concat({{{"words", ParamType::word_list, true, "Comma separated terms to follow.", nullptr, {},
                   std::nullopt}},
                 year_range_params(),
                 {int_param("recent_window", 5, 2, "Number of most recent years used to classify the trend.")}})});
    specs.push_back(
        {"acceleration", "Acceleration",
         "Keyword pairs whose cosine similarity grew the most from one year to the next.", "keyword_bars",
         concat({{year_param("year", "Year t; pairs compare t with t+1. Defaults to the first trained year.")},
                 keyword_pool_params(50),
                 {int_param("k_acc", 10, 1, "Number of most accelerating pairs to report.")}})});
    specs.push_back(
        {"semantic_drift", "Semantic Drift",
         "Keywords ranked by the distance between their aligned vectors in two years, with neighbours.",
         "drift_map",
         concat({year_range_params(), keyword_pool_params(50),
                 {int_param("k_drift", 10, 1, "Number of most drifting words to report."),
                  int_param("k_sim", 10, 0, "Number of most similar words shown around each drifting word."),
                  choice_param("metric", "euclidean", {"euclidean", "cosine"}, "Distance between year vectors."),
                  choice_param("projection", "pca", {"pca", "tsne"}, "2-D projection of the neighbourhoods."),
                  num_param("perplexity", 30.0, 0.0, "t-SNE perplexity (clamped to (n-1)/3)."),
                  int_param("iterations", 1000, 1, "t-SNE iterations."),
                  int_param("seed", 1, 0, "Random seed for the projection.")}})});
    specs.push_back(
        {"track_clusters", "Track Clusters", "Keywords clustered with k-means inside each year and projected to 2-D.",
         "clusters",
         concat({year_range_params(), keyword_pool_params(30),
                 {int_param("clusters", 0, 0, "Number of clusters; 0 picks the count with the best silhouette."),
                  int_param("max_clusters", 10, 3, "Largest cluster count tried when clusters is 0."),
                  choice_param("projection", "pca", {"pca", "tsne"}, "2-D projection of each year."),
                  num_param("perplexity", 30.0, 0.0, "t-SNE perplexity (clamped to (n-1)/3)."),
                  int_param("iterations", 1000, 1, "t-SNE iterations."),
                  int_param("seed", 1, 0, "Random seed for clustering and projection.")}})});
    specs.push_back(
        {"acceleration_heatmap", "Acceleration Heatmap",
         "Change of pairwise keyword similarity between two years as a symmetric matrix.", "heatmap",
         concat({year_range_params(), keyword_pool_params(20)})});
    specs.push_back(
        {"track_trends", "Track Trends",
         "Follows a word through time by hopping to the most similar word in the next stride years.",
         "trajectory",
         concat({{{"word", ParamType::string, true, "Seed word of the trajectory.", nullptr, {}, std::nullopt}},
                 year_range_params(),
                 {int_param("stride", 3, 1, "Largest year gap searched at each step."),
                  int_param("k_sim", 10, 1, "Number of candidates offered at each step."),
                  {"trajectory", ParamType::word_list, false,
                   "Trajectory so far as word@year items, starting at the seed; enables stepwise mode.", nullptr,
                   {}, std::nullopt},
                  {"chosen_index", ParamType::integer, false,
                   "Index of the candidate picked for the next step (stepwise mode).", nullptr, {}, 0.0}}})});
    specs.push_back(
        {"yake", "YAKE Keywords", "Statistical keyword extraction over the abstracts of the selected years.",
         "keyword_bars",
         concat({year_range_params(),
                 {int_param("max_ngram", 3, 1, "Longest keyword in words."),
                  int_param("k", 20, 1, "Number of keywords to report."),
                  int_param("window", 1, 1, "Co-occurrence window for the relatedness feature."),
                  num_param("dedup_threshold", 0.9, 0.0, "Similarity above which a candidate counts as duplicate."),
                  choice_param("text_source", "raw", {"raw", "processed"},
                               "Run on the original abstracts or on the preprocessed tokens.")}})});
    specs.push_back(
        {"lda", "LDA Topics", "Topic model where each year's abstracts form one document.", "topics",
         concat({year_range_params(),
                 {int_param("topics", 10, 2, "Number of topics."),
                  num_param("alpha", nullptr, 0.0, "Document-topic prior; defaults to 50/topics."),
                  num_param("beta", 0.01, 0.0, "Topic-word prior."),
                  int_param("iterations", 1000, 1, "Gibbs sampling sweeps."),
                  int_param("seed", 1, 0, "Random seed."),
                  int_param("top_words", 10, 1, "Words listed per topic.")}})});
    return specs;
}

}  // namespace detail

inline const std::vector<MethodSpec>& method_specs() {
    static const std::vector<MethodSpec> specs = detail::build_specs();
    return specs;
}

inline const MethodSpec* find_method(std::string_view name) {
    for (const auto& m : method_specs())
        if (m.name == name)
            return &m;
    return nullptr;
}

inline std::vector<std::string> method_names() {
    std::vector<std::string> out;
    for (const auto& m : method_specs())
        out.push_back(m.name);
    return out;
}

inline std::string joined_method_names() {
    std::string s;
    for (const auto& n : method_names())
        s += (s.empty() ? "" : ", ") + n;
    return s;
}

inline Json to_json(const ParamSpec& p) {
    Json j{{"name", p.name},
           {"type", to_string(p.type)},
           {"required", p.required},
           {"description", p.description},
           {"default", p.default_value}};
    if (!p.choices.empty())
        j["choices"] = p.choices;
    if (p.minimum)
        j["minimum"] = *p.minimum;
    return j;
}

inline Json to_json(const MethodSpec& m) {
    Json params = Json::array();
    for (const auto& p : m.params)
        params.push_back(to_json(p));
    return Json{{"name", m.name},
                {"title", m.title},
                {"description", m.description},
                {"plot", m.plot.empty() ? Json(nullptr) : Json(m.plot)},
                {"params", params}};
}

inline Json schemas_json() {
    Json a = Json::array();
    for (const auto& m : method_specs())
        a.push_back(to_json(m));
    return a;
}

using RawParams = std::map<std::string, std::string>;

inline std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        auto end = s.find(',', start);
        if (end == std::string_view::npos)
            end = s.size();
        auto item = s.substr(start, end - start);
        while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front())))
            item.remove_prefix(1);
        while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back())))
            item.remove_suffix(1);
        if (!item.empty())
            out.emplace_back(item);
        start = end + 1;
    }
    return out;
}

/// Typed view of a request after schema validation; absent optional params are null.
class ResolvedParams {
public:
    ResolvedParams() = default;
    explicit ResolvedParams(Json values) : values_(std::move(values)) {}

    const Json& json() const { return values_; }
    bool has(const std::string& name) const { return values_.contains(name) && !values_.at(name).is_null(); }
    long long integer(const std::string& name) const { return values_.at(name).get<long long>(); }
    std::size_t count(const std::string& name) const { return values_.at(name).get<std::size_t>(); }
    double number(const std::string& name) const { return values_.at(name).get<double>(); }
    std::string string(const std::string& name) const { return values_.at(name).get<std::string>(); }
    bool boolean(const std::string& name) const { return values_.at(name).get<bool>(); }
    std::vector<std::string> words(const std::string& name) const {
        return has(name) ? values_.at(name).get<std::vector<std::string>>() : std::vector<std::string>{};
    }
    void set(const std::string& name, Json v) { values_[name] = std::move(v); }

private:
    Json values_ = Json::object();
};

inline Json parse_param_value(const ParamSpec& p, const std::string& raw) {
    auto bad = [&](const std::string& why) -> Json {
        fail(ErrorKind::config, "parameter '" + p.name + "' " + why + " (got '" + raw + "')");
    };
    switch (p.type) {
    case ParamType::integer: {
        long long v = 0;
        const auto* end = raw.data() + raw.size();
        auto [ptr, ec] = std::from_chars(raw.data(), end, v);
        if (raw.empty() || ec != std::errc{} || ptr != end)
            return bad("must be an integer");
        if (p.minimum && static_cast<double>(v) < *p.minimum)
            return bad("must be >= " + std::to_string(static_cast<long long>(*p.minimum)));
        return v;
    }
    case ParamType::number: {
        char* end = nullptr;
        const double v = std::strtod(raw.c_str(), &end);
        if (raw.empty() || end != raw.c_str() + raw.size() || !std::isfinite(v))
            return bad("must be a finite number");
        if (p.minimum && v <= *p.minimum && *p.minimum == 0.0)
            return bad("must be > 0");
        if (p.minimum && v < *p.minimum)
            return bad("must be >= " + std::to_string(*p.minimum));
        return v;
    }
    case ParamType::boolean:
        if (raw == "true" || raw == "1") return true;
        if (raw == "false" || raw == "0") return false;
        return bad("must be true or false");
    case ParamType::word_list: {
        auto items = split_list(raw);
        if (items.empty())
            return bad("must list at least one item");
        return items;
    }
    case ParamType::choice:
        for (const auto& c : p.choices)
            if (c == raw)
                return raw;
        {
            std::string allowed;
            for (const auto& c : p.choices)
                allowed += (allowed.empty() ? "" : ", ") + c;
            return bad("must be one of " + allowed);
        }
    case ParamType::string:
        if (raw.empty())
            return bad("must not be empty");
        return raw;
    }
    return raw;
}

/// Rejects unknown and missing required params, converts types, and fills defaults.
inline ResolvedParams validate_params(const MethodSpec& spec, const RawParams& raw) {
    for (const auto& [name, value] : raw)
        if (!spec.param(name))
            fail(ErrorKind::config, "unknown parameter '" + name + "' for method " + spec.name);
    Json values = Json::object();
    for (const auto& p : spec.params) {
        auto it = raw.find(p.name);
        if (it == raw.end()) {
            if (p.required)
                fail(ErrorKind::config, "missing required parameter '" + p.name + "' for method " + spec.name);
            values[p.name] = p.default_value;
        } else {
            values[p.name] = parse_param_value(p, it->second);
        }
    }
    return ResolvedParams(std::move(values));
}

namespace detail {

struct YearSpan {
    int from = 0;
    int to = 0;
};

inline YearSpan resolve_years(const embedding::TemporalModel& model, ResolvedParams& params) {
    const auto years = model.years();
    if (years.empty())
        fail(ErrorKind::range, "model has no trained years");
    YearSpan s{params.has("year_from") ? static_cast<int>(params.integer("year_from")) : years.front(),
               params.has("year_to") ? static_cast<int>(params.integer("year_to")) : years.back()};
    if (s.from > s.to)
        fail(ErrorKind::range, "year_from " + std::to_string(s.from) + " is after year_to " + std::to_string(s.to));
    params.set("year_from", s.from);
    params.set("year_to", s.to);
    return s;
}

inline void require_trained(const embedding::TemporalModel& model, int year, const std::string& param) {
    if (!model.has_year(year))
        fail(ErrorKind::range, "parameter '" + param + "': year " + std::to_string(year) + " is not trained");
}

inline corpus::CorpusSlice merged_range(const corpus::SliceMap& slices, YearSpan span) {
    auto merged = corpus::merge_slices(slices, span.from, span.to);
    if (merged.documents.empty())
        fail(ErrorKind::empty_slice, "no documents between " + std::to_string(span.from) + " and " +
                                         std::to_string(span.to));
    return merged;
}

/// Explicit `words`, or the top-k keywords of the span restricted to the model vocabulary.
inline std::vector<std::string> keyword_pool(const LoadedModel& lm, const ResolvedParams& params, YearSpan span) {
    if (params.has("words"))
        return params.words("words");
    analytics::KeywordQuery q;
    q.k = params.count("k");
    q.scoring = *analytics::parse_keyword_scoring(params.string("scoring"));
    q.all_slices = &lm.slices;
    if (params.has("pos")) {
        std::set<corpus::PosTag> tags;
        for (const auto& t : params.words("pos")) {
            auto tag = corpus::parse_pos_tag(t);
            if (!tag)
                fail(ErrorKind::config, "parameter 'pos': unknown part of speech '" + t + "'");
            tags.insert(*tag);
        }
        q.pos_filter = std::move(tags);
    }
    const auto& vocab = lm.model.vocabulary();
    q.admit = [&vocab](const std::string& term) { return vocab.contains(term); };
    auto terms = analytics::keyword_terms(analytics::extract_keywords(merged_range(lm.slices, span), q));
    if (terms.empty())
        fail(ErrorKind::out_of_vocabulary, "no keyword of the selected years is in the model vocabulary");
    return terms;
}

inline Json drift_points_json(const std::vector<analytics::AnchoredPoint>& pts, const projection::Coordinates& xy,
                              std::size_t offset) {
    Json a = Json::array();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& p = pts[i];
        const projection::ProjectedPoint pp{p.term, p.year, xy[offset + i][0], xy[offset + i][1], std::nullopt};
        auto j = to_json(pp);
        j["similarity"] = number(p.similarity);
        j["anchor"] = p.anchor;
        a.push_back(std::move(j));
    }
    return a;
}

inline std::string yake_text(const corpus::CorpusSlice& slice, bool raw) {
    std::string text;
    for (std::size_t d = 0; d < slice.documents.size(); ++d) {
        std::string doc = raw && d < slice.raw_texts.size() ? slice.raw_texts[d] : corpus::join_tokens(slice.documents[d]);
        while (!doc.empty() && std::isspace(static_cast<unsigned char>(doc.back())))
            doc.pop_back();
        if (doc.empty())
            continue;
        const char last = doc.back();
        if (last != '.' && last != '!' && last != '?')
            doc += '.';
        text += doc;
        text += "\n\n";
    }
    return text;
}

inline analytics::Trajectory parse_trajectory(const std::vector<std::string>& items) {
    analytics::Trajectory t;
    for (const auto& item : items) {
        const auto at = item.rfind('@');
        int year = 0;
        const char* end = item.data() + item.size();
        if (at == std::string::npos || at == 0 ||
            std::from_chars(item.data() + at + 1, end, year).ptr != end || at + 1 == item.size())
            fail(ErrorKind::config, "parameter 'trajectory': item '" + item + "' is not word@year");
        t.points.push_back({item.substr(0, at), year});
    }
    return t;
}

inline Json run_method(const LoadedModel& lm, const std::string& method, ResolvedParams& p, Json& oov) {
    const auto& model = lm.model;
    if (method == "word_cloud") {
        const auto span = resolve_years(model, p);
        analytics::WordCloudOptions o;
        o.k = p.count("k");
        o.min_font = p.number("min_font");
        o.max_font = p.number("max_font");
        o.width = p.number("width");
        o.height = p.number("height");
        o.color = p.string("color");
        Json entries = Json::array();
        for (const auto& e : analytics::word_cloud_data(corpus::merge_slices(lm.slices, span.from, span.to), o))
            entries.push_back(to_json(e));
        return Json{{"width", o.width}, {"height", o.height}, {"entries", entries}};
    }
    if (method == "productivity") {
        const auto span = resolve_years(model, p);
        const auto window = p.count("recent_window");
        Json series = Json::array();
        for (const auto& w : p.words("words")) {
            bool seen = false;
            for (auto it = lm.slices.lower_bound(span.from); it != lm.slices.end() && it->first <= span.to; ++it)
                seen = seen || it->second.count_of(w) > 0;
            if (!seen) {
                oov.push_back(w);
                continue;
            }
            series.push_back(to_json(analytics::productivity_series(w, lm.slices, span.from, span.to, window)));
        }
        if (series.empty())
            fail(ErrorKind::out_of_vocabulary, "none of the requested words occurs in the selected years");
        return Json{{"series", series}};
    }
    if (method == "acceleration") {
        const int t = p.has("year") ? static_cast<int>(p.integer("year")) : model.years().front();
        p.set("year", t);
        require_trained(model, t, "year");
        require_trained(model, t + 1, "year");
        const auto pool = keyword_pool(lm, p, {t, t + 1});
        const auto ranking = analytics::top_accelerated_pairs(model, pool, t, p.count("k_acc"));
        oov = ranking.oov;
        Json pairs = Json::array();
        for (const auto& e : ranking.pairs)
            pairs.push_back(to_json(e));
        return Json{{"year", t}, {"keywords", pool}, {"pairs", pairs}};
    }
    if (method == "semantic_drift") {
        const auto span = resolve_years(model, p);
        require_trained(model, span.from, "year_from");
        require_trained(model, span.to, "year_to");
        const auto pool = keyword_pool(lm, p, span);
        const auto metric = *analytics::parse_distance_metric(p.string("metric"));
        auto ranking = analytics::semantic_drift(model, pool, span.from, span.to, metric);
        oov = ranking.oov;
        if (ranking.entries.size() > p.count("k_drift"))
            ranking.entries.resize(p.count("k_drift"));
        Json entries = Json::array(), hoods = Json::array();
        const auto proj = *projection::parse_projection_method(p.string("projection"));
        for (const auto& e : ranking.entries) {
            entries.push_back(to_json(e));
            const auto hood = analytics::drift_neighborhood(model, e.word, span.from, span.to, p.count("k_sim"));
            projection::PointSet vectors;
            for (const auto* side : {&hood.from_points, &hood.to_points})
                for (const auto& pt : *side)
                    vectors.push_back(pt.vector);
            const auto xy = projection::project_2d(vectors, proj, static_cast<std::uint64_t>(p.integer("seed")),
                                                   p.number("perplexity"), p.count("iterations"));
            hoods.push_back(Json{{"word", e.word},
                                 {"from_points", drift_points_json(hood.from_points, xy, 0)},
                                 {"to_points", drift_points_json(hood.to_points, xy, hood.from_points.size())}});
        }
        return Json{{"metric", analytics::to_string(metric)}, {"entries", entries}, {"neighborhoods", hoods}};
    }
    if (method == "track_clusters") {
        const auto span = resolve_years(model, p);
        const auto pool = keyword_pool(lm, p, span);
        projection::ClusterTrackOptions o;
        o.clusters = p.count("clusters");
        o.max_clusters = p.count("max_clusters");
        o.seed = static_cast<std::uint64_t>(p.integer("seed"));
        o.method = *projection::parse_projection_method(p.string("projection"));
        o.perplexity = p.number("perplexity");
        o.tsne_iterations = p.count("iterations");
        const auto track = projection::track_clusters(model, pool, span.from, span.to, o);
        oov = track.oov;
        Json years = Json::array();
        for (const auto& [year, yc] : track.years) {
            Json pts = Json::array();
            for (const auto& pt : yc.points)
                pts.push_back(to_json(pt));
            years.push_back(Json{{"year", year}, {"clustering", to_json(yc.clustering)}, {"points", pts}});
        }
        return Json{{"years", years}};
    }
    if (method == "acceleration_heatmap") {
        const auto span = resolve_years(model, p);
        require_trained(model, span.from, "year_from");
        require_trained(model, span.to, "year_to");
        const auto pool = keyword_pool(lm, p, span);
        const auto h = analytics::acceleration_heatmap(model, pool, span.from, span.to);
        oov = h.oov;
        return to_json(h);
    }
    if (method == "track_trends") {
        const auto span = resolve_years(model, p);
        const auto word = p.string("word");
        const auto stride = p.count("stride");
        const auto k_sim = p.count("k_sim");
        if (!p.has("trajectory") && !p.has("chosen_index"))
            return to_json(analytics::track_trends(model, word, span.from, span.to, stride, k_sim));
        analytics::validate_trajectory_request(model, word, span.from, stride, k_sim);
        auto traj = p.has("trajectory") ? parse_trajectory(p.words("trajectory")) : analytics::Trajectory{};
        if (traj.points.empty())
            traj.points.push_back({word, span.from});
        if (traj.points.front() != analytics::TrajectoryPoint{word, span.from})
            fail(ErrorKind::config, "parameter 'trajectory' must start at " + word + "@" + std::to_string(span.from));
        traj.stride = stride;
        traj.year_to = span.to;
        std::optional<std::size_t> chosen;
        if (p.has("chosen_index"))
            chosen = p.count("chosen_index");
        return to_json(analytics::advance_trajectory(model, std::move(traj), k_sim, chosen));
    }
    if (method == "yake") {
        const auto span = resolve_years(model, p);
        analytics::YakeOptions o;
        o.max_ngram = p.count("max_ngram");
        o.k = p.count("k");
        o.window = p.count("window");
        o.dedup_threshold = p.number("dedup_threshold");
        const auto text = yake_text(merged_range(lm.slices, span), p.string("text_source") == "raw");
        Json kws = Json::array();
        for (const auto& k : analytics::yake_keywords(text, o))
            kws.push_back(to_json(k));
        return Json{{"keywords", kws}};
    }
    if (method == "lda") {
        const auto span = resolve_years(model, p);
        std::map<int, corpus::TokenSequence> docs;
        for (auto it = lm.slices.lower_bound(span.from); it != lm.slices.end() && it->first <= span.to; ++it) {
            auto& d = docs[it->first];
            for (const auto& seq : it->second.documents)
                d.insert(d.end(), seq.begin(), seq.end());
        }
        analytics::LdaOptions o;
        o.topics = p.count("topics");
        if (p.has("alpha"))
            o.alpha = p.number("alpha");
        o.beta = p.number("beta");
        o.iterations = p.count("iterations");
        o.seed = static_cast<std::uint64_t>(p.integer("seed"));
        const auto tm = analytics::lda_train(docs, o);
        p.set("alpha", tm.alpha);
        return to_json(tm, p.count("top_words"));
    }
    fail(ErrorKind::config, "unknown method '" + method + "'; valid methods: " + joined_method_names());
}

}  // namespace detail

/// Validates `raw` against the method schema and runs it. The envelope echoes the resolved
/// params and lists words skipped as out of vocabulary.
inline Json run_analysis(const LoadedModel& lm, const std::string& method, const RawParams& raw) {
    const auto* spec = find_method(method);
    if (!spec)
        fail(ErrorKind::config, "unknown method '" + method + "'; valid methods: " + joined_method_names());
    auto params = validate_params(*spec, raw);
    Json oov = Json::array();
    Json result = detail::run_method(lm, method, params, oov);
    return Json{{"method", method},
                {"model_id", lm.id},
                {"params", params.json()},
                {"oov", oov},
                {"result", std::move(result)}};
}

}  // namespace drift::service
