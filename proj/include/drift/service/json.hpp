#pragma once

// Stable JSON shapes shared by the CLI and the HTTP layer. Keys keep insertion order;
// non-finite numbers become null.

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "drift/analytics/acceleration.hpp"
#include "drift/analytics/keywords.hpp"
#include "drift/analytics/lda.hpp"
#include "drift/analytics/productivity.hpp"
#include "drift/analytics/semantic_drift.hpp"
#include "drift/analytics/track_trends.hpp"
#include "drift/analytics/word_cloud.hpp"
#include "drift/analytics/yake.hpp"
#include "drift/embedding/similarity.hpp"
#include "drift/projection/track_clusters.hpp"

namespace drift::service {

using Json = nlohmann::ordered_json;

inline Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

inline Json numbers(const std::vector<double>& v) {
    Json a = Json::array();
    for (double x : v)
        a.push_back(number(x));
    return a;
}

inline Json strings(const std::vector<std::string>& v) { return Json(v); }

inline Json to_json(const embedding::Neighbor& n) {
    return Json{{"term", n.term}, {"year", n.year}, {"similarity", number(n.similarity)}};
}

inline Json to_json(const std::vector<embedding::Neighbor>& ns) {
    Json a = Json::array();
    for (const auto& n : ns)
        a.push_back(to_json(n));
    return a;
}

inline Json to_json(const analytics::KeywordScore& k) {
    return Json{{"term", k.term},
                {"year", k.year},
                {"raw_freq", k.raw_freq},
                {"norm_freq", number(k.norm_freq)},
                {"tfidf", number(k.tfidf)},
                {"pos", corpus::to_string(k.pos)}};
}

inline Json to_json(const analytics::WordCloudEntry& e) {
    return Json{{"term", e.term},     {"count", e.count}, {"weight", number(e.weight)},
                {"color", e.color},   {"opacity", number(e.opacity)},
                {"x", number(e.x)},   {"y", number(e.y)}, {"placed", e.placed}};
}

inline Json to_json(const analytics::ProductivitySeries& s) {
    Json points = Json::array();
    for (const auto& [year, e] : s.entropy) {
        auto f = s.norm_freq.find(year);
        points.push_back(Json{{"year", year},
                              {"entropy", number(e)},
                              {"norm_freq", number(f == s.norm_freq.end() ? 0.0 : f->second)}});
    }
    return Json{{"term", s.term},
                {"points", points},
                {"trend", s.trend ? Json(std::string(analytics::to_string(*s.trend))) : Json(nullptr)}};
}

inline Json to_json(const analytics::AccelerationEntry& e) {
    return Json{{"word_a", e.word_a},
                {"word_b", e.word_b},
                {"from_year", e.from_year},
                {"to_year", e.to_year},
                {"similarity_from", number(e.similarity_from)},
                {"similarity_to", number(e.similarity_to)},
                {"acceleration", number(e.value)}};
}

inline Json to_json(const analytics::AccelerationHeatmap& h) {
    Json rows = Json::array();
    for (const auto& r : h.values)
        rows.push_back(numbers(r));
    return Json{{"terms", h.terms}, {"from_year", h.from_year}, {"to_year", h.to_year}, {"values", rows}};
}

inline Json to_json(const analytics::DriftEntry& e) {
    return Json{{"word", e.word},
                {"year_from", e.year_from},
                {"year_to", e.year_to},
                {"metric", analytics::to_string(e.metric)},
                {"distance", number(e.distance)}};
}

inline Json to_json(const projection::ProjectedPoint& p) {
    return Json{{"label", p.label()},
                {"term", p.term},
                {"year", p.year},
                {"x", number(p.x)},
                {"y", number(p.y)},
                {"cluster_id", p.cluster_id ? Json(*p.cluster_id) : Json(nullptr)}};
}

inline Json to_json(const analytics::TrajectoryPoint& p) { return Json{{"word", p.word}, {"year", p.year}}; }

inline Json to_json(const analytics::Trajectory& t) {
    Json points = Json::array();
    for (const auto& p : t.points)
        points.push_back(to_json(p));
    Json steps = Json::array();
    for (const auto& s : t.steps)
        steps.push_back(Json{{"candidates", to_json(s.candidates)}, {"chosen_index", s.chosen}});
    return Json{{"points", points},
                {"steps", steps},
                {"stride", t.stride},
                {"year_to", t.year_to},
                {"status", analytics::to_string(t.status)},
                {"candidates", to_json(t.pending)}};
}

inline Json to_json(const analytics::YakeKeyword& k) {
    return Json{{"ngram", k.ngram}, {"raw_score", number(k.raw_score)}, {"display_score", number(k.display_score)}};
}

inline Json to_json(const projection::ClusteringResult& c) {
    Json scores = Json::object();
    for (const auto& [k, s] : c.candidate_scores)
        scores[std::to_string(k)] = number(s);
    return Json{{"k", c.k},
                {"labels", c.labels},
                {"silhouette", c.silhouette ? number(*c.silhouette) : Json(nullptr)},
                {"inertia", number(c.inertia)},
                {"iterations", c.iterations},
                {"candidate_scores", scores}};
}

inline Json to_json(const analytics::TopicModel& m, std::size_t top_words) {
    Json topics = Json::array();
    for (std::size_t t = 0; t < m.topics; ++t) {
        Json words = Json::array();
        for (const auto& w : analytics::top_topic_words(m, t, top_words))
            words.push_back(Json{{"term", w.term}, {"probability", number(w.probability)}});
        topics.push_back(Json{{"topic", t}, {"words", words}});
    }
    Json years = Json::array();
    for (std::size_t d = 0; d < m.documents.size(); ++d) {
        auto row = m.doc_topic.row(d);
        years.push_back(Json{{"year", m.documents[d]}, {"distribution", numbers({row.begin(), row.end()})}});
    }
    return Json{{"topics_count", m.topics},
                {"alpha", number(m.alpha)},
                {"beta", number(m.beta)},
                {"topics", topics},
                {"years", years}};
}

}  // namespace drift::service
