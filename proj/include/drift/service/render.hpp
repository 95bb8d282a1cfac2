#pragma once

// SVG and CSV exports rendered from the analysis JSON envelope, so every export reflects
// exactly the numbers the API returned.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "drift/service/json.hpp"

namespace drift::service {

inline std::string format_number(double v) {
    if (!std::isfinite(v))
        return "";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string{};
}

inline std::string json_number(const Json& j) {
    if (j.is_number_integer() || j.is_number_unsigned())
        return j.dump();
    if (j.is_number())
        return format_number(j.get<double>());
    return "";
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += c;
        }
    }
    return out;
}

namespace detail {

inline std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline double num(const Json& j, double fallback = 0.0) { return j.is_number() ? j.get<double>() : fallback; }

inline const char* palette(std::size_t i) {
    static const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                   "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
    return colors[i % 10];
}

class Svg {
public:
    Svg(double w, double h) : w_(w), h_(h) {}

    void text(double x, double y, const std::string& s, double size = 12, const std::string& anchor = "start",
              const std::string& fill = "#222", double opacity = 1.0) {
        body_ << "<text x=\"" << px(x) << "\" y=\"" << px(y) << "\" font-size=\"" << px(size)
              << "\" text-anchor=\"" << anchor << "\" fill=\"" << xml_escape(fill) << "\"";
        if (opacity < 1.0)
            body_ << " fill-opacity=\"" << px(opacity) << "\"";
        body_ << ">" << xml_escape(s) << "</text>\n";
    }
    void rect(double x, double y, double w, double h, const std::string& fill) {
        body_ << "<rect x=\"" << px(x) << "\" y=\"" << px(y) << "\" width=\"" << px(w) << "\" height=\"" << px(h)
              << "\" fill=\"" << fill << "\"/>\n";
    }
    void circle(double x, double y, double r, const std::string& fill) {
        body_ << "<circle cx=\"" << px(x) << "\" cy=\"" << px(y) << "\" r=\"" << px(r) << "\" fill=\"" << fill
              << "\"/>\n";
    }
    void line(double x1, double y1, double x2, double y2, const std::string& stroke, double width = 1.0) {
        body_ << "<line x1=\"" << px(x1) << "\" y1=\"" << px(y1) << "\" x2=\"" << px(x2) << "\" y2=\"" << px(y2)
              << "\" stroke=\"" << stroke << "\" stroke-width=\"" << px(width) << "\"/>\n";
    }
    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke) {
        body_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i)
            body_ << (i ? " " : "") << px(pts[i].first) << "," << px(pts[i].second);
        body_ << "\"/>\n";
    }

    std::string str() const {
        return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(w_) + "\" height=\"" + px(h_) +
               "\" viewBox=\"0 0 " + px(w_) + " " + px(h_) + "\" font-family=\"sans-serif\">\n" +
               "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n" + body_.str() + "</svg>\n";
    }

private:
    double w_, h_;
    std::ostringstream body_;
};

struct Frame {
    double x0, y0, w, h;  // pixel box
    double min_x, max_x, min_y, max_y;

    double sx(double v) const { return max_x > min_x ? x0 + (v - min_x) / (max_x - min_x) * w : x0 + w / 2; }
    double sy(double v) const { return max_y > min_y ? y0 + h - (v - min_y) / (max_y - min_y) * h : y0 + h / 2; }
};

inline Frame fit(const std::vector<std::pair<double, double>>& pts, double x0, double y0, double w, double h) {
    Frame f{x0, y0, w, h, 0, 0, 0, 0};
    if (pts.empty())
        return f;
    f.min_x = f.max_x = pts.front().first;
    f.min_y = f.max_y = pts.front().second;
    for (const auto& [x, y] : pts) {
        f.min_x = std::min(f.min_x, x);
        f.max_x = std::max(f.max_x, x);
        f.min_y = std::min(f.min_y, y);
        f.max_y = std::max(f.max_y, y);
    }
    return f;
}

inline std::string word_cloud_svg(const Json& r) {
    Svg svg(num(r["width"], 800), num(r["height"], 400));
    for (const auto& e : r["entries"])
        if (e["placed"].get<bool>())
            svg.text(num(e["x"]), num(e["y"]), e["term"].get<std::string>(), num(e["weight"]), "start",
                     e["color"].get<std::string>(), num(e["opacity"], 1.0));
    return svg.str();
}

inline void line_panel(Svg& svg, const Json& series, const char* key, const std::string& title, double y0) {
    const double x0 = 60, w = 560, h = 200;
    std::vector<std::pair<double, double>> all;
    for (const auto& s : series)
        for (const auto& p : s["points"])
            all.emplace_back(num(p["year"]), num(p[key]));
    auto f = fit(all, x0, y0 + 20, w, h);
    f.min_y = std::min(f.min_y, 0.0);
    svg.text(x0, y0 + 12, title, 14);
    svg.line(x0, y0 + 20 + h, x0 + w, y0 + 20 + h, "#444");
    svg.line(x0, y0 + 20, x0, y0 + 20 + h, "#444");
    svg.text(x0 - 6, f.sy(f.max_y) + 4, format_number(f.max_y).substr(0, 6), 10, "end");
    svg.text(x0 - 6, f.sy(f.min_y) + 4, format_number(f.min_y).substr(0, 6), 10, "end");
    std::size_t i = 0;
    for (const auto& s : series) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& p : s["points"]) {
            pts.emplace_back(f.sx(num(p["year"])), f.sy(num(p[key])));
            svg.circle(pts.back().first, pts.back().second, 3, palette(i));
        }
        svg.polyline(pts, palette(i));
        if (!pts.empty())
            svg.text(pts.back().first + 6, pts.back().second + 4, s["term"].get<std::string>(), 11, "start",
                     palette(i));
        ++i;
    }
    for (const auto& p : all) {
        svg.text(f.sx(p.first), y0 + 20 + h + 14, std::to_string(static_cast<int>(p.first)), 10, "middle");
    }
}

inline std::string productivity_svg(const Json& r) {
    Svg svg(720, 520);
    line_panel(svg, r["series"], "entropy", "Productivity (entropy, bits)", 0);
    line_panel(svg, r["series"], "norm_freq", "Normalized frequency", 260);
    return svg.str();
}

inline std::string bars_svg(const std::vector<std::pair<std::string, double>>& bars, const std::string& title) {
    const double row = 22, label_w = 240, bar_w = 420;
    Svg svg(label_w + bar_w + 100, 40 + row * static_cast<double>(bars.size()));
    svg.text(10, 20, title, 14);
    double lo = 0, hi = 0;
    for (const auto& [l, v] : bars) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double span = hi > lo ? hi - lo : 1.0;
    const double zero = label_w + (0 - lo) / span * bar_w;
    for (std::size_t i = 0; i < bars.size(); ++i) {
        const double y = 30 + row * static_cast<double>(i);
        const double end = label_w + (bars[i].second - lo) / span * bar_w;
        svg.text(label_w - 8, y + 14, bars[i].first, 12, "end");
        svg.rect(std::min(zero, end), y + 3, std::abs(end - zero), row - 6, palette(0));
        svg.text(std::max(zero, end) + 4, y + 14, format_number(bars[i].second).substr(0, 8), 10);
    }
    return svg.str();
}

inline void scatter_panel(Svg& svg, const Json& points, double x0, double y0, double w, double h,
                                 const std::string& title) {
    std::vector<std::pair<double, double>> all;
    for (const auto& p : points)
        all.emplace_back(num(p["x"]), num(p["y"]));
    const auto f = fit(all, x0 + 20, y0 + 30, w - 40, h - 50);
    svg.text(x0 + 10, y0 + 18, title, 14);
    for (const auto& p : points) {
        const double x = f.sx(num(p["x"])), y = f.sy(num(p["y"]));
        std::string color = "#555555";
        if (p.contains("cluster_id") && p["cluster_id"].is_number())
            color = palette(p["cluster_id"].get<std::size_t>());
        else if (p.contains("year") && p.contains("anchor"))
            color = p.value("side", 0) == 0 ? palette(0) : palette(1);
        const bool anchor = p.value("anchor", false);
        svg.circle(x, y, anchor ? 6 : 4, color);
        svg.text(x + 7, y + 4, p["label"].get<std::string>(), anchor ? 13 : 11, "start", color);
    }
}

inline std::string drift_map_svg(const Json& r) {
    const auto& hoods = r["neighborhoods"];
    const double w = 640, h = 480;
    Svg svg(w, h * static_cast<double>(std::max<std::size_t>(1, hoods.size())));
    double y0 = 0;
    for (const auto& hood : hoods) {
        Json pts = Json::array();
        for (auto p : hood["from_points"]) {
            p["side"] = 0;
            pts.push_back(p);
        }
        for (auto p : hood["to_points"]) {
            p["side"] = 1;
            pts.push_back(p);
        }
        scatter_panel(svg, pts, 0, y0, w, h, "Semantic drift of '" + hood["word"].get<std::string>() + "'");
        std::vector<std::pair<double, double>> all;
        for (const auto& p : pts)
            all.emplace_back(num(p["x"]), num(p["y"]));
        const auto f = fit(all, 20, y0 + 30, w - 40, h - 50);
        const auto& a = hood["from_points"][0];
        const auto& b = hood["to_points"][0];
        svg.line(f.sx(num(a["x"])), f.sy(num(a["y"])), f.sx(num(b["x"])), f.sy(num(b["y"])), "#d62728", 1.5);
        y0 += h;
    }
    return svg.str();
}

inline std::string clusters_svg(const Json& r) {
    const auto& years = r["years"];
    const double w = 560, h = 440;
    Svg svg(w, h * static_cast<double>(std::max<std::size_t>(1, years.size())));
    double y0 = 0;
    for (const auto& y : years) {
        scatter_panel(svg, y["points"], 0, y0, w, h,
                      "Clusters in " + std::to_string(y["year"].get<int>()) + " (k=" +
                          std::to_string(y["clustering"]["k"].get<std::size_t>()) + ")");
        y0 += h;
    }
    return svg.str();
}

inline std::string heat_color(double v, double scale) {
    const double t = scale > 0 ? std::clamp(v / scale, -1.0, 1.0) : 0.0;
    const int r = t < 0 ? static_cast<int>(255 * (1 + t)) : 255;
    const int g = static_cast<int>(255 * (1 - std::abs(t)));
    const int b = t > 0 ? static_cast<int>(255 * (1 - t)) : 255;
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
    return buf;
}

inline std::string heatmap_svg(const Json& r) {
    const auto terms = r["terms"].get<std::vector<std::string>>();
    const double cell = 24, margin = 140;
    const double n = static_cast<double>(terms.size());
    Svg svg(margin + cell * n + 20, margin + cell * n + 20);
    double scale = 0;
    for (const auto& row : r["values"])
        for (const auto& v : row)
            scale = std::max(scale, std::abs(num(v)));
    svg.text(10, 20,
             "Acceleration " + std::to_string(r["from_year"].get<int>()) + " to " +
                 std::to_string(r["to_year"].get<int>()),
             14);
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const double pos = margin + cell * static_cast<double>(i);
        svg.text(margin - 6, pos + cell * 0.7, terms[i], 11, "end");
        svg.text(pos + cell * 0.5, margin - 6, terms[i], 11, "middle");
        for (std::size_t j = 0; j < terms.size(); ++j)
            svg.rect(margin + cell * static_cast<double>(j), pos, cell - 1, cell - 1,
                     heat_color(num(r["values"][i][j]), scale));
    }
    return svg.str();
}

}  // namespace detail

/// SVG for plot-shaped results; nullopt when the method has no graphic export.
inline std::optional<std::string> render_svg(const Json& envelope) {
    const auto method = envelope.at("method").get<std::string>();
    const auto& r = envelope.at("result");
    if (method == "word_cloud")
        return detail::word_cloud_svg(r);
    if (method == "productivity")
        return detail::productivity_svg(r);
    if (method == "acceleration") {
        std::vector<std::pair<std::string, double>> bars;
        for (const auto& p : r["pairs"])
            bars.emplace_back(p["word_a"].get<std::string>() + " / " + p["word_b"].get<std::string>(),
                              detail::num(p["acceleration"]));
        return detail::bars_svg(bars, "Top accelerating pairs, " + std::to_string(r["year"].get<int>()) + " to " +
                                          std::to_string(r["year"].get<int>() + 1));
    }
    if (method == "yake") {
        std::vector<std::pair<std::string, double>> bars;
        for (const auto& k : r["keywords"])
            bars.emplace_back(k["ngram"].get<std::string>(), detail::num(k["display_score"]));
        return detail::bars_svg(bars, "YAKE keywords (display score)");
    }
    if (method == "semantic_drift")
        return detail::drift_map_svg(r);
    if (method == "track_clusters")
        return detail::clusters_svg(r);
    if (method == "acceleration_heatmap")
        return detail::heatmap_svg(r);
    return std::nullopt;
}

/// Tabular view of every method's result.
inline std::string render_csv(const Json& envelope) {
    const auto method = envelope.at("method").get<std::string>();
    const auto& r = envelope.at("result");
    std::ostringstream out;
    auto str = [](const Json& j) { return csv_field(j.is_string() ? j.get<std::string>() : j.dump()); };
    if (method == "word_cloud") {
        out << "term,count,weight,x,y,placed\n";
        for (const auto& e : r["entries"])
            out << str(e["term"]) << ',' << e["count"] << ',' << json_number(e["weight"]) << ','
                << json_number(e["x"]) << ',' << json_number(e["y"]) << ',' << e["placed"] << '\n';
    } else if (method == "productivity") {
        out << "term,year,entropy,norm_freq,trend\n";
        for (const auto& s : r["series"])
            for (const auto& p : s["points"])
                out << str(s["term"]) << ',' << p["year"] << ',' << json_number(p["entropy"]) << ','
                    << json_number(p["norm_freq"]) << ',' << (s["trend"].is_null() ? "" : str(s["trend"])) << '\n';
    } else if (method == "acceleration") {
        out << "word_a,word_b,from_year,to_year,similarity_from,similarity_to,acceleration\n";
        for (const auto& p : r["pairs"])
            out << str(p["word_a"]) << ',' << str(p["word_b"]) << ',' << p["from_year"] << ',' << p["to_year"] << ','
                << json_number(p["similarity_from"]) << ',' << json_number(p["similarity_to"]) << ','
                << json_number(p["acceleration"]) << '\n';
    } else if (method == "semantic_drift") {
        out << "word,year_from,year_to,metric,distance\n";
        for (const auto& e : r["entries"])
            out << str(e["word"]) << ',' << e["year_from"] << ',' << e["year_to"] << ',' << str(e["metric"]) << ','
                << json_number(e["distance"]) << '\n';
    } else if (method == "track_clusters") {
        out << "year,term,x,y,cluster_id\n";
        for (const auto& y : r["years"])
            for (const auto& p : y["points"])
                out << y["year"] << ',' << str(p["term"]) << ',' << json_number(p["x"]) << ',' << json_number(p["y"])
                    << ',' << (p["cluster_id"].is_null() ? "" : p["cluster_id"].dump()) << '\n';
    } else if (method == "acceleration_heatmap") {
        const auto& terms = r["terms"];
        out << "term";
        for (const auto& t : terms)
            out << ',' << str(t);
        out << '\n';
        for (std::size_t i = 0; i < terms.size(); ++i) {
            out << str(terms[i]);
            for (const auto& v : r["values"][i])
                out << ',' << json_number(v);
            out << '\n';
        }
    } else if (method == "track_trends") {
        out << "step,word,year\n";
        std::size_t i = 0;
        for (const auto& p : r["points"])
            out << i++ << ',' << str(p["word"]) << ',' << p["year"] << '\n';
    } else if (method == "yake") {
        out << "ngram,raw_score,display_score\n";
        for (const auto& k : r["keywords"])
            out << str(k["ngram"]) << ',' << json_number(k["raw_score"]) << ',' << json_number(k["display_score"])
                << '\n';
    } else if (method == "lda") {
        out << "year";
        for (std::size_t t = 0; t < r["topics_count"].get<std::size_t>(); ++t)
            out << ",topic_" << t;
        out << '\n';
        for (const auto& y : r["years"]) {
            out << y["year"];
            for (const auto& v : y["distribution"])
                out << ',' << json_number(v);
            out << '\n';
        }
    }
    return out.str();
}

}  // namespace drift::service
