#pragma once

// Metadata harvesting over the arXiv Atom query API, with a JSON-lines disk cache
// so that reruns are offline.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <regex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include "drift/detail/http.hpp"

#include "drift/corpus/document.hpp"
#include "drift/corpus/json_loader.hpp"
#include "drift/error.hpp"

namespace drift::corpus {

struct ArxivOptions {
    std::string base_url = "https://export.arxiv.org";
    std::string endpoint = "/api/query";
    std::size_t page_size = 100;
    std::chrono::milliseconds request_delay{3000};  // between page requests
    int retries = 3;
    std::chrono::milliseconds retry_backoff{2000};
    std::chrono::seconds timeout{60};
    std::filesystem::path cache_dir;  // empty disables the cache
    std::function<void(std::size_t fetched, std::size_t wanted)> progress;
};

inline bool is_valid_category(const std::string& category) {
    static const std::regex pattern(R"(^[a-z][a-z\-]*(\.[A-Za-z][A-Za-z\-]*)?$)");
    return std::regex_match(category, pattern);
}

namespace detail {

inline std::string collapse_whitespace(const std::string& s) {
    std::string out;
    bool pending_space = false;
    for (unsigned char c : s) {
        if (std::isspace(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space)
            out.push_back(' ');
        pending_space = false;
        out.push_back(static_cast<char>(c));
    }
    return out;
}

inline std::string url_encode(const std::string& s) {
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    for (unsigned char c : s) {
        if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
            out.push_back(static_cast<char>(c));
        } else {
            out.push_back('%');
            out.push_back(hex[c >> 4]);
            out.push_back(hex[c & 15]);
        }
    }
    return out;
}

}  // namespace detail

/// Parses one Atom page. A record missing a required field raises a parse error naming it.
inline std::vector<RawDocument> parse_arxiv_feed(const std::string& xml) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        std::istringstream in(xml);
        pt::read_xml(in, tree);
    } catch (const pt::xml_parser_error& e) {
        fail(ErrorKind::parse, std::string("malformed arXiv response: ") + e.what());
    }
    auto feed = tree.get_child_optional("feed");
    if (!feed)
        fail(ErrorKind::parse, "malformed arXiv response: no <feed> element");

    std::vector<RawDocument> docs;
    std::size_t index = 0;
    for (const auto& [name, entry] : *feed) {
        if (name != "entry")
            continue;
        ++index;
        RawDocument doc;
        doc.id = detail::collapse_whitespace(entry.get<std::string>("id", ""));
        const std::string record = doc.id.empty() ? "entry #" + std::to_string(index) : doc.id;
        if (doc.id.find("/api/errors") != std::string::npos)
            fail(ErrorKind::parse, "arXiv API error: " +
                                       detail::collapse_whitespace(entry.get<std::string>("summary", "")));
        if (doc.id.empty())
            fail(ErrorKind::parse, "malformed arXiv record " + record + ": missing <id>");
        doc.url = doc.id;
        for (const auto& [child, node] : entry) {
            if (child == "link" && node.get<std::string>("<xmlattr>.rel", "") == "alternate")
                doc.url = node.get<std::string>("<xmlattr>.href", doc.id);
            if (child == "author")
                doc.authors.push_back(detail::collapse_whitespace(node.get<std::string>("name", "")));
        }
        const std::string published = entry.get<std::string>("published", "");
        if (!leading_year(published))
            fail(ErrorKind::parse, "malformed arXiv record " + record + ": bad or missing <published>");
        doc.submitted = published.substr(0, std::min<std::size_t>(10, published.size()));
        doc.title = detail::collapse_whitespace(entry.get<std::string>("title", ""));
        doc.abstract = detail::collapse_whitespace(entry.get<std::string>("summary", ""));
        if (doc.abstract.empty())
            fail(ErrorKind::parse, "malformed arXiv record " + record + ": empty <summary>");
        docs.push_back(std::move(doc));
    }
    return docs;
}

inline std::filesystem::path arxiv_cache_path(const ArxivOptions& opts, const std::string& category,
                                              std::size_t max_results, bool sort_by_relevance) {
    return opts.cache_dir / ("arxiv_" + category + "_" + std::to_string(max_results) + "_" +
                             (sort_by_relevance ? "relevance" : "submitted") + ".jsonl");
}

inline std::string arxiv_query_path(const ArxivOptions& opts, const std::string& category,
                                    std::size_t start, std::size_t count, bool sort_by_relevance) {
    return opts.endpoint + "?search_query=" + detail::url_encode("cat:" + category) +
           "&start=" + std::to_string(start) + "&max_results=" + std::to_string(count) +
           "&sortBy=" + (sort_by_relevance ? "relevance" : "submittedDate") + "&sortOrder=descending";
}

/// Up to `max_results` documents of a category; served from the cache when present.
inline std::vector<RawDocument> fetch_arxiv_metadata(const std::string& category, std::size_t max_results,
                                                     bool sort_by_relevance, const ArxivOptions& opts = {}) {
    if (!is_valid_category(category))
        fail(ErrorKind::config, "invalid arXiv category '" + category + "'");

    std::filesystem::path cache;
    if (!opts.cache_dir.empty()) {
        cache = arxiv_cache_path(opts, category, max_results, sort_by_relevance);
        if (std::filesystem::exists(cache))
            return read_jsonl_cache(cache);
    }

    std::vector<RawDocument> docs;
    if (max_results > 0) {
        httplib::Client client(opts.base_url);
        client.set_follow_location(true);
        client.set_connection_timeout(opts.timeout);
        client.set_read_timeout(opts.timeout);

        while (docs.size() < max_results) {
            if (!docs.empty() && opts.request_delay.count() > 0)
                std::this_thread::sleep_for(opts.request_delay);
            const std::size_t want = std::min(opts.page_size, max_results - docs.size());
            const std::string path = arxiv_query_path(opts, category, docs.size(), want, sort_by_relevance);

            std::string body;
            std::string last_error;
            for (int attempt = 0; attempt <= opts.retries; ++attempt) {
                if (attempt > 0)
                    std::this_thread::sleep_for(opts.retry_backoff * attempt);
                auto res = client.Get(path);
                if (!res) {
                    last_error = httplib::to_string(res.error());
                    continue;
                }
                if (res->status >= 500 || res->status == 429) {
                    last_error = "HTTP " + std::to_string(res->status);
                    continue;
                }
                if (res->status != 200)
                    fail(ErrorKind::network, "arXiv request failed with HTTP " + std::to_string(res->status));
                body = std::move(res->body);
                last_error.clear();
                break;
            }
            if (!last_error.empty())
                fail(ErrorKind::network, "arXiv request to " + opts.base_url + " failed: " + last_error);

            auto page = parse_arxiv_feed(body);
            if (page.empty())
                break;
            for (auto& d : page) {
                if (docs.size() == max_results)
                    break;
                docs.push_back(std::move(d));
            }
            if (opts.progress)
                opts.progress(docs.size(), max_results);
        }
    }

    if (!cache.empty())
        write_jsonl_corpus(docs, cache);
    return docs;
}

}  // namespace drift::corpus
