#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "drift/corpus/document.hpp"
#include "drift/error.hpp"

namespace drift::corpus {

struct LoadResult {
    std::vector<RawDocument> documents;
    std::size_t skipped = 0;  // records without a usable text field
};

namespace detail {

inline std::string string_field(const nlohmann::json& rec, const std::string& key) {
    auto it = rec.find(key);
    if (it == rec.end() || it->is_null())
        return {};
    if (it->is_string())
        return it->get<std::string>();
    if (it->is_number_integer())
        return std::to_string(it->get<long long>());
    return it->dump();
}

inline std::vector<std::string> authors_field(const nlohmann::json& rec) {
    std::vector<std::string> out;
    auto it = rec.find("authors");
    if (it == rec.end())
        return out;
    if (it->is_array()) {
        for (const auto& a : *it)
            if (a.is_string())
                out.push_back(a.get<std::string>());
    } else if (it->is_string()) {
        out.push_back(it->get<std::string>());
    }
    return out;
}

inline bool record_to_document(const nlohmann::json& rec, const std::string& text_key,
                               const std::string& date_key, std::size_t index, RawDocument& doc) {
    if (!rec.is_object())
        return false;
    auto text = rec.find(text_key);
    if (text == rec.end() || !text->is_string() || text->get_ref<const std::string&>().empty())
        return false;
    doc.abstract = text->get<std::string>();
    doc.url = string_field(rec, "url");
    doc.id = string_field(rec, "id");
    if (doc.id.empty())
        doc.id = doc.url.empty() ? "record-" + std::to_string(index) : doc.url;
    doc.submitted = string_field(rec, date_key);
    doc.title = string_field(rec, "title");
    doc.authors = authors_field(rec);
    return true;
}

}  // namespace detail

/// Reads a JSON array of objects or JSON-lines. Records lacking `text_key` are skipped and counted.
inline LoadResult load_json_corpus(const std::filesystem::path& path, const std::string& text_key,
                                   const std::string& date_key = "date") {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorKind::io, "cannot read corpus file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string content = buf.str();

    LoadResult result;
    std::size_t first = content.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && content[first] == '[') {
        nlohmann::json arr;
        try {
            arr = nlohmann::json::parse(content);
        } catch (const nlohmann::json::parse_error& e) {
            fail(ErrorKind::parse, path.string() + ": " + e.what());
        }
        std::size_t index = 0;
        for (const auto& rec : arr) {
            RawDocument doc;
            if (detail::record_to_document(rec, text_key, date_key, index++, doc))
                result.documents.push_back(std::move(doc));
            else
                ++result.skipped;
        }
    } else {
        std::istringstream lines(content);
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(lines, line)) {
            ++line_no;
            if (line.find_first_not_of(" \t\r") == std::string::npos)
                continue;
            nlohmann::json rec;
            try {
                rec = nlohmann::json::parse(line);
            } catch (const nlohmann::json::parse_error& e) {
                fail(ErrorKind::parse, path.string() + ":" + std::to_string(line_no) +
                                           ": invalid JSON: " + e.what());
            }
            RawDocument doc;
            if (detail::record_to_document(rec, text_key, date_key, line_no - 1, doc))
                result.documents.push_back(std::move(doc));
            else
                ++result.skipped;
        }
    }
    if (result.documents.empty())
        fail(ErrorKind::empty_corpus, path.string() + ": no record carries a non-empty '" +
                                          text_key + "' field");
    return result;
}

inline nlohmann::ordered_json to_cache_record(const RawDocument& doc) {
    nlohmann::ordered_json j;
    j["url"] = doc.url.empty() ? doc.id : doc.url;
    j["date"] = doc.submitted;
    j["title"] = doc.title;
    j["authors"] = doc.authors;
    j["abstract"] = doc.abstract;
    return j;
}

/// JSON-lines, one record per line, keys url/date/title/authors/abstract.
inline void write_jsonl_corpus(const std::vector<RawDocument>& docs, const std::filesystem::path& path) {
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        fail(ErrorKind::io, "cannot write " + path.string());
    for (const auto& d : docs)
        out << to_cache_record(d).dump() << '\n';
    if (!out)
        fail(ErrorKind::io, "write failed for " + path.string());
}

inline std::vector<RawDocument> read_jsonl_cache(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorKind::io, "cannot read cache " + path.string());
    std::vector<RawDocument> docs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        nlohmann::json rec;
        try {
            rec = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            fail(ErrorKind::parse, path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
        RawDocument doc;
        if (!detail::record_to_document(rec, "abstract", "date", line_no - 1, doc))
            fail(ErrorKind::parse, path.string() + ":" + std::to_string(line_no) + ": record has no abstract");
        docs.push_back(std::move(doc));
    }
    return docs;
}

}  // namespace drift::corpus
