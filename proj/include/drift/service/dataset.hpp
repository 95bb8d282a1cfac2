#pragma once

// Preprocessed corpus file: one JSON object per line, {"id", "year", "raw", "tokens"}.

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "drift/corpus/json_loader.hpp"
#include "drift/corpus/slice.hpp"
#include "drift/error.hpp"
#include "drift/hash.hpp"
#include "drift/service/json.hpp"

namespace drift::service {

struct PreprocessRequest {
    std::filesystem::path json_path;
    std::string text_key = "abstract";
    std::string date_key = "date";
    std::filesystem::path data_path;
    corpus::PreprocessOptions options;
    corpus::YearRange years{0, 9999};
};

struct PreprocessSummary {
    std::size_t documents = 0;  // written to data_path
    std::size_t skipped = 0;    // records without the text key
    std::size_t dropped_bad_date = 0;
    std::size_t dropped_out_of_range = 0;
    std::map<int, std::size_t> documents_per_year;
    std::map<int, std::size_t> tokens_per_year;
};

inline Json to_json(const PreprocessSummary& s) {
    Json docs = Json::object(), toks = Json::object();
    for (const auto& [y, n] : s.documents_per_year)
        docs[std::to_string(y)] = n;
    for (const auto& [y, n] : s.tokens_per_year)
        toks[std::to_string(y)] = n;
    return Json{{"documents", s.documents},
                {"skipped", s.skipped},
                {"dropped_bad_date", s.dropped_bad_date},
                {"dropped_out_of_range", s.dropped_out_of_range},
                {"documents_per_year", docs},
                {"tokens_per_year", toks}};
}

/// Reads `options` keys over the defaults; unknown keys are a config error.
inline void apply_preprocess_options(const nlohmann::json& j, PreprocessRequest& req) {
    if (j.is_null())
        return;
    if (!j.is_object())
        fail(ErrorKind::config, "options must be a JSON object");
    auto& o = req.options;
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "lowercase") o.lowercase = value.get<bool>();
            else if (key == "lemmatize") o.lemmatize = value.get<bool>();
            else if (key == "strip_punctuation") o.strip_punctuation = value.get<bool>();
            else if (key == "strip_stopwords") o.strip_stopwords = value.get<bool>();
            else if (key == "strip_non_alphanumeric") o.strip_non_alphanumeric = value.get<bool>();
            else if (key == "min_token_length") o.min_token_length = value.get<std::size_t>();
            else if (key == "domain_stopwords") o.domain_stopwords = value.get<std::set<std::string>>();
            else if (key == "year_min") req.years.min = value.get<int>();
            else if (key == "year_max") req.years.max = value.get<int>();
            else fail(ErrorKind::config, "unknown preprocessing option '" + key + "'");
        } catch (const nlohmann::json::exception&) {
            fail(ErrorKind::config, "preprocessing option '" + key + "' has the wrong type");
        }
    }
}

inline void write_text_atomically(const std::filesystem::path& path, const std::string& content) {
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            fail(ErrorKind::io, "cannot write " + path.string());
        out << content;
        out.flush();
        if (!out)
            fail(ErrorKind::io, "failed writing " + path.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        fail(ErrorKind::io, "cannot write " + path.string());
    }
}

/// Loads, slices and tokenizes a raw corpus, then writes the preprocessed file.
inline PreprocessSummary preprocess_corpus(const PreprocessRequest& req) {
    if (req.data_path.empty())
        fail(ErrorKind::config, "data_path is required");
    if (req.text_key.empty())
        fail(ErrorKind::config, "text_key is required");
    const auto loaded = corpus::load_json_corpus(req.json_path, req.text_key, req.date_key);
    const auto sliced = corpus::slice_by_year(loaded.documents, req.options, req.years);

    PreprocessSummary s;
    s.skipped = loaded.skipped;
    s.dropped_bad_date = sliced.dropped_bad_date;
    s.dropped_out_of_range = sliced.dropped_out_of_range;

    // Document ids follow input order within each year.
    std::map<int, std::size_t> next;
    std::string out;
    for (const auto& doc : loaded.documents) {
        const auto year = corpus::leading_year(doc.submitted);
        if (!year || !req.years.contains(*year))
            continue;
        const auto& slice = sliced.slices.at(*year);
        const auto i = next[*year]++;
        nlohmann::ordered_json rec;
        rec["id"] = doc.id.empty() ? doc.url : doc.id;
        rec["year"] = *year;
        rec["raw"] = slice.raw_texts[i];
        rec["tokens"] = slice.documents[i];
        out += rec.dump();
        out += '\n';
        ++s.documents;
    }
    for (const auto& [year, slice] : sliced.slices) {
        s.documents_per_year[year] = slice.documents.size();
        s.tokens_per_year[year] = slice.total_tokens();
    }
    write_text_atomically(req.data_path, out);
    return s;
}

struct Dataset {
    corpus::SliceMap slices;
    std::uint64_t hash = 0;  // of the file bytes
};

inline Dataset load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorKind::io, "cannot open preprocessed corpus " + path.string());
    Dataset ds;
    Fnv1a h;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        h.update(line);
        h.update(std::string_view("\n"));
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        try {
            const auto rec = nlohmann::json::parse(line);
            const int year = rec.at("year").get<int>();
            auto& slice = ds.slices[year];
            slice.year = year;
            slice.add_document(rec.at("tokens").get<corpus::TokenSequence>(), rec.value("raw", std::string{}));
        } catch (const nlohmann::json::exception& e) {
            fail(ErrorKind::parse, path.string() + ": line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (ds.slices.empty())
        fail(ErrorKind::empty_corpus, "preprocessed corpus " + path.string() + " has no documents");
    ds.hash = h.digest();
    return ds;
}

}  // namespace drift::service
