#pragma once

// On-disk model layout (one directory per model):
//
//   manifest.json         config, vocabulary hash, years, model id, creation time
//   vocab.tsv             term, total count, then one count column per year
//   compass_target.bin    frozen target matrix
//   compass_context.bin   atemporal context matrix
//   year_<YYYY>.bin       per-year context matrix
//
// Matrix files: 8-byte magic "DRIFTMAT", u32 version, u32 reserved, u64 rows,
// u64 cols, u64 vocabulary hash, i64 year (compass files use INT64_MIN), then
// rows*cols IEEE-754 doubles, all little-endian.

#include <bit>
#include <chrono>
#include <cstdint>
#include <cstring>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include <json.hpp>

#include "drift/embedding/temporal_model.hpp"
#include "drift/error.hpp"
#include "drift/hash.hpp"

namespace drift::embedding {

static_assert(std::endian::native == std::endian::little, "model files assume a little-endian host");

inline constexpr char matrix_magic[8] = {'D', 'R', 'I', 'F', 'T', 'M', 'A', 'T'};
inline constexpr std::uint32_t matrix_format_version = 1;
inline constexpr std::int64_t compass_year_tag = std::numeric_limits<std::int64_t>::min();

struct MatrixHeader {
    std::uint64_t rows = 0;
    std::uint64_t cols = 0;
    std::uint64_t vocab_hash = 0;
    std::int64_t year = compass_year_tag;
};

namespace detail {

template <typename T>
void put(std::ostream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get(std::istream& in, const std::filesystem::path& path) {
    T v{};
    if (!in.read(reinterpret_cast<char*>(&v), sizeof v))
        fail(ErrorKind::parse, "truncated matrix file " + path.string());
    return v;
}

}  // namespace detail

inline void write_matrix(const std::filesystem::path& path, const Matrix& m, std::uint64_t vocab_hash,
                         std::int64_t year) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        fail(ErrorKind::io, "cannot write " + path.string());
    out.write(matrix_magic, sizeof matrix_magic);
    detail::put(out, matrix_format_version);
    detail::put(out, std::uint32_t{0});
    detail::put(out, static_cast<std::uint64_t>(m.rows()));
    detail::put(out, static_cast<std::uint64_t>(m.cols()));
    detail::put(out, vocab_hash);
    detail::put(out, year);
    out.write(reinterpret_cast<const char*>(m.data().data()),
              static_cast<std::streamsize>(m.data().size() * sizeof(double)));
    if (!out)
        fail(ErrorKind::io, "write failed for " + path.string());
}

inline Matrix read_matrix(const std::filesystem::path& path, MatrixHeader* header_out = nullptr) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorKind::io, "cannot read " + path.string());
    char magic[8];
    if (!in.read(magic, sizeof magic) || std::memcmp(magic, matrix_magic, sizeof magic) != 0)
        fail(ErrorKind::parse, path.string() + " is not a matrix file");
    const auto version = detail::get<std::uint32_t>(in, path);
    if (version != matrix_format_version)
        fail(ErrorKind::parse, path.string() + ": unsupported format version " + std::to_string(version));
    detail::get<std::uint32_t>(in, path);
    MatrixHeader h;
    h.rows = detail::get<std::uint64_t>(in, path);
    h.cols = detail::get<std::uint64_t>(in, path);
    h.vocab_hash = detail::get<std::uint64_t>(in, path);
    h.year = detail::get<std::int64_t>(in, path);
    Matrix m(h.rows, h.cols);
    if (!in.read(reinterpret_cast<char*>(m.data().data()),
                 static_cast<std::streamsize>(m.data().size() * sizeof(double))))
        fail(ErrorKind::parse, "truncated matrix data in " + path.string());
    if (header_out)
        *header_out = h;
    return m;
}

inline nlohmann::ordered_json config_to_json(const TrainConfig& c) {
    nlohmann::ordered_json j;
    j["dim"] = c.dim;
    j["static_iters"] = c.static_iters;
    j["dynamic_iters"] = c.dynamic_iters;
    j["negatives"] = c.negatives;
    j["window"] = c.window;
    j["learning_rate"] = c.learning_rate;
    j["seed"] = c.seed;
    j["min_count"] = c.min_count;
    j["threads"] = c.threads;
    return j;
}

/// Missing keys keep their defaults; present keys must have the right type; unknown keys are rejected.
inline TrainConfig config_from_json(const nlohmann::json& j, TrainConfig c = {}) {
    const auto known = config_to_json(c);
    for (const auto& [key, value] : j.items())
        if (!known.contains(key))
            fail(ErrorKind::config, "unknown training option '" + key + "'");
    auto take = [&](const char* key, auto& field) {
        auto it = j.find(key);
        if (it == j.end() || it->is_null())
            return;
        using F = std::remove_reference_t<decltype(field)>;
        try {
            if constexpr (std::is_floating_point_v<F>) {
                if (!it->is_number())
                    throw std::invalid_argument("number expected");
                field = it->template get<F>();
            } else {
                if (!it->is_number_integer() && !it->is_number_unsigned())
                    throw std::invalid_argument("integer expected");
                if (it->is_number_integer() && it->template get<long long>() < 0)
                    throw std::invalid_argument("non-negative integer expected");
                field = it->template get<F>();
            }
        } catch (const std::exception& e) {
            fail(ErrorKind::config, std::string("invalid value for '") + key + "': " + e.what());
        }
    };
    take("dim", c.dim);
    take("static_iters", c.static_iters);
    take("dynamic_iters", c.dynamic_iters);
    take("negatives", c.negatives);
    take("window", c.window);
    take("learning_rate", c.learning_rate);
    take("seed", c.seed);
    take("min_count", c.min_count);
    take("threads", c.threads);
    return c;
}

/// Content hash of vocabulary, config and every matrix; independent of creation time.
inline std::string model_content_id(const TemporalModel& model) {
    Fnv1a h;
    h.update(config_to_json(model.config()).dump());
    h.update_value(model.vocabulary().hash());
    auto add = [&](const Matrix& m) {
        h.update(std::as_bytes(std::span(m.data().data(), m.data().size())));
    };
    add(model.compass().target_matrix);
    add(model.compass().atemporal_context_matrix);
    for (const auto& [year, ym] : model.year_models()) {
        h.update_value(static_cast<std::int64_t>(year));
        add(ym.context_matrix);
    }
    return hex64(h.digest());
}

inline std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Writes all model files into `dir` (created if missing). `extra` is merged into the manifest.
inline void save_temporal_model(const TemporalModel& model, const std::filesystem::path& dir,
                                const nlohmann::ordered_json& extra = nlohmann::ordered_json::object()) {
    std::filesystem::create_directories(dir);
    const auto& vocab = model.vocabulary();
    const auto vh = vocab.hash();

    write_matrix(dir / "compass_target.bin", model.compass().target_matrix, vh, compass_year_tag);
    write_matrix(dir / "compass_context.bin", model.compass().atemporal_context_matrix, vh, compass_year_tag);
    for (const auto& [year, ym] : model.year_models())
        write_matrix(dir / ("year_" + std::to_string(year) + ".bin"), ym.context_matrix, vh, year);

    {
        std::ofstream out(dir / "vocab.tsv", std::ios::binary | std::ios::trunc);
        if (!out)
            fail(ErrorKind::io, "cannot write vocabulary in " + dir.string());
        out << "term\ttotal";
        for (const auto& [year, counts] : vocab.per_year_counts())
            out << '\t' << year;
        out << '\n';
        for (std::size_t i = 0; i < vocab.size(); ++i) {
            out << vocab.term(i) << '\t' << vocab.total_count(i);
            for (const auto& [year, counts] : vocab.per_year_counts())
                out << '\t' << counts[i];
            out << '\n';
        }
    }

    nlohmann::ordered_json manifest;
    manifest["format_version"] = matrix_format_version;
    manifest["model_id"] = model_content_id(model);
    manifest["created_at"] = utc_timestamp();
    manifest["vocabulary_hash"] = hex64(vh);
    manifest["vocabulary_size"] = vocab.size();
    manifest["min_count"] = vocab.min_count();
    manifest["dim"] = model.dim();
    manifest["years"] = model.years();
    manifest["config"] = config_to_json(model.config());
    for (const auto& [k, v] : extra.items())
        manifest[k] = v;
    std::ofstream out(dir / "manifest.json", std::ios::binary | std::ios::trunc);
    if (!out)
        fail(ErrorKind::io, "cannot write manifest in " + dir.string());
    out << manifest.dump(2) << '\n';
}

inline nlohmann::json read_manifest(const std::filesystem::path& dir) {
    std::ifstream in(dir / "manifest.json");
    if (!in)
        fail(ErrorKind::io, "no manifest in " + dir.string());
    try {
        auto j = nlohmann::json::parse(in);
        if (!j.is_object() || !j.contains("years") || !j.contains("config") || !j.contains("vocabulary_hash"))
            fail(ErrorKind::parse, "manifest in " + dir.string() + " lacks required keys");
        return j;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::parse, "corrupted manifest in " + dir.string() + ": " + e.what());
    }
}

inline TemporalModel load_temporal_model(const std::filesystem::path& dir) {
    const auto manifest = read_manifest(dir);
    const auto config = config_from_json(manifest.at("config"));

    std::ifstream vin(dir / "vocab.tsv");
    if (!vin)
        fail(ErrorKind::io, "no vocabulary in " + dir.string());
    std::string line;
    std::getline(vin, line);
    std::vector<int> years;
    {
        std::istringstream hs(line);
        std::string col;
        int idx = 0;
        while (std::getline(hs, col, '\t'))
            if (idx++ >= 2)
                years.push_back(std::stoi(col));
    }
    std::vector<std::string> terms;
    std::vector<std::size_t> totals;
    std::map<int, std::vector<std::size_t>> per_year;
    while (std::getline(vin, line)) {
        if (line.empty())
            continue;
        std::istringstream ls(line);
        std::string term, col;
        std::getline(ls, term, '\t');
        std::getline(ls, col, '\t');
        terms.push_back(term);
        totals.push_back(std::stoull(col));
        for (int y : years) {
            std::getline(ls, col, '\t');
            per_year[y].push_back(std::stoull(col));
        }
    }
    corpus::Vocabulary vocab(std::move(terms), std::move(totals), std::move(per_year),
                             manifest.value("min_count", config.min_count));
    const auto vh = vocab.hash();
    const auto rows = vocab.size();
    if (hex64(vh) != manifest.at("vocabulary_hash").get<std::string>())
        fail(ErrorKind::parse, "vocabulary hash mismatch in " + dir.string());

    auto checked = [&](const std::filesystem::path& p, std::int64_t year) {
        MatrixHeader h;
        auto m = read_matrix(p, &h);
        if (h.vocab_hash != vh || h.rows != rows || h.year != year)
            fail(ErrorKind::parse, p.string() + " does not match the model vocabulary");
        return m;
    };
    CompassModel compass;
    compass.target_matrix = checked(dir / "compass_target.bin", compass_year_tag);
    compass.atemporal_context_matrix = checked(dir / "compass_context.bin", compass_year_tag);
    compass.vocabulary = std::move(vocab);

    std::map<int, YearModel> year_models;
    for (int y : manifest.at("years").get<std::vector<int>>())
        year_models.emplace(y, YearModel{y, checked(dir / ("year_" + std::to_string(y) + ".bin"), y)});
    return TemporalModel(std::move(compass), std::move(year_models), config);
}

}  // namespace drift::embedding
