#pragma once

// On-disk model registry. Each model lives in <root>/<model_id>/ next to a copy of the
// preprocessed corpus it was trained on; <root>/latest names the most recent one.

#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unistd.h>

#include "drift/embedding/model_io.hpp"
#include "drift/embedding/trainer.hpp"
#include "drift/service/dataset.hpp"

namespace drift::service {

inline constexpr const char* dataset_file_name = "corpus.jsonl";
inline constexpr const char* latest_alias = "latest";

struct LoadedModel {
    std::string id;
    std::filesystem::path path;
    embedding::TemporalModel model;
    corpus::SliceMap slices;
};

struct TrainOutcome {
    std::string model_id;
    std::filesystem::path path;
};

class ModelStore {
public:
    explicit ModelStore(std::filesystem::path root) : root_(std::move(root)) {}

    const std::filesystem::path& root() const { return root_; }

    /// Trains into a scratch directory and renames it into place, so a failure leaves no partial model.
    TrainOutcome train(const std::filesystem::path& data_path, const embedding::TrainConfig& config,
                       const embedding::ProgressFn& progress = {}) const {
        config.validate();
        const auto dataset = load_dataset(data_path);
        auto model = embedding::train_temporal_model(dataset.slices, config, progress);

        std::filesystem::create_directories(root_);
        static std::atomic<unsigned> counter{0};
        const auto tmp = root_ / (".tmp-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        std::error_code ec;
        std::filesystem::remove_all(tmp, ec);
        try {
            Json extra{{"dataset_hash", hex64(dataset.hash)}};
            embedding::save_temporal_model(model, tmp, extra);
            std::filesystem::copy_file(data_path, tmp / dataset_file_name,
                                       std::filesystem::copy_options::overwrite_existing);
        } catch (...) {
            std::filesystem::remove_all(tmp, ec);
            throw;
        }
        const auto id = embedding::model_content_id(model);
        const auto dest = root_ / id;
        if (std::filesystem::exists(dest / "manifest.json")) {
            std::filesystem::remove_all(tmp, ec);  // identical content already stored
        } else {
            std::filesystem::remove_all(dest, ec);
            std::filesystem::rename(tmp, dest, ec);
            if (ec) {
                std::filesystem::remove_all(tmp, ec);
                fail(ErrorKind::io, "cannot move model into " + dest.string());
            }
        }
        write_text_atomically(root_ / latest_alias, id + "\n");
        return {id, dest};
    }

    /// Maps "latest" to its target; any other id must name an existing model directory.
    std::string resolve(const std::string& id) const {
        std::string target = id;
        if (id.empty() || id == latest_alias) {
            std::ifstream in(root_ / latest_alias);
            if (!in || !std::getline(in, target) || target.empty())
                fail(ErrorKind::not_found, "no model has been trained yet under " + root_.string());
        }
        if (target.find('/') != std::string::npos || target.find("..") != std::string::npos ||
            target.front() == '.' || !std::filesystem::is_directory(root_ / target))
            fail(ErrorKind::not_found, "unknown model '" + id + "'");
        return target;
    }

    /// Loaded models are immutable and cached for the life of the store.
    std::shared_ptr<const LoadedModel> get(const std::string& id) const {
        const auto resolved = resolve(id);
        {
            std::lock_guard lock(mutex_);
            if (auto it = cache_.find(resolved); it != cache_.end())
                return it->second;
        }
        auto loaded = std::make_shared<LoadedModel>();
        loaded->id = resolved;
        loaded->path = root_ / resolved;
        loaded->model = embedding::load_temporal_model(loaded->path);
        loaded->slices = load_dataset(loaded->path / dataset_file_name).slices;
        std::lock_guard lock(mutex_);
        return cache_.emplace(resolved, std::move(loaded)).first->second;
    }

    /// One entry per model directory; an unreadable manifest yields valid=false instead of an error.
    Json list() const {
        Json out = Json::array();
        std::error_code ec;
        if (!std::filesystem::is_directory(root_, ec))
            return out;
        std::vector<std::filesystem::path> dirs;
        for (const auto& e : std::filesystem::directory_iterator(root_, ec))
            if (e.is_directory() && e.path().filename().string().front() != '.')
                dirs.push_back(e.path());
        std::sort(dirs.begin(), dirs.end());
        std::string latest;
        {
            std::ifstream in(root_ / latest_alias);
            if (in)
                std::getline(in, latest);
        }
        for (const auto& d : dirs) {
            Json entry{{"model_id", d.filename().string()}, {"path", d.string()}};
            try {
                const auto m = embedding::read_manifest(d);
                entry["valid"] = true;
                entry["latest"] = d.filename().string() == latest;
                entry["manifest"] = Json::parse(m.dump());
            } catch (const Error& e) {
                entry["valid"] = false;
                entry["latest"] = d.filename().string() == latest;
                entry["error"] = e.what();
            }
            out.push_back(std::move(entry));
        }
        return out;
    }

private:
    std::filesystem::path root_;
    mutable std::mutex mutex_;
    mutable std::map<std::string, std::shared_ptr<const LoadedModel>> cache_;
};

}  // namespace drift::service
