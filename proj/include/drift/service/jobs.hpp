#pragma once

// FIFO training queue with a single worker thread. Job states only move forward:
// queued -> running -> succeeded | failed.

#include <condition_variable>
#include <deque>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include "drift/service/model_store.hpp"

namespace drift::service {

enum class JobState { queued, running, succeeded, failed };

inline std::string_view to_string(JobState s) {
    switch (s) {
    case JobState::queued: return "queued";
    case JobState::running: return "running";
    case JobState::succeeded: return "succeeded";
    case JobState::failed: return "failed";
    }
    return "queued";
}

struct TrainJob {
    std::string id;
    JobState state = JobState::queued;
    std::filesystem::path data_path;
    embedding::TrainConfig config;
    double progress = 0.0;
    std::optional<std::string> error;
    std::optional<std::string> model_id;
    std::optional<std::filesystem::path> model_path;  // set iff succeeded
};

inline Json to_json(const TrainJob& j) {
    return Json{{"id", j.id},
                {"state", to_string(j.state)},
                {"data_path", j.data_path.string()},
                {"config", embedding::config_to_json(j.config)},
                {"progress", j.progress},
                {"error", j.error ? Json(*j.error) : Json(nullptr)},
                {"model_id", j.model_id ? Json(*j.model_id) : Json(nullptr)},
                {"model_path", j.model_path ? Json(j.model_path->string()) : Json(nullptr)}};
}

class JobQueue {
public:
    using Runner = std::function<TrainOutcome(const TrainJob&, const embedding::ProgressFn&)>;

    explicit JobQueue(Runner runner) : runner_(std::move(runner)), worker_([this] { loop(); }) {}

    explicit JobQueue(const ModelStore& store)
        : JobQueue([&store](const TrainJob& job, const embedding::ProgressFn& progress) {
              return store.train(job.data_path, job.config, progress);
          }) {}

    JobQueue(const JobQueue&) = delete;
    JobQueue& operator=(const JobQueue&) = delete;

    ~JobQueue() {
        {
            std::lock_guard lock(mutex_);
            stopping_ = true;
        }
        cv_.notify_all();
        worker_.join();
    }

    /// Enqueues a job; an identical job still waiting in the queue is a conflict.
    std::string submit(const std::filesystem::path& data_path, const embedding::TrainConfig& config) {
        return enqueue(data_path, config).id;
    }

    /// Like submit() but returns the job as it was when queued, before the worker can touch it.
    TrainJob enqueue(const std::filesystem::path& data_path, const embedding::TrainConfig& config) {
        config.validate();
        std::lock_guard lock(mutex_);
        for (const auto& id : pending_) {
            const auto& j = jobs_.at(id);
            if (j.data_path == data_path && j.config == config)
                fail(ErrorKind::conflict, "an identical training job is already queued: " + id);
        }
        TrainJob job;
        job.id = "job-" + std::to_string(++counter_);
        job.data_path = data_path;
        job.config = config;
        const auto id = job.id;
        jobs_.emplace(id, std::move(job));
        pending_.push_back(id);
        cv_.notify_all();
        return jobs_.at(id);
    }

    TrainJob get(const std::string& id) const {
        std::lock_guard lock(mutex_);
        auto it = jobs_.find(id);
        if (it == jobs_.end())
            fail(ErrorKind::not_found, "unknown job '" + id + "'");
        return it->second;
    }

    /// Blocks until the job has finished or failed.
    TrainJob wait(const std::string& id) const {
        std::unique_lock lock(mutex_);
        cv_.wait(lock, [&] {
            auto it = jobs_.find(id);
            return it == jobs_.end() || it->second.state == JobState::succeeded ||
                   it->second.state == JobState::failed;
        });
        lock.unlock();
        return get(id);
    }

private:
    void loop() {
        for (;;) {
            TrainJob job;
            {
                std::unique_lock lock(mutex_);
                cv_.wait(lock, [&] { return stopping_ || !pending_.empty(); });
                if (stopping_)
                    return;
                auto& j = jobs_.at(pending_.front());
                pending_.pop_front();
                j.state = JobState::running;
                job = j;
            }
            cv_.notify_all();
            auto progress = [&](double f) {
                std::lock_guard lock(mutex_);
                auto& j = jobs_.at(job.id);
                j.progress = std::max(j.progress, std::clamp(f, 0.0, 1.0));
            };
            std::optional<TrainOutcome> outcome;
            std::string error;
            try {
                outcome = runner_(job, progress);
            } catch (const std::exception& e) {
                error = e.what();
            }
            {
                std::lock_guard lock(mutex_);
                auto& j = jobs_.at(job.id);
                if (outcome) {
                    j.state = JobState::succeeded;
                    j.progress = 1.0;
                    j.model_id = outcome->model_id;
                    j.model_path = outcome->path;
                } else {
                    j.state = JobState::failed;
                    j.error = error;
                }
            }
            cv_.notify_all();
        }
    }

    Runner runner_;
    mutable std::mutex mutex_;
    mutable std::condition_variable cv_;
    std::map<std::string, TrainJob> jobs_;
    std::deque<std::string> pending_;
    std::size_t counter_ = 0;
    bool stopping_ = false;
    std::thread worker_;  // last, so it starts after the other members exist
};

}  // namespace drift::service
