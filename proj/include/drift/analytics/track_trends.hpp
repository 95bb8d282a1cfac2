#pragma once

// Trend trajectories: starting from (word, year_1), repeatedly look for the most
// similar words in the next `stride` years and follow one of them, until year_2.

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "drift/embedding/similarity.hpp"
#include "drift/embedding/temporal_model.hpp"
#include "drift/error.hpp"

namespace drift::analytics {

struct TrajectoryPoint {
    std::string word;
    int year = 0;
    friend bool operator==(const TrajectoryPoint&, const TrajectoryPoint&) = default;
};

enum class TrajectoryStatus { in_progress, reached_end, no_candidates };

inline std::string_view to_string(TrajectoryStatus s) {
    switch (s) {
    case TrajectoryStatus::in_progress: return "in_progress";
    case TrajectoryStatus::reached_end: return "reached_end";
    case TrajectoryStatus::no_candidates: return "no_candidates";
    }
    return "in_progress";
}

struct TrajectoryStep {
    std::vector<embedding::Neighbor> candidates;
    std::size_t chosen = 0;
};

struct Trajectory {
    std::vector<TrajectoryPoint> points;  // starts at the seed
    std::vector<TrajectoryStep> steps;    // steps[i] led from points[i] to points[i + 1]
    std::size_t stride = 1;
    int year_to = 0;
    TrajectoryStatus status = TrajectoryStatus::in_progress;
    std::vector<embedding::Neighbor> pending;  // candidates offered for the next step, if any
};

using TrendChooser = std::function<std::size_t(const std::vector<embedding::Neighbor>&, const Trajectory&)>;

inline std::size_t choose_most_similar(const std::vector<embedding::Neighbor>&, const Trajectory&) { return 0; }

/// Candidates for the step after `points.back()`: the k_sim most similar words over the
/// trained years in [year+1, min(year+stride, year_to)], skipping words already visited.
inline std::vector<embedding::Neighbor> trajectory_candidates(const embedding::TemporalModel& model,
                                                              const std::vector<TrajectoryPoint>& points,
                                                              int year_to, std::size_t stride, std::size_t k_sim) {
    const auto& last = points.back();
    std::vector<int> years;
    const long long stop = std::min<long long>(static_cast<long long>(last.year) + static_cast<long long>(stride), year_to);
    for (long long y = static_cast<long long>(last.year) + 1; y <= stop; ++y)
        if (model.has_year(static_cast<int>(y)))
            years.push_back(static_cast<int>(y));
    if (years.empty())
        return {};
    std::set<std::string> visited;
    for (const auto& p : points)
        visited.insert(p.word);
    return embedding::most_similar(model, model.embedding_of(last.word, last.year), years, k_sim, visited);
}

inline void validate_trajectory_request(const embedding::TemporalModel& model, const std::string& word, int y1,
                                        std::size_t stride, std::size_t k_sim) {
    if (stride < 1)
        fail(ErrorKind::config, "stride must be >= 1");
    if (k_sim < 1)
        fail(ErrorKind::config, "k_sim must be >= 1");
    model.embedding_of(word, y1);
}

/// Advances a client-held trajectory by one choice. With `chosen_index` unset only the
/// next candidates are computed. Used by the stateless service and by `track_trends`.
inline Trajectory advance_trajectory(const embedding::TemporalModel& model, Trajectory traj, std::size_t k_sim,
                                     std::optional<std::size_t> chosen_index) {
    if (traj.points.empty())
        fail(ErrorKind::config, "trajectory has no seed point");
    for (std::size_t i = 1; i < traj.points.size(); ++i)
        if (traj.points[i].year <= traj.points[i - 1].year)
            fail(ErrorKind::config, "trajectory years must strictly increase");

    auto refresh = [&] {
        traj.pending.clear();
        if (traj.points.back().year >= traj.year_to) {
            traj.status = TrajectoryStatus::reached_end;
            return;
        }
        traj.pending = trajectory_candidates(model, traj.points, traj.year_to, traj.stride, k_sim);
        traj.status = traj.pending.empty() ? TrajectoryStatus::no_candidates : TrajectoryStatus::in_progress;
    };
    refresh();
    if (chosen_index && traj.status == TrajectoryStatus::in_progress) {
        if (*chosen_index >= traj.pending.size())
            fail(ErrorKind::selection, "chosen index " + std::to_string(*chosen_index) + " is outside the " +
                                           std::to_string(traj.pending.size()) + " candidates");
        const auto& pick = traj.pending[*chosen_index];
        traj.points.push_back({pick.term, pick.year});
        traj.steps.push_back({traj.pending, *chosen_index});
        refresh();
    }
    return traj;
}

inline Trajectory track_trends(const embedding::TemporalModel& model, const std::string& word, int y1, int y2,
                               std::size_t stride, std::size_t k_sim,
                               const TrendChooser& chooser = choose_most_similar) {
    validate_trajectory_request(model, word, y1, stride, k_sim);
    Trajectory traj;
    traj.points.push_back({word, y1});
    traj.stride = stride;
    traj.year_to = y2;
    traj = advance_trajectory(model, std::move(traj), k_sim, std::nullopt);
    while (traj.status == TrajectoryStatus::in_progress) {
        const std::size_t pick = chooser(traj.pending, traj);
        traj = advance_trajectory(model, std::move(traj), k_sim, pick);
    }
    return traj;
}

}  // namespace drift::analytics
