#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "drift/corpus/vocabulary.hpp"
#include "drift/embedding/matrix.hpp"
#include "drift/embedding/train_config.hpp"
#include "drift/error.hpp"

namespace drift::embedding {

struct CompassModel {
    corpus::Vocabulary vocabulary;
    Matrix target_matrix;             // frozen output layer shared by every year
    Matrix atemporal_context_matrix;  // warm start for the year models
};

struct YearModel {
    int year = 0;
    Matrix context_matrix;
};

/// Compass plus one aligned context matrix per year. Immutable once trained.
class TemporalModel {
public:
    TemporalModel() = default;
    TemporalModel(CompassModel compass, std::map<int, YearModel> years, TrainConfig config)
        : compass_(std::move(compass)), years_(std::move(years)), config_(config) {}

    const CompassModel& compass() const { return compass_; }
    const corpus::Vocabulary& vocabulary() const { return compass_.vocabulary; }
    const std::map<int, YearModel>& year_models() const { return years_; }
    const TrainConfig& config() const { return config_; }
    std::size_t dim() const { return compass_.target_matrix.cols(); }

    std::vector<int> years() const {
        std::vector<int> ys;
        for (const auto& [y, m] : years_)
            ys.push_back(y);
        return ys;
    }
    bool has_year(int year) const { return years_.contains(year); }

    const YearModel& year_model(int year) const {
        auto it = years_.find(year);
        if (it == years_.end())
            fail(ErrorKind::range, "year " + std::to_string(year) + " is not trained");
        return it->second;
    }

    std::size_t word_id(const std::string& word) const {
        auto id = compass_.vocabulary.id_of(word);
        if (!id)
            fail(ErrorKind::out_of_vocabulary, "word '" + word + "' is not in the vocabulary");
        return *id;
    }

    std::span<const double> embedding_of(const std::string& word, int year) const {
        const auto id = word_id(word);
        return year_model(year).context_matrix.row(id);
    }

private:
    CompassModel compass_;
    std::map<int, YearModel> years_;
    TrainConfig config_;
};

inline std::span<const double> embedding_of(const TemporalModel& model, const std::string& word, int year) {
    return model.embedding_of(word, year);
}

}  // namespace drift::embedding
