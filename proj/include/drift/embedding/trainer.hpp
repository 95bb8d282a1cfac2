#pragma once

// Compass-aligned temporal embeddings: a CBOW model is trained on the whole
// corpus (the compass); then for each year a copy of the compass context matrix
// is trained on that year's slice only, against the frozen compass target matrix.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <thread>
#include <vector>

#include "drift/corpus/slice.hpp"
#include "drift/corpus/vocabulary.hpp"
#include "drift/embedding/cbow.hpp"
#include "drift/embedding/random.hpp"
#include "drift/embedding/temporal_model.hpp"

namespace drift::embedding {

using ProgressFn = std::function<void(double)>;

namespace detail {

using EncodedDoc = std::vector<std::size_t>;

inline std::vector<EncodedDoc> encode(const std::vector<corpus::TokenSequence>& docs,
                                      const corpus::Vocabulary& vocab) {
    std::vector<EncodedDoc> out;
    out.reserve(docs.size());
    for (const auto& doc : docs) {
        EncodedDoc ids;
        ids.reserve(doc.size());
        for (const auto& t : doc)
            if (auto id = vocab.id_of(t))
                ids.push_back(*id);
        if (!ids.empty())
            out.push_back(std::move(ids));
    }
    return out;
}

// Draws negatives from counts^0.75.
class NegativeSampler {
public:
    explicit NegativeSampler(const std::vector<std::size_t>& counts) {
        cumulative_.reserve(counts.size());
        double acc = 0.0;
        for (auto c : counts) {
            acc += std::pow(static_cast<double>(c), 0.75);
            cumulative_.push_back(acc);
        }
    }

    std::size_t sample(Rng& rng) const {
        const double u = rng.uniform() * cumulative_.back();
        auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
        if (it == cumulative_.end())
            --it;
        return static_cast<std::size_t>(it - cumulative_.begin());
    }

private:
    std::vector<double> cumulative_;
};

inline std::size_t token_total(const std::vector<EncodedDoc>& docs) {
    std::size_t n = 0;
    for (const auto& d : docs)
        n += d.size();
    return n;
}

struct Stage {
    Matrix& context;
    Matrix* target;  // null when frozen
    const Matrix& target_view;
    const std::vector<EncodedDoc>& docs;
    std::size_t epochs;
    const NegativeSampler& sampler;
    std::uint64_t seed;
};

// Learning rate decays linearly from lr to lr/10000 over the whole stage.
inline void run_worker(const Stage& st, const TrainConfig& cfg, std::size_t first_doc, std::size_t last_doc,
                       std::uint64_t seed, std::atomic<std::size_t>& processed, std::size_t total,
                       const ProgressFn& progress) {
    Rng rng(seed);
    CbowWorkspace<double> ws;
    std::vector<std::size_t> context;
    std::vector<std::size_t> negatives;
    const double lr0 = cfg.learning_rate;
    const double floor = lr0 * 1e-4;
    const auto window = static_cast<std::ptrdiff_t>(cfg.window);
    std::size_t local = 0;

    for (std::size_t epoch = 0; epoch < st.epochs; ++epoch) {
        for (std::size_t d = first_doc; d < last_doc; ++d) {
            const auto& doc = st.docs[d];
            const auto n = static_cast<std::ptrdiff_t>(doc.size());
            for (std::ptrdiff_t i = 0; i < n; ++i) {
                ++local;
                context.clear();
                for (std::ptrdiff_t j = std::max<std::ptrdiff_t>(0, i - window);
                     j <= std::min(n - 1, i + window); ++j)
                    if (j != i)
                        context.push_back(doc[static_cast<std::size_t>(j)]);
                if (context.empty())
                    continue;
                const std::size_t target = doc[static_cast<std::size_t>(i)];
                negatives.clear();
                for (std::size_t k = 0; k < cfg.negatives; ++k) {
                    const auto neg = st.sampler.sample(rng);
                    if (neg != target)
                        negatives.push_back(neg);
                }
                const double done = static_cast<double>(processed.load(std::memory_order_relaxed) + local) /
                                    static_cast<double>(total + 1);
                const double lr = std::max(floor, lr0 * (1.0 - done));
                cbow_sgd_step(st.context, st.target, st.target_view,
                              CbowExample{context, target, negatives}, lr, ws);
            }
            if (local >= 10000) {
                const auto now = processed.fetch_add(local, std::memory_order_relaxed) + local;
                local = 0;
                if (progress)
                    progress(static_cast<double>(now) / static_cast<double>(std::max<std::size_t>(total, 1)));
            }
        }
    }
    processed.fetch_add(local, std::memory_order_relaxed);
}

inline void run_stage(const Stage& st, const TrainConfig& cfg, const ProgressFn& progress) {
    if (st.epochs == 0 || st.docs.empty())
        return;
    const std::size_t total = token_total(st.docs) * st.epochs;
    std::atomic<std::size_t> processed{0};
    const std::size_t threads = std::min(cfg.threads, st.docs.size());
    if (threads <= 1) {
        run_worker(st, cfg, 0, st.docs.size(), st.seed, processed, total, progress);
    } else {
        // Hogwild: workers share the matrices without locks.
        std::vector<std::thread> pool;
        const std::size_t chunk = (st.docs.size() + threads - 1) / threads;
        for (std::size_t t = 0; t < threads; ++t) {
            const std::size_t lo = t * chunk;
            const std::size_t hi = std::min(st.docs.size(), lo + chunk);
            if (lo >= hi)
                break;
            pool.emplace_back([&, lo, hi, t] {
                run_worker(st, cfg, lo, hi, st.seed + 0x9e3779b97f4a7c15ULL * (t + 1), processed, total,
                           t == 0 ? progress : ProgressFn{});
            });
        }
        for (auto& th : pool)
            th.join();
    }
    if (progress)
        progress(1.0);
}

constexpr std::uint64_t year_stage_salt = 0x5851f42d4c957f2dULL;

}  // namespace detail

inline CompassModel train_compass(const corpus::SliceMap& slices, corpus::Vocabulary vocab,
                                  const TrainConfig& config, const ProgressFn& progress = {}) {
    config.validate();
    if (vocab.size() < config.negatives + 1)
        fail(ErrorKind::config, "vocabulary of " + std::to_string(vocab.size()) +
                                    " terms is smaller than negatives+1 = " +
                                    std::to_string(config.negatives + 1));
    std::vector<detail::EncodedDoc> docs;
    for (const auto& [year, slice] : slices) {
        auto enc = detail::encode(slice.documents, vocab);
        docs.insert(docs.end(), std::make_move_iterator(enc.begin()), std::make_move_iterator(enc.end()));
    }
    if (docs.empty())
        fail(ErrorKind::empty_corpus, "corpus has no in-vocabulary tokens");

    CompassModel compass;
    const std::size_t v = vocab.size();
    compass.target_matrix = Matrix(v, config.dim);
    compass.atemporal_context_matrix = Matrix(v, config.dim);
    Rng init(config.seed);
    const double bound = 0.5 / static_cast<double>(config.dim);
    for (auto& x : compass.atemporal_context_matrix.data())
        x = init.uniform(-bound, bound);
    for (auto& x : compass.target_matrix.data())
        x = init.uniform(-bound, bound);

    detail::NegativeSampler sampler(vocab.totals());
    detail::Stage stage{compass.atemporal_context_matrix, &compass.target_matrix, compass.target_matrix, docs,
                        config.static_iters, sampler, config.seed};
    detail::run_stage(stage, config, progress);
    compass.vocabulary = std::move(vocab);
    return compass;
}

inline YearModel train_year_slice(const CompassModel& compass, const corpus::CorpusSlice& slice,
                                  const TrainConfig& config, const ProgressFn& progress = {}) {
    config.validate();
    const auto& vocab = compass.vocabulary;
    const auto docs = detail::encode(slice.documents, vocab);
    if (docs.empty())
        fail(ErrorKind::empty_slice, "slice " + std::to_string(slice.year) + " has no in-vocabulary tokens");

    YearModel ym;
    ym.year = slice.year;
    ym.context_matrix = compass.atemporal_context_matrix;

    std::vector<std::size_t> counts(vocab.size(), 0);
    for (const auto& d : docs)
        for (auto id : d)
            ++counts[id];
    detail::NegativeSampler sampler(counts);
    detail::Stage stage{ym.context_matrix, nullptr, compass.target_matrix, docs, config.dynamic_iters, sampler,
                        config.seed ^ detail::year_stage_salt};
    detail::run_stage(stage, config, progress);
    return ym;
}

/// Full pipeline: vocabulary, compass, then every year slice.
inline TemporalModel train_temporal_model(const corpus::SliceMap& slices, const TrainConfig& config,
                                          const ProgressFn& progress = {}) {
    config.validate();
    auto vocab = corpus::build_vocabulary(slices, config.min_count);
    const double compass_share = 0.5;
    auto compass = train_compass(slices, std::move(vocab), config, [&](double f) {
        if (progress)
            progress(compass_share * f);
    });
    std::map<int, YearModel> years;
    std::size_t done = 0;
    for (const auto& [year, slice] : slices) {
        auto report = [&](double f) {
            if (progress)
                progress(compass_share + (1.0 - compass_share) *
                                             (static_cast<double>(done) + f) / static_cast<double>(slices.size()));
        };
        try {
            years.emplace(year, train_year_slice(compass, slice, config, report));
        } catch (const Error& e) {
            // a year whose tokens all fall under min_count has nothing to learn
            if (e.kind() != ErrorKind::empty_slice)
                throw;
        }
        ++done;
    }
    if (progress)
        progress(1.0);
    return TemporalModel(std::move(compass), std::move(years), config);
}

}  // namespace drift::embedding
