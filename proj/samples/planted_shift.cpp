// Trains a tiny two-year model where "bank" moves from river contexts to money contexts,
// then prints the drift ranking and the bank/money acceleration.

#include <iostream>
#include <random>

#include "drift/drift.hpp"

namespace {

std::vector<drift::corpus::RawDocument> synthetic_corpus() {
    const std::vector<std::string> river{"river", "water", "shore", "fish", "boat", "stream"};
    const std::vector<std::string> money{"money", "loan", "credit", "cash", "account", "interest"};
    std::mt19937 rng(11);
    auto pick = [&](const std::vector<std::string>& v) { return v[rng() % v.size()]; };
    std::vector<drift::corpus::RawDocument> docs;
    for (int year : {2010, 2011}) {
        for (int d = 0; d < 120; ++d) {
            // One topic per document. "bank" joins river documents first, money ones later; kept rare
            // so its compass vector stays short enough for one slice to turn it.
            const bool about_money = d % 2 == 1;
            const auto& topic = about_money ? money : river;
            const bool with_bank = (year == 2010) != about_money;
            std::string text;
            for (int s = 0; s < 40; ++s)
                text += (with_bank && s % 20 == 2 ? std::string("bank") : pick(topic)) + " ";
            drift::corpus::RawDocument doc;
            doc.id = std::to_string(year) + "-" + std::to_string(d);
            doc.submitted = std::to_string(year) + "-03-01";
            doc.abstract = text;
            docs.push_back(std::move(doc));
        }
    }
    return docs;
}

}  // namespace

int main() {
    try {
        const auto sliced = drift::corpus::slice_by_year(synthetic_corpus(), {}, {2010, 2011});
        drift::embedding::TrainConfig config;
        config.dim = 24;
        config.static_iters = 10;
        config.dynamic_iters = 10;
        config.window = 3;
        config.min_count = 2;
        config.seed = 3;
        const auto model = drift::embedding::train_temporal_model(sliced.slices, config);

        const std::vector<std::string> words{"bank", "river", "water", "money", "loan", "fish"};
        const auto ranking = drift::analytics::semantic_drift(model, words, 2010, 2011,
                                                              drift::analytics::DistanceMetric::cosine);
        std::cout << "drift 2010 -> 2011 (cosine distance)\n";
        for (const auto& e : ranking.entries)
            std::cout << "  " << e.word << "  " << e.distance << "\n";

        const auto acc = drift::analytics::acceleration(model, "bank", "money", 2010);
        std::cout << "bank/money similarity " << acc.similarity_from << " -> " << acc.similarity_to
                  << " (acceleration " << acc.value << ")\n";
    } catch (const drift::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
