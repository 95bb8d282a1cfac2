#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "drift/error.hpp"

namespace drift::embedding {

struct TrainConfig {
    std::size_t dim = 100;
    std::size_t static_iters = 5;   // compass epochs
    std::size_t dynamic_iters = 5;  // per-slice epochs
    std::size_t negatives = 5;
    std::size_t window = 5;
    double learning_rate = 0.025;
    std::uint64_t seed = 1;
    std::size_t min_count = 5;
    std::size_t threads = 1;  // > 1 enables lock-free parallel updates (non-deterministic)

    void validate() const {
        if (dim < 1)
            fail(ErrorKind::config, "dim must be >= 1");
        if (negatives < 1)
            fail(ErrorKind::config, "negatives must be >= 1");
        if (window < 1)
            fail(ErrorKind::config, "window must be >= 1");
        if (!(learning_rate > 0.0))
            fail(ErrorKind::config, "learning_rate must be > 0");
        if (threads < 1)
            fail(ErrorKind::config, "threads must be >= 1");
    }

    friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

}  // namespace drift::embedding
