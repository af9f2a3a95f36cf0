#pragma once

#include "popns/engine.hpp"
#include "popns/metrics.hpp"

#include <vector>

namespace popns {

struct RunResult {
    SimConfig config;
    std::vector<MetricsSeries> realizations;
    AggregateMetrics mean;
};

/// Realization `r` of `config`, seeded from derive_seed(config.seed, r, .).
MetricsSeries run_realization(const SimConfig& config, std::size_t r);

/// Reference path: realizations one after another.
RunResult run_serial(const SimConfig& config);

/// Realizations spread over OpenMP threads (0 = runtime default).
/// Bit-identical to run_serial.
RunResult run_parallel(const SimConfig& config, int threads = 0);

} // namespace popns
