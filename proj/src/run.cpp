#include "popns/run.hpp"

#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace popns {

MetricsSeries run_realization(const SimConfig& config, std::size_t r)
{
    Simulation sim(config, derive_seed(config.seed, r, 0));
    Rng metrics_rng(derive_seed(config.seed, r, 1));
    MajorityTracker majority(config.peers);
    MetricsSeries out;

    auto& peers = sim.peers();
    auto sample = [&] {
        out.final_main_tree = extract_main_tree(sim.store(), peers, metrics_rng);
        out.snapshots.push_back(
            summarize(out.final_main_tree, sim.store(), peers, sim.time(), sim.updates()));
    };

    majority.observe(sim.store(), peers, peers.raised(), 0);
    peers.clear_raised();
    sample();

    for (Step t = 1; t <= config.steps; ++t) {
        sim.step();
        majority.observe(sim.store(), peers, peers.raised(), sim.time());
        peers.clear_raised();
        if (t % config.snapshot_interval == 0 || t == config.steps)
            sample();
    }

    out.degree_histogram = degree_histogram(sim.store(), peers, metrics_rng);
    out.viewers_histogram = viewers_histogram(sim.store(), peers);
    out.viewers_by_quality = viewers_by_quality(sim.store(), peers);
    out.majority_events = majority.events();
    return out;
}

RunResult run_serial(const SimConfig& config)
{
    config.validate();
    RunResult result{config, {}, {}};
    result.realizations.reserve(config.realizations);
    for (std::size_t r = 0; r < config.realizations; ++r)
        result.realizations.push_back(run_realization(config, r));
    result.mean = aggregate(result.realizations);
    return result;
}

RunResult run_parallel(const SimConfig& config, int threads)
{
    config.validate();
    RunResult result{config, std::vector<MetricsSeries>(config.realizations), {}};
    std::vector<std::exception_ptr> errors(config.realizations);
    const auto count = static_cast<std::int64_t>(config.realizations);

#ifdef _OPENMP
    if (threads <= 0)
        threads = omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
#endif
    for (std::int64_t r = 0; r < count; ++r) {
        try {
            result.realizations[r] = run_realization(config, static_cast<std::size_t>(r));
        } catch (...) {
            errors[r] = std::current_exception();
        }
    }
    (void)threads;

    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    result.mean = aggregate(result.realizations);
    return result;
}

} // namespace popns
