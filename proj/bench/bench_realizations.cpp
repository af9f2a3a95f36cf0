// Times the serial realization loop against the OpenMP one on the same
// configuration and checks that both produce identical series.

#include "popns/export.hpp"
#include "popns/run.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <sstream>

namespace {

template <class F>
double seconds(F&& f)
{
    const auto start = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string series_text(const popns::RunResult& r)
{
    std::ostringstream os;
    popns::write_series_csv(os, r, {});
    return os.str();
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"serial vs OpenMP realization benchmark"};
    popns::SimConfig config;
    config.steps = 20000;
    config.realizations = 8;
    int threads = 0;
    int repeats = 3;
    app.add_option("--steps", config.steps);
    app.add_option("--realizations", config.realizations);
    app.add_option("--peers", config.peers);
    app.add_option("--threads", threads);
    app.add_option("--repeats", repeats);
    CLI11_PARSE(app, argc, argv);

    popns::RunResult serial, parallel;
    double best_serial = 1e300, best_parallel = 1e300;
    for (int i = 0; i < repeats; ++i) {
        best_serial = std::min(best_serial, seconds([&] { serial = popns::run_serial(config); }));
        best_parallel =
            std::min(best_parallel, seconds([&] { parallel = popns::run_parallel(config, threads); }));
    }

    const bool same = series_text(serial) == series_text(parallel);
    std::cout << "steps=" << config.steps << " realizations=" << config.realizations
              << " peers=" << config.peers << '\n'
              << "serial   " << best_serial << " s\n"
              << "parallel " << best_parallel << " s  (speedup " << best_serial / best_parallel
              << ")\n"
              << "identical series: " << (same ? "yes" : "NO") << '\n';
    return same ? 0 : 1;
}
