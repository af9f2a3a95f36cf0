#include "popns/errors.hpp"
#include "popns/experiment.hpp"

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    for (const auto& a : args) {
        if (a == "-h" || a == "--help") {
            std::cout << popns::usage();
            return 0;
        }
    }

    popns::ExperimentSpec spec;
    try {
        spec = popns::parse_config(args);
    } catch (const popns::UsageError& e) {
        std::cerr << "popns-sim: " << e.what() << "\n\n" << popns::usage();
        return 2;
    }

    try {
        const auto bundle = popns::run_experiment(spec);
        for (const auto& point : bundle.points) {
            const auto& last = point.result.mean.series.back();
            std::cout << point.directory.string() << ": t=" << last.t
                      << " main_tree_size=" << last.main_tree_size
                      << " main_tree_avg_quality=" << last.main_tree_avg_quality
                      << " total_nodes=" << last.total_nodes << '\n';
        }
    } catch (const std::exception& e) {
        std::cerr << "popns-sim: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
