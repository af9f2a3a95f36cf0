#pragma once

#include <cstdint>
#include <random>

namespace popns {

/// splitmix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed for stream `stream` of realization `realization` under `base`.
///
/// seed(base, r, k) = splitmix64(splitmix64(splitmix64(base) ^ r) ^ k)
///
/// Each realization owns two streams: 0 drives the dynamics, 1 drives
/// metric extraction (random tie-breaks in the main tree), so sampling
/// metrics never perturbs the trajectory.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t realization,
                                    std::uint64_t stream) noexcept
{
    return splitmix64(splitmix64(splitmix64(base) ^ realization) ^ stream);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1), 53 random bits. Never returns 1.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n). Requires n > 0.
    std::uint64_t below(std::uint64_t n)
    {
        return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

} // namespace popns
