#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace marketgame {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// One reproducible random stream, keyed by (experiment seed, stream index).
///
/// Every Monte Carlo path gets its own stream keyed by its path index, so results
/// are independent of how paths are distributed over workers. Identical keys give
/// bit-identical draw sequences.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
        std::seed_seq seq{
            static_cast<std::uint32_t>(splitmix64_next(s)), static_cast<std::uint32_t>(splitmix64_next(s)),
            static_cast<std::uint32_t>(splitmix64_next(s)), static_cast<std::uint32_t>(splitmix64_next(s)),
            static_cast<std::uint32_t>(splitmix64_next(s)), static_cast<std::uint32_t>(splitmix64_next(s)),
            static_cast<std::uint32_t>(splitmix64_next(s)), static_cast<std::uint32_t>(splitmix64_next(s))};
        engine_.seed(seq);
    }

    /// Uniform draw in the open interval (0, 1).
    double uniform() {
        const std::uint64_t bits = engine_() >> 11; // 53 random bits
        return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
    }

    double normal(double mean = 0.0, double stddev = 1.0) {
        return mean + stddev * normal_(engine_);
    }

    double gamma(double shape) {
        std::gamma_distribution<double> d(shape, 1.0);
        return d(engine_);
    }

    /// Index drawn from a finite distribution given by `probs` (assumed to sum to 1).
    std::size_t categorical(std::span<const double> probs) {
        const double u = uniform();
        double cum = 0.0;
        for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
            cum += probs[i];
            if (u < cum) return i;
        }
        return probs.empty() ? 0 : probs.size() - 1;
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_;
};

} // namespace marketgame
