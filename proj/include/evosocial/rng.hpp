#pragma once

#include <cstdint>
#include <random>

namespace evosocial {

/// SplitMix64 finaliser. Used to derive independent seeds from (base seed, stream index).
constexpr std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Stream tags keep graph streams and dynamics streams of the same trial apart.
enum class StreamTag : std::uint64_t { Dynamics = 1, Graph = 2, Initial = 3 };

constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index, StreamTag tag) {
    return splitmix64(splitmix64(base ^ splitmix64(static_cast<std::uint64_t>(tag))) + index);
}

/// mt19937_64 with platform-stable draws. The standard distributions are
/// implementation-defined, so uniform integers and reals are derived here.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer on [0, bound), bound > 0. Lemire's multiply-and-reject.
    std::uint64_t below(std::uint64_t bound) {
        unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                m = static_cast<unsigned __int128>(engine_()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    bool bernoulli(double p) { return uniform() < p; }

private:
    std::mt19937_64 engine_;
};

} // namespace evosocial
