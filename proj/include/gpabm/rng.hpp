// rng.hpp -- the single deterministic random stream used by a run.
//
// std::mt19937_64 is bit-specified by the standard; the standard library
// distributions are not, so all derived draws are implemented here. This
// keeps trajectories identical across compilers and standard libraries.
#pragma once

#include <cstdint>
#include <random>

namespace gpabm {

/// SplitMix64 finalizer. Used for seeding and for combining seed material.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    return splitmix64(splitmix64(a) ^ (b + 0x632be59bd9b4e019ULL));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, n). Lemire's multiply-shift with rejection.
    std::uint64_t below(std::uint64_t n) {
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
        auto low = static_cast<std::uint64_t>(m);
        if (low < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (low < threshold) {
                m = static_cast<unsigned __int128>(next()) * n;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    /// Uniform integer in [lo, hi].
    int range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1)); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool chance(double p) { return p >= 1.0 || uniform() < p; }

    /// Independent child stream; advances this stream by one draw.
    Rng split() { return Rng(next()); }

    template <class It>
    void shuffle(It first, It last) {
        for (auto n = static_cast<std::uint64_t>(last - first); n > 1; --n) {
            std::swap(first[n - 1], first[below(n)]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace gpabm
