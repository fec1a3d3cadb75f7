#pragma once

#include <cstdint>

#include "searchstop/pmf.hpp"

namespace searchstop {

namespace detail {

// Output finalizer from splitmix64.
constexpr std::uint64_t mix_final(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace detail

// One splitmix64 step applied to a bare value; a good 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    return detail::mix_final(x + 0x9e3779b97f4a7c15ULL);
}

// Counter-based stream derivation: the seed for a given (master, trial, lane)
// triple depends on nothing else, so trials can run in any order on any number
// of threads and still draw identical streams.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t trial,
                                    std::uint64_t lane = 0) noexcept {
    std::uint64_t h = mix64(master);
    h = mix64(h ^ mix64(trial + 0x9e3779b97f4a7c15ULL));
    return mix64(h ^ mix64(lane + 0xbf58476d1ce4e5b9ULL));
}

// splitmix64 stream. Small, fast, and fully portable: output depends only on
// the seed, not on the standard library implementation.
class Rng {
public:
    explicit Rng(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        state_ += 0x9e3779b97f4a7c15ULL;
        return detail::mix_final(state_);
    }

    double uniform01() noexcept {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Inverse-CDF draw from a small pmf.
    std::size_t sample(const Pmf& p) noexcept {
        const double u = uniform01();
        double acc = 0.0;
        const std::size_t k = p.size();
        for (std::size_t y = 0; y + 1 < k; ++y) {
            acc += p[y];
            if (u < acc) return y;
        }
        return k - 1;
    }

private:
    std::uint64_t state_;
};

}  // namespace searchstop
