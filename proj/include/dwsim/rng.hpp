#pragma once

#include <cstdint>
#include <random>

namespace dwsim {

/// SplitMix64 finalizer. Used to decorrelate derived seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed for stream `stream` of trial `index` under `master`. Depends on nothing else,
/// so Monte-Carlo results are independent of execution order.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index,
                                    std::uint64_t stream) noexcept {
    return splitmix64(splitmix64(master ^ splitmix64(index + 1)) + stream);
}

/// Standard normal variates from mt19937_64 via Box-Muller.
///
/// Both pieces are fully specified (the engine by the standard, the transform
/// here), unlike std::normal_distribution whose output varies between
/// standard libraries.
class GaussianSource {
public:
    explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

    double next();

private:
    double uniform_open();  // (0, 1)

    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace dwsim
