#ifndef SOMKM_RANDOM_HPP
#define SOMKM_RANDOM_HPP

#include <cstddef>
#include <cstdint>
#include <random>

namespace somkm {

/// SplitMix64 finalizer (Steele, Lea & Flood constants).
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Derives an independent child seed: splitmix64(seed ^ splitmix64(index + 0x9E3779B97F4A7C15)).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Stage-tagged derivation used by the pipeline: mix_seed(mix_seed(seed, tag), index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stage_tag, std::uint64_t index) noexcept;

/**
 * Seeded random source with platform-independent draws.
 *
 * The engine is std::mt19937_64, whose output sequence is fixed by the
 * standard. The standard distributions are not, so the few draws the
 * toolkit needs are implemented here on top of raw engine output.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01();

    /// Uniform integer in [0, n); n must be positive. Rejection sampling, no modulo bias.
    std::size_t index(std::size_t n);

    /// Standard normal via Box-Muller; consumes exactly two engine outputs.
    double normal();

private:
    std::mt19937_64 engine_;
};

}  // namespace somkm

#endif
