#pragma once

#include <cstdint>
#include <random>

namespace netens {

namespace rng {

inline constexpr std::uint64_t golden = 0x9e3779b97f4a7c15ULL;

// 64-bit finalizer (Murmur3/SplitMix style). Bijective, strong avalanche.
inline constexpr std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ULL;
    x ^= x >> 33;
    return x;
}

// Map 64 random bits to a double in [0,1) with 53-bit resolution.
inline constexpr double to_unit(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Seed for realization t of an ensemble. Injective in t for a fixed master
// seed: t -> master + golden*(t+1) is injective mod 2^64 (golden is odd)
// and mix64 is a bijection.
inline constexpr std::uint64_t realization_seed(std::uint64_t master_seed, std::uint64_t t) {
    return mix64(master_seed + golden * (t + 1));
}

// Counter-based draw for one vertex pair. The stream is indexed by the pair
// key alone, so any iteration or thread order over pairs sees the same bits.
inline constexpr std::uint64_t pair_bits(std::uint64_t realization_seed, std::uint64_t pair_key) {
    return mix64(realization_seed ^ mix64(pair_key + golden));
}

inline constexpr double pair_unit(std::uint64_t realization_seed, std::uint64_t pair_key) {
    return to_unit(pair_bits(realization_seed, pair_key));
}

}  // namespace rng

// Sequential engine for degree-sequence sampling. Draws uniforms from raw
// mt19937_64 output (not std::uniform_real_distribution) so sequences are
// identical across standard library implementations.
class SequenceRng {
public:
    explicit SequenceRng(std::uint64_t seed) : engine_(seed) {}

    double unit() { return rng::to_unit(engine_()); }  // [0,1)
    std::uint64_t bits() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace netens
