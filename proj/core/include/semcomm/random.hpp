#pragma once

#include <cstdint>
#include <random>

namespace semcomm {

using RandomStream = std::mt19937_64;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed of sub-stream `index` under `base_seed`. Every trial of a sweep gets
// stream_seed(base_seed, trial_index), which makes results independent of the
// order or thread in which trials run.
constexpr std::uint64_t stream_seed(std::uint64_t base_seed, std::uint64_t index) noexcept {
    return mix64(mix64(base_seed) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

inline RandomStream make_stream(std::uint64_t base_seed, std::uint64_t index) {
    return RandomStream{stream_seed(base_seed, index)};
}

}  // namespace semcomm
