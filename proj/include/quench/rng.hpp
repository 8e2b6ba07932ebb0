#pragma once

#include <cstdint>

namespace quench {

// splitmix64 finalizer; a bijection on 64-bit words.
std::uint64_t mix64(std::uint64_t x);

// Seed of stream `index` under `master`:
//   mix64(mix64(master ^ 0x5155454E43485F31) + 0x9E3779B97F4A7C15 * (index + 1))
// For fixed master this is injective in index (odd multiplier, bijective mix).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace quench
