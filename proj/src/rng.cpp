#include "quench/rng.hpp"

namespace quench {

std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    constexpr std::uint64_t key = 0x5155454E43485F31ULL;  // "QUENCH_1"
    constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ULL;
    return mix64(mix64(master ^ key) + golden * (index + 1));
}

}  // namespace quench
