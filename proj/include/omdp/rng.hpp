#pragma once

#include <cstdint>
#include <random>

namespace omdp {

/// Mixes 64 bits into 64 bits (splitmix64 finalizer). Used to derive
/// independent sub-seeds from a base seed so that parallel or re-ordered
/// execution cannot change which random stream an episode sees.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Sub-seed for stream `index` of base seed `seed`.
inline std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t index) {
    return mix64(seed ^ mix64(index + 1));
}

/// Uniform double in [0,1) built from the raw 64-bit output. The standard
/// uniform_real_distribution is not bit-portable across standard libraries,
/// this construction is.
inline double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

} // namespace omdp
