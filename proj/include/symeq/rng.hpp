#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace symeq {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Order-sensitive hash of a key tuple, used to derive independent streams.
inline std::uint64_t stream_key(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = 0x243f6a8885a308d3ULL;
    for (std::uint64_t p : parts) h = splitmix64(h ^ splitmix64(p));
    return h;
}

inline Rng make_stream(std::initializer_list<std::uint64_t> parts) {
    return Rng(stream_key(parts));
}

}  // namespace symeq
