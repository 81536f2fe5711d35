// rng.hpp - deterministic substream derivation
//
// Every random draw in the library is seeded through derive_seed so that a
// master seed plus a handful of stream tags (purpose, frame index, attempt)
// fully determines the result, independent of scheduling.

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace uwofdm {

namespace stream {
constexpr std::uint64_t bits = 0x01;
constexpr std::uint64_t noise = 0x02;
constexpr std::uint64_t channel = 0x03;
constexpr std::uint64_t data_symbols = 0x04;
} // namespace stream

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::initializer_list<std::uint64_t> words)
{
    std::uint64_t h = 0x8C2F9D5246C36035ULL;
    for (std::uint64_t w : words) h = splitmix64(h ^ w);
    return h;
}

inline std::mt19937_64 make_engine(std::initializer_list<std::uint64_t> words)
{
    return std::mt19937_64(derive_seed(words));
}

} // namespace uwofdm
