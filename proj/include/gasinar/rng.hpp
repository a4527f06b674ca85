#ifndef GASINAR_RNG_HPP
#define GASINAR_RNG_HPP

#include <cstdint>
#include <random>

namespace gasinar {

using Rng = std::mt19937_64;

// splitmix64 finalizer; decorrelates consecutive seeds and stream ids.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent stream for a parallel work item. The result depends only on
// (base_seed, stream_id), never on thread scheduling, so serial and parallel
// execution of the same job draw identical variates.
inline Rng make_stream(std::uint64_t base_seed, std::uint64_t stream_id) {
    return Rng(mix64(mix64(base_seed) ^ mix64(stream_id + 0x51ed2701ULL)));
}

inline Rng make_stream(std::uint64_t seed) { return Rng(mix64(seed)); }

}  // namespace gasinar

#endif
