#pragma once

#include <cstdint>

namespace firasym::rng {

// splitmix64 finalizer; used both as a standalone mixer and to derive
// stream seeds from a master seed.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Fixed stream tags. The input and noise streams of one replication are
// derived with distinct tags so they are never the same sequence.
enum StreamTag : std::uint64_t {
    kInputStream = 0x11,
    kNoiseStream = 0x22,
    kLemmaStream = 0x33,
};

// Counter-based seed derivation: master seed -> per-(level, replication,
// stream) seed. Pure function of its arguments, so replications can be
// generated in any order on any number of workers.
constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::uint64_t level,
                                    std::uint64_t replication,
                                    std::uint64_t stream_tag) {
    std::uint64_t s = splitmix64(master);
    s = splitmix64(s ^ splitmix64(level + 0x51ed2701));
    s = splitmix64(s ^ splitmix64(replication + 0xb5026f5a));
    return splitmix64(s ^ splitmix64(stream_tag));
}

}  // namespace firasym::rng
