#pragma once

#include <cstdint>

namespace detkit {

// splitmix64: tiny deterministic generator with portable bit-exact output.
// Used everywhere a seeded stream is needed so results do not depend on the
// standard library's distribution implementations.
struct SplitMix64 {
    uint64_t state;

    explicit SplitMix64(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double next_double() { return double(next() >> 11) * 0x1.0p-53; }

    // uniform in [lo, hi)
    double next_double(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // uniform integer in [0, n)
    uint64_t next_below(uint64_t n) { return n ? next() % n : 0; }
};

// Derives an independent stream for a substructure (e.g. one graph node) so
// values do not shift when unrelated parts of the structure change.
inline uint64_t substream_seed(uint64_t seed, uint64_t index) {
    SplitMix64 mix(seed ^ (0x632be59bd9b4e019ULL + index * 0x9e3779b97f4a7c15ULL));
    return mix.next();
}

} // namespace detkit
