#pragma once

#include <cstdint>
#include <cstring>

namespace tilefield {

// Counter-based RNG used everywhere randomness is needed. Streams are derived
// from (seed, purpose, counters) so any point of the training process can be
// reproduced without serializing generator state.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline uint64_t hash_combine(uint64_t a, uint64_t b) {
    return splitmix64(a ^ (b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2)));
}

template <typename... Rest>
uint64_t hash_combine(uint64_t a, uint64_t b, Rest... rest) {
    return hash_combine(hash_combine(a, b), uint64_t(rest)...);
}

class Rng {
public:
    explicit Rng(uint64_t seed) : state_(splitmix64(seed)) {}

    uint64_t next_u64() {
        state_ = splitmix64(state_);
        return state_;
    }

    // Uniform in [0, 1). 53-bit mantissa, portable across platforms.
    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

    float next_float() { return float(next_u64() >> 40) * 0x1.0p-24f; }

    // Uniform in [0, n). n must be > 0.
    uint64_t next_below(uint64_t n) {
        // Rejection-free multiply-shift; bias is negligible for n << 2^64.
        unsigned __int128 m = (unsigned __int128)next_u64() * n;
        return uint64_t(m >> 64);
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

private:
    uint64_t state_;
};

} // namespace tilefield
