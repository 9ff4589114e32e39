#pragma once

#include <cstdint>

namespace pcc {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Counter-based generator: the output sequence is a pure function of
// (seed, stream, draw index), so parallel workers can draw disjoint
// streams and replays are bit-identical across platforms.
class CounterRng {
public:
    CounterRng() : CounterRng(0, 0) {}
    CounterRng(uint64_t seed, uint64_t stream)
        : key_(splitmix64(seed ^ splitmix64(stream * 0x9e3779b97f4a7c15ULL + 1))), ctr_(0) {}

    uint64_t next_u64() { return splitmix64(key_ + 0x9e3779b97f4a7c15ULL * ++ctr_); }

    // Unbiased value in [0, bound). bound must be nonzero.
    uint64_t bounded(uint64_t bound) {
        if (bound == 1) return 0;
        // Lemire-style rejection on the top of the 64-bit range.
        uint64_t threshold = (-bound) % bound;
        for (;;) {
            uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    bool bit() { return next_u64() & 1; }

private:
    uint64_t key_;
    uint64_t ctr_;
};

// 128-bit digest of a byte string, used to key view histograms.
struct Digest128 {
    uint64_t lo = 0, hi = 0;
    bool operator==(const Digest128&) const = default;
};

inline Digest128 digest128(const uint8_t* data, size_t n) {
    uint64_t a = 0x6a09e667f3bcc908ULL, b = 0xbb67ae8584caa73bULL;
    for (size_t i = 0; i < n; i++) {
        a = splitmix64(a ^ data[i]);
        b = splitmix64(b + data[i] + 0x100000001b3ULL);
    }
    a = splitmix64(a ^ n);
    b = splitmix64(b ^ (n * 0x9e3779b97f4a7c15ULL));
    return {a, b};
}

struct Digest128Hash {
    size_t operator()(const Digest128& d) const { return static_cast<size_t>(d.lo ^ (d.hi * 0x9e3779b97f4a7c15ULL)); }
};

} // namespace pcc
