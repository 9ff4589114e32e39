#pragma once

#include <cstdint>
#include <vector>

#include "pcc/errors.hpp"

namespace pcc {

// Subsets of a ground set [0:m-1] are carried around as bitmasks. The
// canonical order used everywhere (segment layouts, payload slots, pad
// tables) is colexicographic, which for bitmasks is plain numeric order.

inline uint64_t binom_u64(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    uint64_t r = 1;
    for (unsigned i = 1; i <= k; i++) {
        r = r * (n - k + i) / i;  // exact at every step
    }
    return r;
}

inline unsigned popcount32(uint32_t m) { return static_cast<unsigned>(__builtin_popcount(m)); }

// Rank of `mask` within all size-|mask| subsets of [0:m-1], colex order.
inline uint64_t colex_rank(uint32_t mask) {
    uint64_t r = 0;
    unsigned j = 1;
    while (mask) {
        unsigned b = static_cast<unsigned>(__builtin_ctz(mask));
        r += binom_u64(b, j);
        j++;
        mask &= mask - 1;
    }
    return r;
}

// Inverse of colex_rank for size-s subsets of [0:m-1].
inline uint32_t colex_unrank(unsigned m, unsigned s, uint64_t rank) {
    uint32_t mask = 0;
    for (unsigned j = s; j >= 1; j--) {
        unsigned b = j - 1;
        while (b + 1 <= m - 1 && binom_u64(b + 1, j) <= rank) b++;
        rank -= binom_u64(b, j);
        mask |= 1u << b;
    }
    return mask;
}

// All size-s subsets of [0:m-1] in colex (= ascending mask) order.
inline std::vector<uint32_t> subsets_of_size(unsigned m, unsigned s) {
    std::vector<uint32_t> out;
    if (s > m) return out;
    if (s == 0) return {0};
    uint32_t v = (1u << s) - 1;
    uint32_t limit = 1u << m;
    while (v < limit) {
        out.push_back(v);
        uint32_t t = v | (v - 1);  // Gosper's hack
        v = (t + 1) | (((~t & -~t) - 1) >> (__builtin_ctz(v) + 1));
        if (v == 0) break;
    }
    return out;
}

// Sorted-member view of a bitmask subset; the core type for labelled
// segments. encode() is the canonical bitmask so subset-indexed maps have
// unique keys.
struct SubsetLabel {
    uint32_t mask = 0;
    unsigned ground = 0;

    SubsetLabel() = default;
    SubsetLabel(uint32_t mask_, unsigned ground_) : mask(mask_), ground(ground_) {
        if (ground > 31) throw ParamError("subset ground set too large");
        if (mask >> ground) throw ParamError("subset member outside ground set");
    }
    static SubsetLabel from_members(const std::vector<unsigned>& ms, unsigned ground) {
        uint32_t m = 0;
        for (unsigned x : ms) {
            if (x >= ground) throw ParamError("subset member outside ground set");
            m |= 1u << x;
        }
        return SubsetLabel(m, ground);
    }

    unsigned size() const { return popcount32(mask); }
    bool contains(unsigned x) const { return (mask >> x) & 1; }
    std::vector<unsigned> members() const {
        std::vector<unsigned> out;
        for (uint32_t m = mask; m; m &= m - 1) out.push_back(static_cast<unsigned>(__builtin_ctz(m)));
        return out;
    }

    uint32_t encode() const { return mask; }
    static SubsetLabel decode(uint32_t mask, unsigned ground) { return SubsetLabel(mask, ground); }

    bool operator==(const SubsetLabel&) const = default;
};

// Calls fn(member) for each set bit, ascending.
template <typename Fn>
inline void for_members(uint32_t mask, Fn&& fn) {
    while (mask) {
        fn(static_cast<unsigned>(__builtin_ctz(mask)));
        mask &= mask - 1;
    }
}

} // namespace pcc
