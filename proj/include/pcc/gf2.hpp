#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pcc/bits.hpp"

namespace pcc {

// Incremental GF(2) span of symbols. Each symbol has a coefficient vector
// over a declared atom basis (e.g. one atom per (file, subfile) pair) and
// a carried bit-string value. express() reduces a target coefficient
// vector against the span and, when the target lies inside, returns the
// matching XOR of carried values. This is how missing broadcast symbols
// are recovered from transmitted ones.
class XorSpan {
public:
    explicit XorSpan(size_t dim) : dim_(dim), words_((dim + 63) / 64) {}

    using Mask = std::vector<uint64_t>;

    Mask empty_mask() const { return Mask(words_, 0); }
    static void mask_set(Mask& m, size_t atom) { m[atom >> 6] |= 1ULL << (atom & 63); }

    void add(Mask coeffs, BitString value) {
        reduce(coeffs, value);
        if (is_zero(coeffs)) return;  // dependent, nothing new
        size_t p = pivot(coeffs);
        // Keep rows fully inter-reduced so a single reduction pass is exact.
        for (Row& r : rows_) {
            if (test(r.coeffs, p)) {
                for (size_t i = 0; i < r.coeffs.size(); i++) r.coeffs[i] ^= coeffs[i];
                r.value.xor_in(value);
            }
        }
        rows_.push_back({std::move(coeffs), std::move(value), p});
    }

    std::optional<BitString> express(Mask target, uint64_t value_bits) const {
        BitString acc(value_bits);
        reduce(target, acc);
        if (!is_zero(target)) return std::nullopt;
        return acc;
    }

    size_t rank() const { return rows_.size(); }

private:
    struct Row {
        Mask coeffs;
        BitString value;
        size_t pivot;
    };

    static bool is_zero(const Mask& m) {
        for (uint64_t w : m)
            if (w) return false;
        return true;
    }
    static size_t pivot(const Mask& m) {
        for (size_t i = 0; i < m.size(); i++)
            if (m[i]) return i * 64 + static_cast<size_t>(__builtin_ctzll(m[i]));
        return ~size_t{0};
    }
    static bool test(const Mask& m, size_t atom) { return (m[atom >> 6] >> (atom & 63)) & 1; }

    void reduce(Mask& m, BitString& value) const {
        for (const Row& r : rows_) {
            if (test(m, r.pivot)) {
                for (size_t i = 0; i < m.size(); i++) m[i] ^= r.coeffs[i];
                value.xor_in(r.value);
            }
        }
    }

    size_t dim_;
    size_t words_;
    std::vector<Row> rows_;
};

} // namespace pcc
