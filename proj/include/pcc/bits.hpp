#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

#include "pcc/rng.hpp"

namespace pcc {

// Packed bit string. Bit i lives in word i/64 at position i%64.
// All scheme payloads, caches and file contents are BitStrings; segment
// boundaries are tracked by explicit per-scheme layout tables.
class BitString {
public:
    BitString() = default;
    explicit BitString(uint64_t nbits) : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

    static BitString random(uint64_t nbits, CounterRng& rng);

    uint64_t size() const { return nbits_; }
    bool empty() const { return nbits_ == 0; }

    bool get(uint64_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(uint64_t i, bool v) {
        uint64_t m = 1ULL << (i & 63);
        if (v) w_[i >> 6] |= m; else w_[i >> 6] &= ~m;
    }
    void flip(uint64_t i) { w_[i >> 6] ^= 1ULL << (i & 63); }

    // dst[dst_off .. dst_off+len) ^= src[src_off .. src_off+len)
    void xor_slice(uint64_t dst_off, const BitString& src, uint64_t src_off, uint64_t len);
    void xor_in(const BitString& src) { xor_slice(0, src, 0, src.size()); }

    // dst[dst_off .. dst_off+len) = src[src_off .. src_off+len)
    void copy_slice(uint64_t dst_off, const BitString& src, uint64_t src_off, uint64_t len);

    BitString slice(uint64_t off, uint64_t len) const;

    bool is_zero() const;
    bool operator==(const BitString& o) const;

    // Little-endian packed bytes, zero-padded to a whole byte.
    std::vector<uint8_t> to_bytes() const;
    void append_bytes(std::vector<uint8_t>& out) const;

    uint64_t word(size_t i) const { return w_[i]; }

private:
    uint64_t nbits_ = 0;
    std::vector<uint64_t> w_;
};

// Writer that lays out consecutive slices; used to assemble payloads and
// caches whose layout tables are offset/length lists.
class BitWriter {
public:
    explicit BitWriter(uint64_t total_bits) : out_(total_bits), pos_(0) {}

    uint64_t pos() const { return pos_; }
    void put(const BitString& s) {
        out_.copy_slice(pos_, s, 0, s.size());
        pos_ += s.size();
    }
    void skip(uint64_t nbits) { pos_ += nbits; }
    BitString finish() { return std::move(out_); }

private:
    BitString out_;
    uint64_t pos_;
};

} // namespace pcc
