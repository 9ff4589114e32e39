#include "pcc/bits.hpp"

#include <cassert>

namespace pcc {

BitString BitString::random(uint64_t nbits, CounterRng& rng) {
    BitString s(nbits);
    for (auto& w : s.w_) w = rng.next_u64();
    if (nbits & 63) s.w_.back() &= (1ULL << (nbits & 63)) - 1;
    return s;
}

namespace {

// Read up to 64 bits starting at bit offset `off` (len <= 64).
inline uint64_t read_bits(const std::vector<uint64_t>& w, uint64_t off, unsigned len) {
    uint64_t word = off >> 6;
    unsigned shift = off & 63;
    uint64_t lo = w[word] >> shift;
    if (shift && shift + len > 64) lo |= w[word + 1] << (64 - shift);
    return len == 64 ? lo : lo & ((1ULL << len) - 1);
}

enum class Op { Copy, Xor };

inline void write_bits(std::vector<uint64_t>& w, uint64_t off, unsigned len, uint64_t v, Op op) {
    uint64_t word = off >> 6;
    unsigned shift = off & 63;
    uint64_t mask = len == 64 ? ~0ULL : (1ULL << len) - 1;
    if (op == Op::Copy) {
        w[word] = (w[word] & ~(mask << shift)) | ((v & mask) << shift);
    } else {
        w[word] ^= (v & mask) << shift;
    }
    if (shift && shift + len > 64) {
        unsigned hi_len = shift + len - 64;
        uint64_t hi_mask = (1ULL << hi_len) - 1;
        uint64_t hi = (v & mask) >> (64 - shift);
        if (op == Op::Copy) {
            w[word + 1] = (w[word + 1] & ~hi_mask) | hi;
        } else {
            w[word + 1] ^= hi;
        }
    }
}

inline void slice_op(std::vector<uint64_t>& dst, uint64_t dst_off,
                     const std::vector<uint64_t>& src, uint64_t src_off,
                     uint64_t len, Op op) {
    while (len > 0) {
        unsigned chunk = static_cast<unsigned>(len < 64 ? len : 64);
        uint64_t v = read_bits(src, src_off, chunk);
        write_bits(dst, dst_off, chunk, v, op);
        dst_off += chunk;
        src_off += chunk;
        len -= chunk;
    }
}

} // namespace

void BitString::xor_slice(uint64_t dst_off, const BitString& src, uint64_t src_off, uint64_t len) {
    assert(dst_off + len <= nbits_ && src_off + len <= src.nbits_);
    slice_op(w_, dst_off, src.w_, src_off, len, Op::Xor);
}

void BitString::copy_slice(uint64_t dst_off, const BitString& src, uint64_t src_off, uint64_t len) {
    assert(dst_off + len <= nbits_ && src_off + len <= src.nbits_);
    slice_op(w_, dst_off, src.w_, src_off, len, Op::Copy);
}

BitString BitString::slice(uint64_t off, uint64_t len) const {
    BitString out(len);
    out.copy_slice(0, *this, off, len);
    return out;
}

bool BitString::is_zero() const {
    for (uint64_t w : w_)
        if (w) return false;
    return true;
}

bool BitString::operator==(const BitString& o) const {
    return nbits_ == o.nbits_ && w_ == o.w_;
}

std::vector<uint8_t> BitString::to_bytes() const {
    std::vector<uint8_t> out;
    append_bytes(out);
    return out;
}

void BitString::append_bytes(std::vector<uint8_t>& out) const {
    uint64_t nbytes = (nbits_ + 7) / 8;
    for (uint64_t b = 0; b < nbytes; b++)
        out.push_back(static_cast<uint8_t>(w_[b >> 3] >> ((b & 7) * 8)));
}

} // namespace pcc
