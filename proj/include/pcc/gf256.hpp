#pragma once

#include <cstdint>
#include <vector>

#include "pcc/bits.hpp"
#include "pcc/errors.hpp"

namespace pcc {

// GF(2^8) with the primitive polynomial x^8+x^4+x^3+x^2+1 (0x11d).
namespace gf256 {

void init_tables();
uint8_t mul(uint8_t a, uint8_t b);
uint8_t inv(uint8_t a);

} // namespace gf256

// Systematic (n, k) Reed-Solomon code, evaluation style: the message is
// interpolated as a polynomial of degree < k through points x = 0..k-1 and
// parity symbols are its values at x = k..n-1. Any k of the n symbols
// reconstruct the message, so the code is MDS. Requires n <= 256.
class RsCode {
public:
    RsCode(unsigned n, unsigned k);

    unsigned n() const { return n_; }
    unsigned k() const { return k_; }

    // One codeword: k message bytes -> n coded bytes.
    std::vector<uint8_t> encode(const std::vector<uint8_t>& message) const;

    // positions: k distinct symbol indices; symbols: their values.
    std::vector<uint8_t> decode(const std::vector<unsigned>& positions,
                                const std::vector<uint8_t>& symbols) const;

    // Byte-parallel variants over equal-length bit strings (a "symbol" is
    // a lane of bytes). Used to code whole file parts.
    std::vector<BitString> encode_lanes(const std::vector<BitString>& message_lanes) const;
    std::vector<BitString> decode_lanes(const std::vector<unsigned>& positions,
                                        const std::vector<BitString>& symbol_lanes) const;

private:
    unsigned n_, k_;
    // parity_rows_[p - k][j]: coefficient of message byte j in parity p.
    std::vector<std::vector<uint8_t>> parity_rows_;
};

} // namespace pcc
