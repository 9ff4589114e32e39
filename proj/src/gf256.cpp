#include "pcc/gf256.hpp"

#include <array>

namespace pcc {

namespace gf256 {

namespace {
std::array<uint8_t, 512> exp_table;
std::array<uint8_t, 256> log_table;
bool built = false;
} // namespace

void init_tables() {
    if (built) return;
    unsigned x = 1;
    for (unsigned i = 0; i < 255; i++) {
        exp_table[i] = static_cast<uint8_t>(x);
        log_table[x] = static_cast<uint8_t>(i);
        x <<= 1;
        if (x & 0x100) x ^= 0x11d;
    }
    for (unsigned i = 255; i < 512; i++) exp_table[i] = exp_table[i - 255];
    built = true;
}

uint8_t mul(uint8_t a, uint8_t b) {
    if (a == 0 || b == 0) return 0;
    return exp_table[log_table[a] + log_table[b]];
}

uint8_t inv(uint8_t a) {
    if (a == 0) throw Error("gf256: inverse of zero");
    return exp_table[255 - log_table[a]];
}

} // namespace gf256

namespace {

// L_j(x) = prod_{i != j} (x - nodes[i]) / (nodes[j] - nodes[i]) over GF(2^8).
std::vector<uint8_t> lagrange_row(const std::vector<uint8_t>& nodes, uint8_t x) {
    std::vector<uint8_t> row(nodes.size());
    for (size_t j = 0; j < nodes.size(); j++) {
        uint8_t num = 1, den = 1;
        for (size_t i = 0; i < nodes.size(); i++) {
            if (i == j) continue;
            num = gf256::mul(num, x ^ nodes[i]);
            den = gf256::mul(den, nodes[j] ^ nodes[i]);
        }
        row[j] = gf256::mul(num, gf256::inv(den));
    }
    return row;
}

} // namespace

RsCode::RsCode(unsigned n, unsigned k) : n_(n), k_(k) {
    if (k == 0 || k > n || n > 256) throw ParamError("rs: need 1 <= k <= n <= 256");
    gf256::init_tables();
    std::vector<uint8_t> nodes(k);
    for (unsigned j = 0; j < k; j++) nodes[j] = static_cast<uint8_t>(j);
    parity_rows_.reserve(n - k);
    for (unsigned p = k; p < n; p++) parity_rows_.push_back(lagrange_row(nodes, static_cast<uint8_t>(p)));
}

std::vector<uint8_t> RsCode::encode(const std::vector<uint8_t>& message) const {
    if (message.size() != k_) throw ParamError("rs: message must have k symbols");
    std::vector<uint8_t> out(n_);
    for (unsigned j = 0; j < k_; j++) out[j] = message[j];
    for (unsigned p = k_; p < n_; p++) {
        uint8_t acc = 0;
        for (unsigned j = 0; j < k_; j++) acc ^= gf256::mul(parity_rows_[p - k_][j], message[j]);
        out[p] = acc;
    }
    return out;
}

std::vector<uint8_t> RsCode::decode(const std::vector<unsigned>& positions,
                                    const std::vector<uint8_t>& symbols) const {
    if (positions.size() != k_ || symbols.size() != k_)
        throw ParamError("rs: decoding needs exactly k symbols");
    std::vector<uint8_t> nodes(k_);
    for (unsigned t = 0; t < k_; t++) {
        if (positions[t] >= n_) throw ParamError("rs: position out of range");
        nodes[t] = static_cast<uint8_t>(positions[t]);
        for (unsigned s = 0; s < t; s++)
            if (positions[s] == positions[t]) throw ParamError("rs: duplicate position");
    }
    std::vector<uint8_t> out(k_);
    for (unsigned j = 0; j < k_; j++) {
        std::vector<uint8_t> row = lagrange_row(nodes, static_cast<uint8_t>(j));
        uint8_t acc = 0;
        for (unsigned t = 0; t < k_; t++) acc ^= gf256::mul(row[t], symbols[t]);
        out[j] = acc;
    }
    return out;
}

std::vector<BitString> RsCode::encode_lanes(const std::vector<BitString>& message_lanes) const {
    if (message_lanes.size() != k_) throw ParamError("rs: need k message lanes");
    uint64_t bits = message_lanes[0].size();
    if (bits % 8 != 0) throw DivisibilityError("rs: lane size must be a whole number of bytes");
    std::vector<std::vector<uint8_t>> msg_bytes(k_);
    for (unsigned j = 0; j < k_; j++) {
        if (message_lanes[j].size() != bits) throw ParamError("rs: unequal lane sizes");
        msg_bytes[j] = message_lanes[j].to_bytes();
    }
    uint64_t nbytes = bits / 8;
    std::vector<std::vector<uint8_t>> out_bytes(n_, std::vector<uint8_t>(nbytes));
    for (unsigned j = 0; j < k_; j++) out_bytes[j] = msg_bytes[j];
    for (unsigned p = k_; p < n_; p++) {
        for (uint64_t b = 0; b < nbytes; b++) {
            uint8_t acc = 0;
            for (unsigned j = 0; j < k_; j++) acc ^= gf256::mul(parity_rows_[p - k_][j], msg_bytes[j][b]);
            out_bytes[p][b] = acc;
        }
    }
    std::vector<BitString> out(n_, BitString(bits));
    for (unsigned p = 0; p < n_; p++)
        for (uint64_t i = 0; i < bits; i++)
            out[p].set(i, (out_bytes[p][i >> 3] >> (i & 7)) & 1);
    return out;
}

std::vector<BitString> RsCode::decode_lanes(const std::vector<unsigned>& positions,
                                            const std::vector<BitString>& symbol_lanes) const {
    if (positions.size() != k_ || symbol_lanes.size() != k_)
        throw ParamError("rs: decoding needs exactly k symbols");
    uint64_t bits = symbol_lanes[0].size();
    uint64_t nbytes = bits / 8;
    std::vector<uint8_t> nodes(k_);
    for (unsigned t = 0; t < k_; t++) {
        if (positions[t] >= n_) throw ParamError("rs: position out of range");
        nodes[t] = static_cast<uint8_t>(positions[t]);
        for (unsigned s = 0; s < t; s++)
            if (positions[s] == positions[t]) throw ParamError("rs: duplicate position");
    }
    std::vector<std::vector<uint8_t>> sym_bytes(k_);
    for (unsigned t = 0; t < k_; t++) {
        if (symbol_lanes[t].size() != bits) throw ParamError("rs: unequal lane sizes");
        sym_bytes[t] = symbol_lanes[t].to_bytes();
    }
    std::vector<BitString> out(k_, BitString(bits));
    for (unsigned j = 0; j < k_; j++) {
        std::vector<uint8_t> row = lagrange_row(nodes, static_cast<uint8_t>(j));
        for (uint64_t b = 0; b < nbytes; b++) {
            uint8_t acc = 0;
            for (unsigned t = 0; t < k_; t++) acc ^= gf256::mul(row[t], sym_bytes[t][b]);
            for (unsigned i = 0; i < 8; i++) out[j].set(b * 8 + i, (acc >> i) & 1);
        }
    }
    return out;
}

} // namespace pcc
