#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pcc/gf2.hpp"
#include "pcc/gf256.hpp"
#include "pcc/rng.hpp"
#include "pcc/subset.hpp"

using namespace pcc;

namespace {

// Brute-force oracle: is `target` the XOR of some subset of `rows`, and if
// so what value does that subset carry? Enumerates all 2^rows subsets.
std::optional<BitString> brute_express(const std::vector<std::pair<uint64_t, BitString>>& rows,
                                       uint64_t target, uint64_t value_bits) {
    for (uint32_t pick = 0; pick < (1u << rows.size()); pick++) {
        uint64_t acc = 0;
        BitString val(value_bits);
        for (size_t i = 0; i < rows.size(); i++) {
            if ((pick >> i) & 1) {
                acc ^= rows[i].first;
                val.xor_in(rows[i].second);
            }
        }
        if (acc == target) return val;
    }
    return std::nullopt;
}

} // namespace

TEST_CASE("xor span agrees with subset enumeration") {
    CounterRng rng(11, 0);
    for (int trial = 0; trial < 100; trial++) {
        size_t dim = 4 + rng.bounded(6);
        size_t n_rows = rng.bounded(9);
        std::vector<std::pair<uint64_t, BitString>> rows;
        XorSpan span(dim);
        for (size_t i = 0; i < n_rows; i++) {
            uint64_t coeff = rng.bounded(1ull << dim);
            BitString value = BitString::random(8, rng);
            rows.push_back({coeff, value});
            XorSpan::Mask m(1, coeff);
            span.add(std::move(m), value);
        }
        for (int probe = 0; probe < 10; probe++) {
            uint64_t target = rng.bounded(1ull << dim);
            auto expect = brute_express(rows, target, 8);
            auto got = span.express(XorSpan::Mask(1, target), 8);
            REQUIRE(got.has_value() == expect.has_value());
            if (expect) {
                // The combination may differ, but the carried value must
                // agree whenever the row values are consistent (they are,
                // both sides XOR subsets of the same rows reaching the
                // same coefficient vector only if values match... check
                // via re-evaluation: got must itself be expressible).
                // For random values consistency can fail only if the rows
                // are dependent; accept either exact match or any valid
                // combination value.
                if (span.rank() == n_rows) CHECK(*got == *expect);
            }
        }
    }
}

TEST_CASE("gf256 field identities") {
    gf256::init_tables();
    CounterRng rng(12, 0);
    for (int i = 0; i < 2000; i++) {
        uint8_t a = static_cast<uint8_t>(rng.bounded(255) + 1);
        uint8_t b = static_cast<uint8_t>(rng.bounded(256));
        uint8_t c = static_cast<uint8_t>(rng.bounded(256));
        CHECK(gf256::mul(a, gf256::inv(a)) == 1);
        CHECK(gf256::mul(a, static_cast<uint8_t>(b ^ c)) ==
              (gf256::mul(a, b) ^ gf256::mul(a, c)));
        CHECK(gf256::mul(b, c) == gf256::mul(c, b));
    }
    CHECK_THROWS_AS(gf256::inv(0), Error);
}

TEST_CASE("rs(7,5): zero codeword, exhaustive 5-of-7 recovery, preconditions") {
    RsCode rs(7, 5);
    std::vector<uint8_t> zero(5, 0);
    auto zc = rs.encode(zero);
    for (uint8_t s : zc) CHECK(s == 0);

    CounterRng rng(13, 0);
    std::vector<uint8_t> msg(5);
    for (auto& m : msg) m = static_cast<uint8_t>(rng.bounded(256));
    auto code = rs.encode(msg);
    CHECK(code.size() == 7);
    for (unsigned j = 0; j < 5; j++) CHECK(code[j] == msg[j]);  // systematic

    auto subsets = subsets_of_size(7, 5);
    REQUIRE(subsets.size() == 21);
    for (uint32_t mask : subsets) {
        std::vector<unsigned> pos;
        std::vector<uint8_t> sym;
        for_members(mask, [&](unsigned p) {
            pos.push_back(p);
            sym.push_back(code[p]);
        });
        CHECK(rs.decode(pos, sym) == msg);
    }

    CHECK_THROWS_AS(rs.decode({0, 1, 2, 3}, {0, 0, 0, 0}), ParamError);        // too few
    CHECK_THROWS_AS(rs.decode({0, 0, 1, 2, 3}, {0, 0, 0, 0, 0}), ParamError);  // duplicate
}

TEST_CASE("rs encoding is linear over gf(2)") {
    RsCode rs(10, 7);  // the N = 4 shape
    CounterRng rng(14, 0);
    std::vector<uint8_t> x(7), y(7), xy(7);
    for (unsigned i = 0; i < 7; i++) {
        x[i] = static_cast<uint8_t>(rng.bounded(256));
        y[i] = static_cast<uint8_t>(rng.bounded(256));
        xy[i] = x[i] ^ y[i];
    }
    auto cx = rs.encode(x), cy = rs.encode(y), cxy = rs.encode(xy);
    for (unsigned p = 0; p < 10; p++) CHECK(cxy[p] == (cx[p] ^ cy[p]));
}

TEST_CASE("rs lane coding matches symbol coding") {
    RsCode rs(7, 5);
    CounterRng rng(15, 0);
    std::vector<BitString> lanes;
    for (int i = 0; i < 5; i++) lanes.push_back(BitString::random(16, rng));
    auto coded = rs.encode_lanes(lanes);
    REQUIRE(coded.size() == 7);
    for (uint64_t byte = 0; byte < 2; byte++) {
        std::vector<uint8_t> col(5);
        for (int i = 0; i < 5; i++) col[i] = lanes[i].to_bytes()[byte];
        auto symbol_col = rs.encode(col);
        for (unsigned p = 0; p < 7; p++) CHECK(coded[p].to_bytes()[byte] == symbol_col[p]);
    }
    auto back = rs.decode_lanes({2, 3, 4, 5, 6}, {coded[2], coded[3], coded[4], coded[5], coded[6]});
    for (int i = 0; i < 5; i++) CHECK(back[i] == lanes[i]);
}
