#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pcc/lift.hpp"
#include "pcc/tradeoff.hpp"
#include "pcc/verify.hpp"

using namespace pcc;

namespace {

FileSet random_files(uint32_t n, uint64_t f, uint64_t seed) {
    CounterRng rng(seed, 0);
    return FileSet::random(n, f, rng);
}

// xor of the named thirds of A (file 0) and B (file 1); oracle for the
// fixed-table scheme, written straight off the table entries.
BitString seg_xor(const FileSet& w, std::initializer_list<std::pair<int, int>> parts, uint64_t l) {
    BitString acc(l);
    for (auto [file, seg] : parts) acc.xor_slice(0, w[file], seg * l, l);
    return acc;
}

} // namespace

TEST_CASE("fixed-table caches match the published table") {
    uint64_t l = 3;
    Example1Drs ex(l);
    FileSet w = random_files(2, 3 * l, 1);
    auto caches = ex.setup(w);
    CHECK(caches[0][0] == seg_xor(w, {{0, 0}, {1, 0}}, l));                  // A1^B1
    CHECK(caches[0][1] == seg_xor(w, {{0, 2}, {1, 2}}, l));                  // A3^B3
    CHECK(caches[1][0] == seg_xor(w, {{0, 1}, {1, 1}}, l));                  // A2^B2
    CHECK(caches[1][1] ==
          seg_xor(w, {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {1, 2}}, l));  // full parity
}

TEST_CASE("fixed-table transmissions match the published table") {
    uint64_t l = 2;
    Example1Drs ex(l);
    FileSet w = random_files(2, 3 * l, 2);
    auto row = [&](uint32_t p, uint32_t q) { return ex.deliver(w, {p, q}); };
    auto cat4 = [&](std::initializer_list<std::pair<int, int>> s0,
                    std::initializer_list<std::pair<int, int>> s1,
                    std::initializer_list<std::pair<int, int>> s2,
                    std::initializer_list<std::pair<int, int>> s3) {
        BitWriter wtr(4 * l);
        wtr.put(seg_xor(w, s0, l));
        wtr.put(seg_xor(w, s1, l));
        wtr.put(seg_xor(w, s2, l));
        wtr.put(seg_xor(w, s3, l));
        return wtr.finish();
    };
    CHECK(row(0, 0) == cat4({{1, 0}}, {{1, 1}}, {{0, 2}}, {{0, 0}, {0, 1}, {0, 2}}));
    CHECK(row(0, 1) == cat4({{0, 1}}, {{0, 2}}, {{1, 0}}, {{1, 0}, {1, 1}, {1, 2}}));
    CHECK(row(1, 0) == cat4({{1, 1}}, {{1, 2}}, {{0, 0}}, {{0, 0}, {0, 1}, {0, 2}}));
    CHECK(row(1, 1) == cat4({{0, 0}}, {{0, 1}}, {{1, 2}}, {{1, 0}, {1, 1}, {1, 2}}));
}

TEST_CASE("lifted placement selects the keyed stack member") {
    SchemePtr s = make_example1(2);
    FileSet w = random_files(2, 6, 3);
    // S = (0, 1): user 0 holds A1^B1, user 1 holds the full parity.
    TapeValue tape = s->tape_spec().at(0 + 2 * 1);
    auto caches = s->place(tape, w);
    CHECK(caches[0].main_bits == seg_xor(w, {{0, 0}, {1, 0}}, 2));
    CHECK(caches[0].shared_random.get("s") == 0);
    CHECK(caches[1].shared_random.get("s") == 1);
    // S_0 = 1 selects A3^B3.
    auto caches2 = s->place(s->tape_spec().at(1), w);
    CHECK(caches2[0].main_bits == seg_xor(w, {{0, 2}, {1, 2}}, 2));

    // The declared key space enumerates to N^K values.
    CHECK(static_cast<uint64_t>(s->tape_spec().enumeration_size()) == 4);
}

TEST_CASE("lifted delivery rides the shift vector in the auxiliary record") {
    SchemePtr s = make_example1(1);
    FileSet w = random_files(2, 3, 4);
    // S = (0,1), D = (1,1): shifts (1,0), i.e. expanded demands (1,0,0,1).
    TapeValue tape = s->tape_spec().at(0 + 2 * 1);
    Broadcast bc = s->deliver(tape, w, {{1, 1}});
    CHECK(bc.aux.get("c", 0) == 1);
    CHECK(bc.aux.get("c", 1) == 0);
    Example1Drs inner(1);
    CHECK(inner.demand_at(0, 0, {1, 0}) == 1);
    CHECK(inner.demand_at(0, 1, {1, 0}) == 0);
    CHECK(inner.demand_at(1, 0, {1, 0}) == 0);
    CHECK(inner.demand_at(1, 1, {1, 0}) == 1);

    // S = D: zero shifts, identity expansion.
    Broadcast id = s->deliver(s->tape_spec().at(1 + 2 * 0), w, {{1, 0}});
    CHECK(id.aux.get("c", 0) == 0);
    CHECK(id.aux.get("c", 1) == 0);

    // Shift row (1,1) selects the (A1, A2, B3, B1^B2^B3) transmission.
    uint64_t l = 1;
    Broadcast r11 = s->deliver(s->tape_spec().at(1 + 2 * 0), w, {{0, 1}});
    BitWriter expect(4 * l);
    expect.put(seg_xor(w, {{0, 0}}, l));
    expect.put(seg_xor(w, {{0, 1}}, l));
    expect.put(seg_xor(w, {{1, 2}}, l));
    expect.put(seg_xor(w, {{1, 0}, {1, 1}, {1, 2}}, l));
    CHECK(r11.payload == expect.finish());
}

TEST_CASE("lifted scheme decodes exhaustively at segment scale 1") {
    SchemePtr s = make_example1(1);
    for (uint64_t f = 0; f < 64; f++) {
        FileSet w = FileSet::from_index(2, 3, f);
        for (uint64_t t = 0; t < 4; t++) {
            TapeValue tape = s->tape_spec().at(t);
            auto caches = s->place(tape, w);
            for (uint64_t d = 0; d < 4; d++) {
                DemandVector dem = DemandVector::from_index(2, 2, d);
                Broadcast bc = s->deliver(tape, w, dem);
                for (uint32_t u = 0; u < 2; u++)
                    CHECK(s->decode(u, dem[u], caches[u], bc) == w[dem[u]]);
            }
        }
    }
}

TEST_CASE("general lift over the coded construction decodes (seeded grid)") {
    for (uint32_t r : {1u, 2u}) {
        SchemePtr s = make_scheme_a(3, 2, r, 1);
        FileSet zero = FileSet::zeros(3, s->file_bits());
        CounterRng rng(100 + r, 0);
        for (int trial = 0; trial < 12; trial++) {
            TapeValue tape = s->tape_spec().sample(rng);
            FileSet w = trial == 0 ? zero : random_files(3, s->file_bits(), 200 + 16 * r + trial);
            auto caches = s->place(tape, w);
            for (uint64_t d = 0; d < 9; d++) {
                DemandVector dem = DemandVector::from_index(3, 2, d);
                Broadcast bc = s->deliver(tape, w, dem);
                for (uint32_t u = 0; u < 2; u++)
                    CHECK(s->decode(u, dem[u], caches[u], bc) == w[dem[u]]);
            }
        }
    }
}

TEST_CASE("lift preserves the inner memory-rate operating point") {
    for (uint32_t r = 0; r <= 3; r++) {
        YmaDrs inner(2u, 2u, r, 2u);
        auto m = measure_rates([&](uint64_t l) { return make_scheme_a(2, 2, r, l); }, 2, 3, 77);
        CHECK(m.decode_ok);
        CHECK(m.payload_constant);
        CHECK(m.aux_constant_in_l);
        CHECK(m.cache_main_bits == inner.cache_bits());
        CHECK(m.payload_bits == inner.payload_bits());
    }
}

TEST_CASE("measured operating points reproduce the achievable corner list") {
    // (M, R) for r = 0..3 at (N, K) = (2, 2): (0,2), (2/3,1), (4/3,1/3), (2,0).
    std::vector<MRPoint> expect = {{rat(0), rat(2)},
                                   {rat(2, 3), rat(1)},
                                   {rat(4, 3), rat(1, 3)},
                                   {rat(2), rat(0)}};
    for (uint32_t r = 0; r <= 3; r++) {
        auto m = measure_rates([&](uint64_t l) { return make_scheme_a(2, 2, r, l); }, 3, 2, 5);
        CHECK(m.memory == expect[r].M);
        CHECK(m.rate == expect[r].R);
        CHECK(scheme_a_points(2, 2)[r] == expect[r]);
    }
    // The fixed-table scheme sits at (1/3, 4/3) with F = 3l.
    auto ex = measure_rates([](uint64_t l) { return make_example1(l); }, 4, 3, 6);
    CHECK(ex.memory == rat(1, 3));
    CHECK(ex.rate == rat(4, 3));
    CHECK(ex.decode_ok);
}

TEST_CASE("lifted schemes leak nothing: exact joint-distribution checks") {
    // Fixed-table scheme, all 2^6 libraries x 4 keys x 4 demands.
    auto ex = verify_privacy_exact(*make_example1(1));
    for (const auto& r : ex) {
        CHECK(r.zero);
        CHECK(r.mi_bits == 0.0);
    }
    // Lift over the coded construction at N = 2, K = 2.
    for (uint32_t r : {1u, 2u}) {
        auto res = verify_privacy_exact(*make_scheme_a(2, 2, r, 1));
        for (const auto& e : res) CHECK(e.zero);
    }
}

TEST_CASE("exhaustive privacy extends to three files (2.6M states)") {
    for (const auto& e : verify_privacy_exact(*make_scheme_a(3, 2, 1, 1))) {
        CHECK(e.zero);
        CHECK(e.mi_bits == 0.0);
    }
}

TEST_CASE("lifted schemes satisfy the collusion-grade metric") {
    auto strong = verify_strong_privacy(*make_example1(1), 3, 99);
    for (const auto& s : strong) CHECK(s.zero);
    auto strong_a = verify_strong_privacy(*make_scheme_a(2, 2, 2, 1), 3, 99);
    for (const auto& s : strong_a) CHECK(s.zero);
}
