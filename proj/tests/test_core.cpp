#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pcc/aux_record.hpp"
#include "pcc/bits.hpp"
#include "pcc/core.hpp"
#include "pcc/perm.hpp"
#include "pcc/rng.hpp"
#include "pcc/subset.hpp"
#include "pcc/tape.hpp"

#include <map>
#include <set>

using namespace pcc;

namespace {

// Naive per-bit reference for the packed slice operations.
std::vector<bool> to_bools(const BitString& s) {
    std::vector<bool> v(s.size());
    for (uint64_t i = 0; i < s.size(); i++) v[i] = s.get(i);
    return v;
}

} // namespace

TEST_CASE("bitstring slice ops match a per-bit reference") {
    CounterRng rng(7, 0);
    for (int trial = 0; trial < 200; trial++) {
        uint64_t n = 1 + rng.bounded(200);
        BitString a = BitString::random(n, rng);
        BitString b = BitString::random(n, rng);
        uint64_t len = rng.bounded(n + 1);
        uint64_t doff = len < n ? rng.bounded(n - len + 1) : 0;
        uint64_t soff = len < n ? rng.bounded(n - len + 1) : 0;

        auto ra = to_bools(a), rb = to_bools(b);
        BitString x = a;
        x.xor_slice(doff, b, soff, len);
        for (uint64_t i = 0; i < len; i++) ra[doff + i] = ra[doff + i] ^ rb[soff + i];
        CHECK(to_bools(x) == ra);

        BitString c = a;
        c.copy_slice(doff, b, soff, len);
        auto rc = to_bools(a);
        for (uint64_t i = 0; i < len; i++) rc[doff + i] = rb[soff + i];
        CHECK(to_bools(c) == rc);

        BitString sl = b.slice(soff, len);
        for (uint64_t i = 0; i < len; i++) CHECK(sl.get(i) == rb[soff + i]);
    }
}

TEST_CASE("bitstring bytes round the size up and preserve order") {
    BitString s(10);
    s.set(0, true);
    s.set(9, true);
    auto bytes = s.to_bytes();
    REQUIRE(bytes.size() == 2);
    CHECK(bytes[0] == 0x01);
    CHECK(bytes[1] == 0x02);
}

TEST_CASE("subset rank/unrank is the identity on ground sets up to 12") {
    for (unsigned m = 0; m <= 12; m++) {
        for (unsigned s = 0; s <= m; s++) {
            auto subs = subsets_of_size(m, s);
            CHECK(subs.size() == binom_u64(m, s));
            for (uint64_t i = 0; i < subs.size(); i++) {
                if (i > 0) CHECK(subs[i - 1] < subs[i]);  // colex = ascending mask
                CHECK(colex_rank(subs[i]) == i);
                CHECK(colex_unrank(m, s, i) == subs[i]);
            }
        }
    }
}

TEST_CASE("subset labels have canonical encodings") {
    SubsetLabel a = SubsetLabel::from_members({4, 1, 2}, 6);
    CHECK(a.size() == 3);
    CHECK(a.members() == std::vector<unsigned>{1, 2, 4});
    CHECK(SubsetLabel::decode(a.encode(), 6) == a);
    CHECK_THROWS_AS(SubsetLabel::from_members({6}, 6), ParamError);
}

TEST_CASE("permutations compose, invert and enumerate") {
    CHECK_THROWS_AS(Permutation({0, 0, 1}), ParamError);
    std::set<std::vector<uint32_t>> seen;
    for (uint64_t r = 0; r < 24; r++) {
        Permutation p = Permutation::unrank(4, r);
        seen.insert(p.raw());
        CHECK(p.compose(p.inverse()) == Permutation::identity(4));
        CHECK(p.inverse().compose(p) == Permutation::identity(4));
    }
    CHECK(seen.size() == 24);

    // pi(Y)_j = Y_{pi^{-1}(j)}
    Permutation p(std::vector<uint32_t>{2, 0, 1});
    std::vector<int> in{10, 11, 12};
    auto out = p.apply(in);
    CHECK(out == std::vector<int>{11, 12, 10});
    for (uint32_t i = 0; i < 3; i++) CHECK(out[p(i)] == in[i]);

    CounterRng rng(3, 1);
    std::map<std::vector<uint32_t>, int> freq;
    for (int i = 0; i < 6000; i++) freq[Permutation::sample(3, rng).raw()]++;
    CHECK(freq.size() == 6);
    for (auto& [v, c] : freq) CHECK(c > 800);
}

TEST_CASE("tape spec enumerates every value exactly once") {
    TapeSpec spec;
    spec.add_uniform("a", 3);
    spec.add_perm("p", 3);
    spec.add_uniform("b", 2);
    CHECK(static_cast<uint64_t>(spec.enumeration_size()) == 3 * 6 * 2);
    std::set<std::pair<uint64_t, std::pair<std::vector<uint32_t>, uint64_t>>> seen;
    for (uint64_t i = 0; i < 36; i++) {
        TapeValue v = spec.at(i);
        seen.insert({v.u(0), {v.perm(1).raw(), v.u(2)}});
    }
    CHECK(seen.size() == 36);

    CounterRng a(9, 4), b(9, 4);
    TapeValue s1 = spec.sample(a), s2 = spec.sample(b);
    CHECK(s1.u(0) == s2.u(0));
    CHECK(s1.perm(1) == s2.perm(1));
    CHECK(s1.u(2) == s2.u(2));
}

TEST_CASE("empty tape has a single value") {
    TapeSpec spec;
    CHECK(static_cast<uint64_t>(spec.enumeration_size()) == 1);
    CHECK(spec.at(0).entries.empty());
}

TEST_CASE("aux records are tagged, fixed-width and auditable") {
    AuxRecord rec;
    rec.add("c", 2, 3);
    rec.add("c", 2, 1);
    rec.add("pos", 5, 17);
    CHECK(rec.get("c") == 3);
    CHECK(rec.get("c", 1) == 1);
    CHECK(rec.get("pos") == 17);
    CHECK(rec.count("c") == 2);
    CHECK_THROWS_AS(rec.get("missing"), AuxError);
    CHECK_THROWS_AS(rec.add("x", 2, 4), AuxError);  // value exceeds width

    AuxRecord same;
    same.add("c", 2, 0);
    same.add("c", 2, 0);
    same.add("pos", 5, 0);
    CHECK(same.bit_size() == rec.bit_size());  // size independent of values
}

TEST_CASE("fileset index enumeration covers every library") {
    std::set<std::vector<std::vector<uint8_t>>> seen;
    for (uint64_t i = 0; i < 64; i++) {
        FileSet w = FileSet::from_index(2, 3, i);
        seen.insert({w[0].to_bytes(), w[1].to_bytes()});
    }
    CHECK(seen.size() == 64);
    FileSet u = FileSet::unit(2, 3, 1, 2);
    CHECK(u[0].is_zero());
    CHECK(u[1].get(2));
    CHECK(!u[1].get(0));
}

TEST_CASE("counter rng is stream-stable and roughly uniform") {
    CounterRng a(42, 7), b(42, 7), c(42, 8);
    CHECK(a.next_u64() == b.next_u64());
    CHECK(a.next_u64() != c.next_u64());
    uint64_t counts[5] = {0, 0, 0, 0, 0};
    CounterRng r(1, 2);
    for (int i = 0; i < 50000; i++) counts[r.bounded(5)]++;
    for (uint64_t cnt : counts) {
        CHECK(cnt > 9300);
        CHECK(cnt < 10700);
    }
}
