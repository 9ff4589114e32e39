#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pcc/yma.hpp"

using namespace pcc;

namespace {

FileSet random_files(uint32_t n, uint64_t f, uint64_t seed) {
    CounterRng rng(seed, 0);
    return FileSet::random(n, f, rng);
}

// Independent oracle for the coded placement symbols: plain XOR of the
// subfiles named by the definition, written against the file layout only.
BitString z_oracle(const YmaDrs& drs, const FileSet& files, uint32_t stack, uint32_t s_mask,
                   uint32_t file) {
    uint64_t l = drs.yma().params().subfile_bits;
    BitString acc(l);
    for (unsigned u = 0; u < drs.ktil(); u++) {
        bool in_v = (drs.v_mask(stack) >> u) & 1;
        bool in_s = (s_mask >> u) & 1;
        if (in_v && !in_s) {
            BitString sub = files[file].slice(drs.yma().subfile_offset(s_mask | (1u << u)), l);
            acc.xor_in(sub);
        }
    }
    return acc;
}

} // namespace

TEST_CASE("yma placement: sizes and contents") {
    // Ktil = 3, r = 1, N = 2: user 0 caches the subfiles labelled {0} of
    // both files, 2F/3 bits (M = Nr/Ktil).
    YmaScheme yma({2, 3, 1, 4});
    CHECK(yma.file_bits() == 12);
    CHECK(yma.cache_bits() == 8);
    FileSet w = random_files(2, 12, 1);
    auto caches = yma.setup(w);
    REQUIRE(caches.size() == 3);
    CHECK(caches[0].slice(0, 4) == w[0].slice(yma.subfile_offset(1u << 0), 4));
    CHECK(caches[0].slice(4, 4) == w[1].slice(yma.subfile_offset(1u << 0), 4));

    // r = 0: empty caches. r = Ktil: the whole library.
    YmaScheme r0({2, 3, 0, 4});
    CHECK(r0.cache_bits() == 0);
    YmaScheme rk({2, 3, 3, 4});
    CHECK(rk.cache_bits() == 2 * rk.file_bits());
}

TEST_CASE("yma delivery: symbol counts and the zero library") {
    // N = 3, Ktil = 5, r = 1, all-distinct demands: payload = 9F/5.
    YmaScheme yma({3, 5, 1, 2});
    FileSet w = random_files(3, yma.file_bits(), 2);
    std::vector<uint32_t> demands{0, 1, 2, 0, 1};
    SubsetLabel leaders = SubsetLabel::from_members({0, 1, 2}, 5);
    BitString x = yma.deliver(w, demands, leaders);
    CHECK(x.size() * 5 == 9 * yma.file_bits());

    // Single demanded file: C(5,2) - C(4,2) symbols survive.
    std::vector<uint32_t> same{0, 0, 0, 0, 0};
    SubsetLabel one = SubsetLabel::from_members({0}, 5);
    CHECK(yma.deliver(w, same, one).size() == (10 - 6) * 2);

    FileSet zero = FileSet::zeros(3, yma.file_bits());
    CHECK(yma.deliver(zero, demands, leaders).is_zero());

    // Leader preconditions: missing coverage and duplicate demands.
    CHECK_THROWS_AS(yma.deliver(w, demands, one), DemandError);
    CHECK_THROWS_AS(yma.deliver(w, same, SubsetLabel::from_members({0, 1}, 5)), DemandError);
}

TEST_CASE("yma missing-symbol recovery equals direct evaluation") {
    // Leader-covered targets come back verbatim.
    YmaScheme small({2, 4, 1, 3});
    FileSet w = random_files(2, small.file_bits(), 3);
    std::vector<uint32_t> demands{0, 1, 0, 1};
    SubsetLabel leaders = SubsetLabel::from_members({0, 1}, 4);
    uint32_t covered = (1u << 0) | (1u << 2);
    CHECK(small.recover_symbol(small.deliver(w, demands, leaders), demands, leaders, covered) ==
          small.eval_y(w, demands, covered));
    // The non-leader pair {2,3} is a combination of transmitted symbols.
    uint32_t missing = (1u << 2) | (1u << 3);
    CHECK(small.recover_symbol(small.deliver(w, demands, leaders), demands, leaders, missing) ==
          small.eval_y(w, demands, missing));

    // Exhaustive agreement for Ktil <= 5, r <= 2 on random libraries.
    for (uint32_t ktil = 2; ktil <= 5; ktil++) {
        for (uint32_t r = 0; r <= 2 && r + 1 <= ktil; r++) {
            uint32_t n = 2;
            YmaScheme yma({n, ktil, r, 1});
            FileSet files = random_files(n, yma.file_bits(), 40 + ktil * 10 + r);
            for (uint64_t d_idx = 0; d_idx < (1ull << ktil); d_idx++) {
                std::vector<uint32_t> dem(ktil);
                uint32_t first0 = UINT32_MAX, first1 = UINT32_MAX;
                for (uint32_t u = 0; u < ktil; u++) {
                    dem[u] = (d_idx >> u) & 1;
                    if (dem[u] == 0 && first0 == UINT32_MAX) first0 = u;
                    if (dem[u] == 1 && first1 == UINT32_MAX) first1 = u;
                }
                std::vector<unsigned> lead;
                if (first0 != UINT32_MAX) lead.push_back(first0);
                if (first1 != UINT32_MAX) lead.push_back(first1);
                SubsetLabel ls = SubsetLabel::from_members(lead, ktil);
                BitString payload = yma.deliver(files, dem, ls);
                for (uint32_t mask : subsets_of_size(ktil, r + 1))
                    CHECK(yma.recover_symbol(payload, dem, ls, mask) ==
                          yma.eval_y(files, dem, mask));
            }
        }
    }
}

TEST_CASE("yma decoding returns the demanded file") {
    YmaScheme yma({3, 5, 2, 2});
    FileSet w = random_files(3, yma.file_bits(), 5);
    std::vector<uint32_t> demands{2, 1, 2, 0, 1};
    SubsetLabel leaders = SubsetLabel::from_members({0, 1, 3}, 5);
    auto caches = yma.setup(w);
    BitString x = yma.deliver(w, demands, leaders);
    for (uint32_t u = 0; u < 5; u++)
        CHECK(yma.decode(u, demands[u], caches[u], x, demands, leaders) == w[demands[u]]);

    FileSet zero = FileSet::zeros(3, yma.file_bits());
    auto zc = yma.setup(zero);
    BitString zx = yma.deliver(zero, demands, leaders);
    CHECK(yma.decode(0, demands[0], zc[0], zx, demands, leaders).is_zero());

    // Full-cache corner: no payload at all.
    YmaScheme full({2, 3, 3, 2});
    FileSet wf = random_files(2, full.file_bits(), 6);
    auto cf = full.setup(wf);
    std::vector<uint32_t> df{1, 0, 1};
    SubsetLabel lf = SubsetLabel::from_members({0, 1}, 3);
    BitString xf = full.deliver(wf, df, lf);
    CHECK(xf.size() == 0);
    for (uint32_t u = 0; u < 3; u++) CHECK(full.decode(u, df[u], cf[u], xf, df, lf) == wf[df[u]]);
}

TEST_CASE("restricted-demand construction: structure") {
    YmaDrs drs(2, 2, 1, 1);
    CHECK(drs.ktil() == 3);
    CHECK(drs.v_mask(1) == 0b111u);  // K'_0 = {0,1}, K'_1 = {2}

    YmaDrs drs3(3, 2, 1, 1);
    CHECK(drs3.ktil() == 5);
    CHECK(drs3.v_mask(1) == 0b11111u);  // {0,1,2} u {3,4}

    // Shift row (0,1) expands to demands (0,1,1,0) in stack-major order.
    std::vector<uint32_t> shifts{0, 1};
    std::vector<uint32_t> flat;
    for (uint32_t stack = 0; stack < 2; stack++)
        for (uint32_t pos = 0; pos < 2; pos++) flat.push_back(drs.demand_at(stack, pos, shifts));
    CHECK(flat == std::vector<uint32_t>{0, 1, 1, 0});
}

TEST_CASE("coded placement symbols match the xor oracle") {
    YmaDrs drs(2, 2, 2, 3);  // Ktil = 3, subfiles of size 2
    FileSet w = random_files(2, drs.file_bits(), 7);
    for (uint32_t file = 0; file < 2; file++)
        for (uint32_t s_mask : subsets_of_size(3, 1))
            CHECK(drs.z_symbol(w, 1, s_mask, file) == z_oracle(drs, w, 1, s_mask, file));

    // A label covering all of V_i leaves an empty XOR.
    YmaDrs big(2, 3, 4, 1);  // Ktil = 4, V_1 = {0,1,2}
    FileSet wb = random_files(2, big.file_bits(), 8);
    CHECK(big.z_symbol(wb, 1, 0b0111, 0).is_zero());
}

TEST_CASE("cache-only recovery of labels containing ground element 0") {
    YmaDrs drs(2, 2, 2, 3);
    FileSet w = random_files(2, drs.file_bits(), 9);
    auto caches = drs.setup(w);
    const BitString& u1 = caches[1][1];  // the extra user of stack 1
    for (uint32_t file = 0; file < 2; file++) {
        for (uint32_t s_mask : subsets_of_size(3, 1)) {
            if (!(s_mask & 1)) continue;
            CHECK(drs.recover_cached_z(u1, 1, s_mask, file) == drs.z_symbol(w, 1, s_mask, file));
        }
    }
    FileSet zero = FileSet::zeros(2, drs.file_bits());
    auto zc = drs.setup(zero);
    CHECK(drs.recover_cached_z(zc[1][1], 1, 1u, 0).is_zero());

    // Labels without 0 are stored, not recovered; r = 1 has no valid label.
    CHECK_THROWS_AS(drs.recover_cached_z(u1, 1, 0b010, 0), ParamError);
    YmaDrs r1(2, 2, 1, 1);
    FileSet w1 = random_files(2, r1.file_bits(), 10);
    auto c1 = r1.setup(w1);
    CHECK_THROWS_AS(r1.recover_cached_z(c1[1][1], 1, 0, 0), ParamError);
}

TEST_CASE("extra users occupy exactly M*F bits") {
    for (uint32_t r = 0; r <= 3; r++) {
        YmaDrs drs(2, 2, r, 6);
        FileSet w = random_files(2, drs.file_bits(), 11 + r);
        auto caches = drs.setup(w);
        // M*F = N*r/Ktil * F
        CHECK(caches[1][1].size() * drs.ktil() == 2ull * r * drs.file_bits());
        CHECK(caches[1][1].size() == drs.cache_bits());
    }
}

TEST_CASE("restricted-demand delivery matches the published rate") {
    for (uint32_t n : {2u, 3u}) {
        for (uint32_t r = 0; r <= n * 2 - 2 + 1; r++) {
            YmaDrs drs(n, 2, r, 2);
            FileSet w = random_files(n, drs.file_bits(), 20 + n * 10 + r);
            std::vector<uint32_t> shifts(2, 0);
            uint32_t ktil = drs.ktil();
            uint64_t expect =
                (binom_u64(ktil, r + 1) - binom_u64(ktil - n, r + 1)) * 2;  // l = 2
            CHECK(drs.deliver(w, shifts).size() == expect);
            CHECK(drs.payload_bits() == expect);
        }
    }
}

TEST_CASE("every virtual user decodes every restricted demand (N=2,3)") {
    for (uint32_t n : {2u, 3u}) {
        for (uint32_t r = 1; r <= 2; r++) {
            YmaDrs drs(n, 2, r, 1);
            FileSet w = random_files(n, drs.file_bits(), 30 + n + r);
            auto caches = drs.setup(w);
            for (uint32_t c0 = 0; c0 < n; c0++) {
                for (uint32_t c1 = 0; c1 < n; c1++) {
                    std::vector<uint32_t> shifts{c0, c1};
                    BitString x = drs.deliver(w, shifts);
                    for (uint32_t stack = 0; stack < 2; stack++)
                        for (uint32_t pos = 0; pos < n; pos++) {
                            uint32_t d = drs.demand_at(stack, pos, shifts);
                            CHECK(drs.decode(stack, pos, shifts, caches[stack][pos], x) == w[d]);
                        }
                }
            }
        }
    }

    // Zero library decodes to zero.
    YmaDrs drs(2, 2, 1, 3);
    FileSet zero = FileSet::zeros(2, drs.file_bits());
    auto zc = drs.setup(zero);
    std::vector<uint32_t> shifts{1, 0};
    BitString zx = drs.deliver(zero, shifts);
    CHECK(drs.decode(1, 1, shifts, zc[1][1], zx).is_zero());
}
