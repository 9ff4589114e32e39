#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "pcc/core.hpp"
#include "pcc/gf256.hpp"

namespace pcc {

// Uncoded-prefetch scheme for N > 2 files and 2 users at (M, R) = (N/3, 1).
// Each user caches one third of every file under a private permutation;
// the delivery is a 3-symbol permuted payload in which every user finds
// one uncoded and one coded symbol of her file through padded hints.
class SchemeD : public CachingScheme {
public:
    SchemeD(uint32_t n_files, uint64_t l);

    std::string name() const override { return "schemeD"; }
    uint32_t n_files() const override { return n_; }
    uint32_t n_users() const override { return 2; }
    uint64_t file_bits() const override { return 3 * l_; }
    const TapeSpec& tape_spec() const override { return tape_; }

    std::vector<CacheContent> place(const TapeValue& tape, const FileSet& files) const override;
    Broadcast deliver(const TapeValue& tape, const FileSet& files,
                      const DemandVector& demands) const override;
    BitString decode(uint32_t user, uint32_t demand, const CacheContent& cache,
                     const Broadcast& bc) const override;

private:
    uint32_t n_;
    uint64_t l_;
    TapeSpec tape_;
    // component indices
    size_t pi_[3];
    size_t s1_[2], s2_[2], p1_[2], p2_[2];
};

// Coded-prefetch scheme for N > 2 files and 2 users at
// (M, R) = (N^2/(2N-1), (N-1)/(2N-1)). Every file is spread over 3N-2
// symbols of a (3N-2, 2N-1) MDS code; each user caches a permuted bundle
// of N symbols per file and completes 2N-1 distinct symbols from an
// (N-1)-symbol payload, then erasure-decodes.
class SchemeE : public CachingScheme {
public:
    SchemeE(uint32_t n_files, uint64_t l);

    std::string name() const override { return "schemeE"; }
    uint32_t n_files() const override { return n_; }
    uint32_t n_users() const override { return 2; }
    uint64_t file_bits() const override { return 8 * (2 * n_ - 1) * l_; }
    const TapeSpec& tape_spec() const override { return tape_; }

    std::vector<CacheContent> place(const TapeValue& tape, const FileSet& files) const override;
    Broadcast deliver(const TapeValue& tape, const FileSet& files,
                      const DemandVector& demands) const override;
    BitString decode(uint32_t user, uint32_t demand, const CacheContent& cache,
                     const Broadcast& bc) const override;

    uint64_t symbol_bits() const { return 8 * l_; }
    // Codeword position of the shared symbol (j = 0) or bundle symbol
    // (bundle j in [0:2], index tt in [1:N-1]).
    uint32_t symbol_pos(uint32_t bundle, uint32_t tt) const {
        return tt == 0 ? 0 : 1 + bundle * (n_ - 1) + (tt - 1);
    }
    std::vector<BitString> coded_symbols(const BitString& file) const;

private:
    std::array<uint32_t, 2> draw_u(const TapeValue& tape) const;

    uint32_t n_;
    uint64_t l_;
    RsCode rs_;
    TapeSpec tape_;
    size_t u0_, u1sel_;
    size_t pi_[2];
    size_t pads_[2];  // base of the 2N-1 position pads per user
    size_t p_[2];
};

SchemePtr make_scheme_d(uint32_t n, uint64_t l);
SchemePtr make_scheme_e(uint32_t n, uint64_t l);

// ---- reduced privacy statistics (exact enumerations) ----

// Joint counts of the two payload-position hints of user k over the
// delivery permutation, split by whether the demands coincide. Exact claim:
// uniform over ordered distinct pairs, independent of demands.
std::map<std::array<uint32_t, 2>, uint64_t> scheme_d_hint_pair_counts(bool equal_demands,
                                                                      uint32_t k);

// Counts of the full reduced view tuple (own-slot position, both payload
// hints, helper-slot position) of user k over (pi_k, pi_2) for a fixed
// demand pair. Denominator: N! * 6.
std::map<std::array<uint32_t, 4>, uint64_t> scheme_d_tuple_counts(uint32_t n, uint32_t k,
                                                                  uint32_t d0, uint32_t d1);

// Counts of the 2N-1 cache-position variables of user k over pi_k for a
// fixed demand pair (the tuple does not involve the bundle draw). Exact
// claim: uniform over ordered distinct (2N-1)-tuples from [0:N^2-1],
// independent of the demands.
std::map<std::vector<uint32_t>, uint64_t> scheme_e_position_counts(uint32_t n, uint32_t k,
                                                                   uint32_t d0, uint32_t d1);

// Counts of T_k over (U0, U1) given demands and U_k. Exact claim: 1/2 on
// each of the two values != U_k.
std::map<uint32_t, uint64_t> scheme_e_t_counts(uint32_t k, uint32_t d0, uint32_t d1, uint32_t uk);

} // namespace pcc
