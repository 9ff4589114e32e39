#pragma once

#include <cstdint>

#include "pcc/core.hpp"
#include "pcc/perm.hpp"
#include "pcc/subset.hpp"

namespace pcc {

// Identical-cache scheme achieving (M, min{N,K}(1 - M/N)). Everyone caches
// the same M/N fraction of every file. For N <= K the uncached remainders
// of all files are broadcast as-is. For K < N the broadcast has K slots:
// each distinct demanded file occupies one uniformly drawn slot, the rest
// hold uniform filler, and each user learns only her own slot through a
// one-time-padded position hint.
class SchemeB : public CachingScheme {
public:
    // memory = m_num/m_den, 0 <= memory <= N.
    SchemeB(uint32_t n_files, uint32_t n_users, uint64_t m_num, uint64_t m_den, uint64_t l);

    std::string name() const override { return "schemeB"; }
    uint32_t n_files() const override { return n_; }
    uint32_t n_users() const override { return k_; }
    uint64_t file_bits() const override { return q_ * l_; }
    const TapeSpec& tape_spec() const override { return tape_; }

    std::vector<CacheContent> place(const TapeValue& tape, const FileSet& files) const override;
    Broadcast deliver(const TapeValue& tape, const FileSet& files,
                      const DemandVector& demands) const override;
    BitString decode(uint32_t user, uint32_t demand, const CacheContent& cache,
                     const Broadcast& bc) const override;

    uint64_t cached_bits() const { return p_ * l_; }          // per file
    uint64_t uncached_bits() const { return (q_ - p_) * l_; } // per file = slot size
    bool randomized() const { return k_ < n_; }

private:
    uint32_t n_, k_;
    uint64_t p_, q_;  // M/N = p/q in lowest terms
    uint64_t l_;
    TapeSpec tape_;
    size_t sigma_comp_ = 0, filler_comp_ = 0;
};

// Segment-permuting scheme: files are split into labelled segments of
// geometrically graded sizes, caches follow a key-selected virtual index,
// and delivery sends one-time-pad-masked symbols V_R in per-size blocks
// whose internal order is hidden by uniform permutations. Position hints
// ride in the auxiliary message, padded so only entitled users read them.
class SchemeC : public CachingScheme {
public:
    // r = r_num/r_den in lowest terms, 1 <= r <= N-1; t in [1, NK-1].
    // l must be a multiple of r_den^(NK-t-1) * (N-1).
    SchemeC(uint32_t n_files, uint32_t n_users, uint32_t t, uint64_t r_num, uint64_t r_den,
            uint64_t l);

    std::string name() const override { return "schemeC"; }
    uint32_t n_files() const override { return n_; }
    uint32_t n_users() const override { return k_; }
    uint64_t file_bits() const override { return file_bits_; }
    const TapeSpec& tape_spec() const override { return tape_; }

    std::vector<CacheContent> place(const TapeValue& tape, const FileSet& files) const override;
    Broadcast deliver(const TapeValue& tape, const FileSet& files,
                      const DemandVector& demands) const override;
    BitString decode(uint32_t user, uint32_t demand, const CacheContent& cache,
                     const Broadcast& bc) const override;

    uint32_t nk() const { return nk_; }
    uint64_t segment_bits(uint32_t size) const { return seg_bits_[size]; }
    uint64_t segment_offset(uint32_t mask) const;  // within a file
    uint64_t kappa(uint32_t size) const { return kappa_[size]; }
    uint64_t cache_main_bits() const;
    uint64_t payload_bits() const;

    // Expanded demand over the NK virtual indices: entry kN+i demands
    // (i - (S_k - D_k)) mod N.
    std::vector<uint32_t> expanded_demand(const std::vector<uint32_t>& keys,
                                          const DemandVector& demands) const;

    // V_R = Y_R ^ (prefix of the adjacent-file difference chain); the
    // blocks of the main payload before permutation. Exposed for the
    // privacy statistics, which need symbol multisets.
    BitString v_symbol(const FileSet& files, const std::vector<uint32_t>& dbar,
                       uint32_t mask) const;
    BitString y_symbol(const FileSet& files, const std::vector<uint32_t>& dbar,
                       uint32_t mask) const;

private:
    uint64_t pad_count() const;  // total pad slots (all sizes, all subsets)
    uint64_t pad_rank(uint32_t mask) const;
    uint64_t cached_pad_rank(uint32_t v, uint32_t mask) const;
    BitString wr_prefix_from_files(const FileSet& files, uint32_t mask) const;

    uint32_t n_, k_, t_, nk_;
    uint64_t r_num_, r_den_, l_;
    uint64_t file_bits_;
    std::vector<uint64_t> seg_bits_;    // by |R|, t <= |R| <= NK-1
    std::vector<uint64_t> group_base_;  // file-internal base offset by |R|
    std::vector<uint64_t> cache_group_base_;
    std::vector<uint64_t> kappa_;       // by |R|, t+1 <= |R| <= NK-1
    std::vector<uint64_t> block_base_;  // payload base offset by |R|
    TapeSpec tape_;
    size_t perm_comp_base_ = 0, pad_comp_base_ = 0;
};

SchemePtr make_scheme_b(uint32_t n, uint32_t k, uint64_t m_num, uint64_t m_den, uint64_t l);
SchemePtr make_scheme_c(uint32_t n, uint32_t k, uint32_t t, uint64_t r_num, uint64_t r_den,
                        uint64_t l);

} // namespace pcc
