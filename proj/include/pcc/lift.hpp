#pragma once

#include <memory>

#include "pcc/core.hpp"
#include "pcc/yma.hpp"

namespace pcc {

// The fixed restricted-demand scheme for 2 files and 4 virtual users with
// coded placement (the construction behind the (1/3, 4/3) corner point).
// Files A, B are split into 3 segments each; caches and the four possible
// transmissions are fixed XOR patterns over those 6 segments, and decoding
// solves the demanded segments out of the received GF(2) span.
class Example1Drs : public DrsScheme {
public:
    explicit Example1Drs(uint64_t segment_bits);

    std::string name() const override { return "example1-table"; }
    uint32_t n_files() const override { return 2; }
    uint32_t n_stacks() const override { return 2; }
    uint64_t file_bits() const override { return 3 * l_; }
    uint64_t cache_bits() const override { return l_; }
    uint64_t payload_bits() const override { return 4 * l_; }

    std::vector<std::vector<BitString>> setup(const FileSet& files) const override;
    BitString deliver(const FileSet& files, const std::vector<uint32_t>& shifts) const override;
    BitString decode(uint32_t stack, uint32_t pos, const std::vector<uint32_t>& shifts,
                     const BitString& cache, const BitString& payload) const override;

    // Atom masks over (A1,A2,A3,B1,B2,B3); exposed for the fixed-table tests.
    static uint8_t cache_pattern(uint32_t stack, uint32_t pos);
    static const uint8_t* tx_pattern(uint32_t p, uint32_t q);  // 4 symbol masks

private:
    BitString combine(const FileSet& files, uint8_t atom_mask) const;
    uint64_t l_;
};

// Blackbox conversion of a restricted-demand non-private scheme into a
// demand-private scheme for N files and K users. Every user holds a
// uniform key S_k selecting which member of her stack she impersonates;
// the broadcast is the inner transmission for the expanded demand vector
// derived from S - D, which itself rides along as the auxiliary message
// and reveals nothing because S_k one-time-pads D_k.
class LiftScheme : public CachingScheme {
public:
    explicit LiftScheme(std::string name, std::shared_ptr<const DrsScheme> inner);

    std::string name() const override { return name_; }
    uint32_t n_files() const override { return inner_->n_files(); }
    uint32_t n_users() const override { return inner_->n_stacks(); }
    uint64_t file_bits() const override { return inner_->file_bits(); }
    const TapeSpec& tape_spec() const override { return tape_; }

    std::vector<CacheContent> place(const TapeValue& tape, const FileSet& files) const override;
    Broadcast deliver(const TapeValue& tape, const FileSet& files,
                      const DemandVector& demands) const override;
    BitString decode(uint32_t user, uint32_t demand, const CacheContent& cache,
                     const Broadcast& bc) const override;

    const DrsScheme& inner() const { return *inner_; }

private:
    std::string name_;
    std::shared_ptr<const DrsScheme> inner_;
    TapeSpec tape_;
};

// Scheme A: the lift applied to the YMA-based restricted-demand scheme.
SchemePtr make_scheme_a(uint32_t n_files, uint32_t n_users, uint32_t r, uint64_t l);

// The fixed (N,K) = (2,2) scheme with (M,R) = (1/3, 4/3) at F = 3l.
SchemePtr make_example1(uint64_t l);

} // namespace pcc
