#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "pcc/bits.hpp"
#include "pcc/core.hpp"
#include "pcc/gf2.hpp"
#include "pcc/subset.hpp"

namespace pcc {

// Leader-based non-private scheme for N files and Ktil users with uncoded
// placement. Files are split into C(Ktil, r) subfiles labelled by size-r
// subsets; user m caches every subfile whose label contains m. Delivery
// sends Y_R = xor_{u in R} W[d_u][R \ {u}] for the (r+1)-subsets meeting
// the leader set; the remaining Y_R are GF(2) combinations of those.
class YmaScheme {
public:
    struct Params {
        uint32_t n_files;      // N
        uint32_t n_users;      // Ktil
        uint32_t r;            // 0 <= r <= Ktil
        uint64_t subfile_bits; // l
    };

    explicit YmaScheme(Params p);

    const Params& params() const { return p_; }
    uint64_t subfile_count() const { return n_subfiles_; }
    uint64_t file_bits() const { return n_subfiles_ * p_.subfile_bits; }
    uint64_t cache_bits() const;
    uint64_t payload_bits(uint32_t n_distinct_demands) const;

    uint64_t subfile_offset(uint32_t mask) const { return colex_rank(mask) * p_.subfile_bits; }
    // Offset of subfile (file i, label mask) inside user m's cache; mask must contain m.
    uint64_t cache_offset(uint32_t user, uint32_t file, uint32_t mask) const;

    std::vector<BitString> setup(const FileSet& files) const;

    BitString deliver(const FileSet& files, const std::vector<uint32_t>& demands,
                      SubsetLabel leaders) const;

    // Y_target for any (r+1)-subset: read from the payload when target
    // meets the leaders, otherwise solved out of the transmitted span.
    BitString recover_symbol(const BitString& payload, const std::vector<uint32_t>& demands,
                             SubsetLabel leaders, uint32_t target_mask) const;

    BitString decode(uint32_t user, uint32_t demand, const BitString& cache,
                     const BitString& payload, const std::vector<uint32_t>& demands,
                     SubsetLabel leaders) const;

    // Direct formula evaluation of Y_R from the files.
    BitString eval_y(const FileSet& files, const std::vector<uint32_t>& demands,
                     uint32_t r_mask) const;

    std::vector<uint32_t> transmitted_masks(uint32_t leaders_mask) const;
    void check_leaders(const std::vector<uint32_t>& demands, SubsetLabel leaders) const;

private:
    friend class YmaSymbolResolver;
    Params p_;
    uint64_t n_subfiles_;
};

// Shares one GF(2) span across the symbol lookups of a decode pass.
class YmaSymbolResolver {
public:
    YmaSymbolResolver(const YmaScheme& s, const BitString& payload,
                      const std::vector<uint32_t>& demands, uint32_t leaders_mask);
    BitString get(uint32_t mask);

private:
    size_t atom(uint32_t file, uint32_t submask) const;
    XorSpan::Mask symbol_coeffs(uint32_t mask) const;

    const YmaScheme& s_;
    const BitString& payload_;
    const std::vector<uint32_t>& demands_;
    uint32_t leaders_mask_;
    std::vector<uint32_t> tx_masks_;
    std::unique_ptr<XorSpan> span_;
};

// Non-private scheme for N files and N*K virtual users that serves every
// demand vector in the restricted subset: per stack, the demands are a
// cyclic shift of (0, ..., N-1). Virtual users are addressed as
// (stack, position); the demand at position p of a stack shifted by c is
// (p - c) mod N.
class DrsScheme {
public:
    virtual ~DrsScheme() = default;

    virtual std::string name() const = 0;
    virtual uint32_t n_files() const = 0;   // N
    virtual uint32_t n_stacks() const = 0;  // K
    virtual uint64_t file_bits() const = 0;
    virtual uint64_t cache_bits() const = 0;
    virtual uint64_t payload_bits() const = 0;

    virtual std::vector<std::vector<BitString>> setup(const FileSet& files) const = 0;
    virtual BitString deliver(const FileSet& files, const std::vector<uint32_t>& shifts) const = 0;
    virtual BitString decode(uint32_t stack, uint32_t pos, const std::vector<uint32_t>& shifts,
                             const BitString& cache, const BitString& payload) const = 0;

    uint32_t demand_at(uint32_t stack, uint32_t pos, const std::vector<uint32_t>& shifts) const {
        uint32_t n = n_files();
        return (pos + n - shifts[stack] % n) % n;
    }
    void check_shifts(const std::vector<uint32_t>& shifts) const {
        if (shifts.size() != n_stacks()) throw DemandError("shift vector length != K");
        for (uint32_t c : shifts)
            if (c >= n_files()) throw DemandError("shift >= N");
    }
};

// The construction that turns the YMA scheme for N files and NK-K+1 users
// into a restricted-demand scheme for NK virtual users. The first stack is
// the YMA leader block; each later stack mixes N-1 YMA users with one
// extra user holding coded symbols over V_i = K'_0 u K'_i.
class YmaDrs : public DrsScheme {
public:
    YmaDrs(uint32_t n_files, uint32_t n_stacks, uint32_t r, uint64_t subfile_bits);

    std::string name() const override;
    uint32_t n_files() const override { return n_; }
    uint32_t n_stacks() const override { return k_; }
    uint64_t file_bits() const override { return yma_.file_bits(); }
    uint64_t cache_bits() const override;
    uint64_t payload_bits() const override;

    std::vector<std::vector<BitString>> setup(const FileSet& files) const override;
    BitString deliver(const FileSet& files, const std::vector<uint32_t>& shifts) const override;
    BitString decode(uint32_t stack, uint32_t pos, const std::vector<uint32_t>& shifts,
                     const BitString& cache, const BitString& payload) const override;

    // ---- exposed structure (used by tests) ----
    uint32_t ktil() const { return ktil_; }
    const YmaScheme& yma() const { return yma_; }
    uint32_t v_mask(uint32_t stack) const;  // V_i over the YMA ground set
    // YMA user demands induced by the shift vector.
    std::vector<uint32_t> u2_demands(const std::vector<uint32_t>& shifts) const;

    // Direct evaluation of the coded symbol Z^j_{i,S} from the files.
    BitString z_symbol(const FileSet& files, uint32_t stack, uint32_t s_mask, uint32_t file) const;
    // Recovery of a symbol whose label contains ground element 0 from the
    // extra user's cache alone (labels without 0 are stored directly).
    BitString recover_cached_z(const BitString& u1_cache, uint32_t stack, uint32_t s_mask,
                               uint32_t file) const;

private:
    uint64_t z_count() const;  // stored symbols per file at an extra user
    uint64_t z_offset(uint32_t s_mask, uint32_t file) const;
    BitString z_from_cache(const BitString& u1_cache, uint32_t stack, uint32_t s_mask,
                           uint32_t file) const;

    uint32_t n_, k_, r_, ktil_;
    YmaScheme yma_;
};

} // namespace pcc
