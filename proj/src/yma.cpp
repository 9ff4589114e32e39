#include "pcc/yma.hpp"

#include <algorithm>

namespace pcc {

namespace {

// Removes position v from a mask, shifting higher bits down.
inline uint32_t compress_remove(uint32_t mask, uint32_t v) {
    return ((mask >> (v + 1)) << v) | (mask & ((1u << v) - 1));
}
// Inverse: re-inserts position v (set) into a compressed mask.
inline uint32_t expand_insert(uint32_t mask, uint32_t v) {
    return ((mask >> v) << (v + 1)) | (mask & ((1u << v) - 1)) | (1u << v);
}

} // namespace

YmaScheme::YmaScheme(Params p) : p_(p) {
    if (p_.n_files == 0 || p_.n_users == 0 || p_.subfile_bits == 0)
        throw ParamError("yma: N, Ktil, l must be positive");
    if (p_.n_users > 25) throw ParamError("yma: user count too large for subset masks");
    if (p_.r > p_.n_users) throw ParamError("yma: r out of range");
    n_subfiles_ = binom_u64(p_.n_users, p_.r);
}

uint64_t YmaScheme::cache_bits() const {
    if (p_.r == 0) return 0;
    return p_.n_files * binom_u64(p_.n_users - 1, p_.r - 1) * p_.subfile_bits;
}

uint64_t YmaScheme::payload_bits(uint32_t n_distinct) const {
    uint64_t total = binom_u64(p_.n_users, p_.r + 1);
    uint64_t skipped = binom_u64(p_.n_users - n_distinct, p_.r + 1);
    return (total - skipped) * p_.subfile_bits;
}

uint64_t YmaScheme::cache_offset(uint32_t user, uint32_t file, uint32_t mask) const {
    uint64_t per_file = binom_u64(p_.n_users - 1, p_.r - 1);
    return (file * per_file + colex_rank(compress_remove(mask, user))) * p_.subfile_bits;
}

std::vector<BitString> YmaScheme::setup(const FileSet& files) const {
    if (files.n_files != p_.n_files || files.file_bits != file_bits())
        throw ParamError("yma: file set shape mismatch");
    std::vector<BitString> caches;
    caches.reserve(p_.n_users);
    for (uint32_t m = 0; m < p_.n_users; m++) {
        BitWriter w(cache_bits());
        if (p_.r > 0) {
            for (uint32_t i = 0; i < p_.n_files; i++) {
                for (uint32_t sub : subsets_of_size(p_.n_users - 1, p_.r - 1)) {
                    uint32_t mask = expand_insert(sub, m);
                    w.put(files[i].slice(subfile_offset(mask), p_.subfile_bits));
                }
            }
        }
        caches.push_back(w.finish());
    }
    return caches;
}

std::vector<uint32_t> YmaScheme::transmitted_masks(uint32_t leaders_mask) const {
    std::vector<uint32_t> out;
    for (uint32_t mask : subsets_of_size(p_.n_users, p_.r + 1))
        if (mask & leaders_mask) out.push_back(mask);
    return out;
}

void YmaScheme::check_leaders(const std::vector<uint32_t>& demands, SubsetLabel leaders) const {
    if (demands.size() != p_.n_users) throw DemandError("yma: demand vector length != Ktil");
    for (uint32_t d : demands)
        if (d >= p_.n_files) throw DemandError("yma: demand index >= N");
    std::vector<bool> led(p_.n_files, false);
    for (unsigned u : leaders.members()) {
        if (u >= p_.n_users) throw DemandError("yma: leader outside user set");
        if (led[demands[u]]) throw DemandError("yma: two leaders demand the same file");
        led[demands[u]] = true;
    }
    for (uint32_t d : demands)
        if (!led[d]) throw DemandError("yma: leaders do not cover all distinct demands");
}

BitString YmaScheme::eval_y(const FileSet& files, const std::vector<uint32_t>& demands,
                            uint32_t r_mask) const {
    BitString y(p_.subfile_bits);
    for_members(r_mask, [&](unsigned u) {
        y.xor_slice(0, files[demands[u]], subfile_offset(r_mask & ~(1u << u)), p_.subfile_bits);
    });
    return y;
}

BitString YmaScheme::deliver(const FileSet& files, const std::vector<uint32_t>& demands,
                             SubsetLabel leaders) const {
    check_leaders(demands, leaders);
    std::vector<uint32_t> tx = transmitted_masks(leaders.mask);
    BitWriter w(tx.size() * p_.subfile_bits);
    for (uint32_t mask : tx) w.put(eval_y(files, demands, mask));
    return w.finish();
}

YmaSymbolResolver::YmaSymbolResolver(const YmaScheme& s, const BitString& payload,
                                     const std::vector<uint32_t>& demands, uint32_t leaders_mask)
    : s_(s), payload_(payload), demands_(demands), leaders_mask_(leaders_mask),
      tx_masks_(s.transmitted_masks(leaders_mask)) {}

size_t YmaSymbolResolver::atom(uint32_t file, uint32_t submask) const {
    return file * s_.n_subfiles_ + colex_rank(submask);
}

XorSpan::Mask YmaSymbolResolver::symbol_coeffs(uint32_t mask) const {
    XorSpan::Mask coeffs((s_.p_.n_files * s_.n_subfiles_ + 63) / 64, 0);
    for_members(mask, [&](unsigned u) {
        XorSpan::mask_set(coeffs, atom(demands_[u], mask & ~(1u << u)));
    });
    return coeffs;
}

BitString YmaSymbolResolver::get(uint32_t mask) {
    uint64_t ylen = s_.p_.subfile_bits;
    if (mask & leaders_mask_) {
        auto it = std::lower_bound(tx_masks_.begin(), tx_masks_.end(), mask);
        return payload_.slice(static_cast<uint64_t>(it - tx_masks_.begin()) * ylen, ylen);
    }
    if (!span_) {
        span_ = std::make_unique<XorSpan>(s_.p_.n_files * s_.n_subfiles_);
        for (size_t i = 0; i < tx_masks_.size(); i++)
            span_->add(symbol_coeffs(tx_masks_[i]), payload_.slice(i * ylen, ylen));
    }
    auto val = span_->express(symbol_coeffs(mask), ylen);
    if (!val) throw DecodeError("yma: symbol not in transmitted span (leader-set misuse)");
    return *val;
}

BitString YmaScheme::recover_symbol(const BitString& payload, const std::vector<uint32_t>& demands,
                                    SubsetLabel leaders, uint32_t target_mask) const {
    check_leaders(demands, leaders);
    if (popcount32(target_mask) != p_.r + 1) throw ParamError("yma: target must have r+1 members");
    YmaSymbolResolver resolver(*this, payload, demands, leaders.mask);
    return resolver.get(target_mask);
}

BitString YmaScheme::decode(uint32_t user, uint32_t demand, const BitString& cache,
                            const BitString& payload, const std::vector<uint32_t>& demands,
                            SubsetLabel leaders) const {
    check_leaders(demands, leaders);
    if (user >= p_.n_users || demand >= p_.n_files) throw ParamError("yma: bad user/demand");
    YmaSymbolResolver resolver(*this, payload, demands, leaders.mask);
    BitString out(file_bits());
    for (uint32_t mask : subsets_of_size(p_.n_users, p_.r)) {
        if ((mask >> user) & 1) {
            out.copy_slice(subfile_offset(mask), cache, cache_offset(user, demand, mask),
                           p_.subfile_bits);
        } else {
            uint32_t plus = mask | (1u << user);
            BitString val = resolver.get(plus);
            for_members(mask, [&](unsigned u) {
                val.xor_slice(0, cache, cache_offset(user, demands[u], plus & ~(1u << u)),
                              p_.subfile_bits);
            });
            out.copy_slice(subfile_offset(mask), val, 0, p_.subfile_bits);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// YmaDrs

YmaDrs::YmaDrs(uint32_t n_files, uint32_t n_stacks, uint32_t r, uint64_t subfile_bits)
    : n_(n_files), k_(n_stacks), r_(r), ktil_(n_files * n_stacks - n_stacks + 1),
      yma_({n_files, n_files * n_stacks - n_stacks + 1, r, subfile_bits}) {
    if (n_ < 1 || k_ < 1) throw ParamError("drs: N, K must be positive");
    if (r_ > ktil_) throw ParamError("drs: r out of range");
}

std::string YmaDrs::name() const { return "drs-yma"; }

uint64_t YmaDrs::cache_bits() const { return yma_.cache_bits(); }

uint64_t YmaDrs::payload_bits() const { return yma_.payload_bits(n_); }

uint32_t YmaDrs::v_mask(uint32_t stack) const {
    uint32_t k0 = (1u << n_) - 1;
    if (stack == 0) return k0;
    uint32_t lo = stack * (n_ - 1) + 1;
    uint32_t hi = (stack + 1) * (n_ - 1);  // inclusive
    uint32_t ki = ((1u << (hi + 1)) - 1) ^ ((1u << lo) - 1);
    return k0 | ki;
}

std::vector<uint32_t> YmaDrs::u2_demands(const std::vector<uint32_t>& shifts) const {
    std::vector<uint32_t> d(ktil_);
    for (uint32_t j = 0; j < ktil_; j++) {
        if (j < n_) {
            d[j] = demand_at(0, j, shifts);
        } else {
            uint32_t stack = (j - 1) / (n_ - 1);
            uint32_t pos = (j - 1) % (n_ - 1);
            d[j] = demand_at(stack, pos, shifts);
        }
    }
    return d;
}

uint64_t YmaDrs::z_count() const { return r_ == 0 ? 0 : binom_u64(ktil_ - 1, r_ - 1); }

uint64_t YmaDrs::z_offset(uint32_t s_mask, uint32_t file) const {
    return (file * z_count() + colex_rank(s_mask >> 1)) * yma_.params().subfile_bits;
}

BitString YmaDrs::z_symbol(const FileSet& files, uint32_t stack, uint32_t s_mask,
                              uint32_t file) const {
    uint64_t l = yma_.params().subfile_bits;
    BitString z(l);
    for_members(v_mask(stack) & ~s_mask, [&](unsigned u) {
        z.xor_slice(0, files[file], yma_.subfile_offset(s_mask | (1u << u)), l);
    });
    return z;
}

BitString YmaDrs::recover_cached_z(const BitString& u1_cache, uint32_t stack, uint32_t s_mask,
                                      uint32_t file) const {
    if (!(s_mask & 1))
        throw ParamError("drs: label lacks ground element 0; symbol is stored directly");
    uint32_t without0 = s_mask & ~1u;
    uint64_t l = yma_.params().subfile_bits;
    BitString z(l);
    // The double-sum term of the expansion cancels pairwise, leaving a
    // plain XOR of directly stored symbols.
    for_members(v_mask(stack) & ~s_mask, [&](unsigned t) {
        z.xor_slice(0, u1_cache, z_offset(without0 | (1u << t), file), l);
    });
    return z;
}

BitString YmaDrs::z_from_cache(const BitString& u1_cache, uint32_t stack, uint32_t s_mask,
                                  uint32_t file) const {
    if (s_mask & 1) return recover_cached_z(u1_cache, stack, s_mask, file);
    uint64_t l = yma_.params().subfile_bits;
    return u1_cache.slice(z_offset(s_mask, file), l);
}

std::vector<std::vector<BitString>> YmaDrs::setup(const FileSet& files) const {
    std::vector<BitString> u2 = yma_.setup(files);
    std::vector<std::vector<BitString>> caches(k_, std::vector<BitString>(n_));
    for (uint32_t j = 0; j < n_; j++) caches[0][j] = u2[j];
    for (uint32_t stack = 1; stack < k_; stack++) {
        for (uint32_t pos = 0; pos + 1 < n_; pos++)
            caches[stack][pos] = u2[stack * (n_ - 1) + 1 + pos];
        BitWriter w(cache_bits());
        if (r_ > 0) {
            for (uint32_t file = 0; file < n_; file++)
                for (uint32_t sub : subsets_of_size(ktil_ - 1, r_ - 1))
                    w.put(z_symbol(files, stack, sub << 1, file));
        }
        caches[stack][n_ - 1] = w.finish();
    }
    return caches;
}

BitString YmaDrs::deliver(const FileSet& files, const std::vector<uint32_t>& shifts) const {
    check_shifts(shifts);
    return yma_.deliver(files, u2_demands(shifts), SubsetLabel((1u << n_) - 1, ktil_));
}

BitString YmaDrs::decode(uint32_t stack, uint32_t pos, const std::vector<uint32_t>& shifts,
                            const BitString& cache, const BitString& payload) const {
    check_shifts(shifts);
    if (stack >= k_ || pos >= n_) throw ParamError("drs: bad stack/position");
    std::vector<uint32_t> d2 = u2_demands(shifts);
    SubsetLabel leaders((1u << n_) - 1, ktil_);
    if (stack == 0 || pos + 1 < n_) {
        uint32_t j = stack == 0 ? pos : stack * (n_ - 1) + 1 + pos;
        return yma_.decode(j, demand_at(stack, pos, shifts), cache, payload, d2, leaders);
    }
    // Extra user of this stack: combine stored/recovered coded symbols with
    // transmitted/recovered Y symbols.
    YmaSymbolResolver resolver(yma_, payload, d2, leaders.mask);
    uint64_t l = yma_.params().subfile_bits;
    BitString out(file_bits());
    for (uint32_t mask : subsets_of_size(ktil_, r_)) {
        BitString val(l);
        for_members(mask, [&](unsigned u) {
            val.xor_in(z_from_cache(cache, stack, mask & ~(1u << u), d2[u]));
        });
        for_members(v_mask(stack) & ~mask, [&](unsigned u) {
            val.xor_in(resolver.get(mask | (1u << u)));
        });
        out.copy_slice(yma_.subfile_offset(mask), val, 0, l);
    }
    return out;
}

} // namespace pcc
