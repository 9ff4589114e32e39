#include "pcc/direct.hpp"

#include <numeric>

namespace pcc {

namespace {

inline uint32_t compress_remove(uint32_t mask, uint32_t v) {
    return ((mask >> (v + 1)) << v) | (mask & ((1u << v) - 1));
}
// Spread a mask over positions skipping v (v stays clear).
inline uint32_t expand_skip(uint32_t mask, uint32_t v) {
    return ((mask >> v) << (v + 1)) | (mask & ((1u << v) - 1));
}
inline uint32_t expand_insert(uint32_t mask, uint32_t v) { return expand_skip(mask, v) | (1u << v); }

uint64_t pow_checked(uint64_t base, uint32_t e) {
    uint64_t r = 1;
    for (uint32_t i = 0; i < e; i++) {
        if (base != 0 && r > UINT64_MAX / base) throw ParamError("size overflow");
        r *= base;
    }
    return r;
}

} // namespace

// ---------------------------------------------------------------------------
// SchemeB

SchemeB::SchemeB(uint32_t n_files, uint32_t n_users, uint64_t m_num, uint64_t m_den, uint64_t l)
    : n_(n_files), k_(n_users), l_(l) {
    if (n_ == 0 || k_ == 0 || l_ == 0 || m_den == 0) throw ParamError("schemeB: bad parameters");
    if (m_num > m_den * n_) throw ParamError("schemeB: memory must satisfy 0 <= M <= N");
    // M/N = p/q in lowest terms.
    uint64_t fn = m_num, fd = m_den * n_;
    uint64_t g = std::gcd(fn, fd);
    p_ = fn / g;
    q_ = fd / g;
    if (randomized()) {
        for (uint32_t k = 0; k < k_; k++) tape_.add_uniform("s" + std::to_string(k), k_);
        sigma_comp_ = tape_.add_perm("sigma", k_);
        filler_comp_ = sigma_comp_ + 1;
        uint64_t filler_bits = static_cast<uint64_t>(k_) * uncached_bits();
        for (uint64_t b = 0; b < filler_bits; b++) tape_.add_uniform("f", 2);
    }
}

std::vector<CacheContent> SchemeB::place(const TapeValue& tape, const FileSet& files) const {
    if (files.n_files != n_ || files.file_bits != file_bits())
        throw ParamError("schemeB: file set shape mismatch");
    CacheContent proto;
    BitWriter w(static_cast<uint64_t>(n_) * cached_bits());
    for (uint32_t i = 0; i < n_; i++) w.put(files[i].slice(0, cached_bits()));
    proto.main_bits = w.finish();
    std::vector<CacheContent> out(k_, proto);
    if (randomized()) {
        for (uint32_t k = 0; k < k_; k++)
            out[k].shared_random.add("s", bit_width_for(k_), tape.u(k));
    }
    return out;
}

Broadcast SchemeB::deliver(const TapeValue& tape, const FileSet& files,
                           const DemandVector& demands) const {
    check_inputs(files, demands);
    Broadcast bc;
    uint64_t u_bits = uncached_bits();
    if (!randomized()) {
        // Everyone gets everything; nothing demand-dependent is sent.
        BitWriter w(static_cast<uint64_t>(n_) * u_bits);
        for (uint32_t i = 0; i < n_; i++) w.put(files[i].slice(cached_bits(), u_bits));
        bc.payload = w.finish();
        return bc;
    }
    // Distinct demanded files take slots sigma(0), sigma(1), ... in first-
    // occurrence order; exactly the inductive uniform slot draw.
    const Permutation& sigma = tape.perm(sigma_comp_);
    std::vector<int> slot_file(k_, -1);
    std::vector<uint32_t> slot_of_file(n_, 0);
    std::vector<bool> seen(n_, false);
    uint32_t next_rank = 0;
    for (uint32_t i = 0; i < k_; i++) {
        if (!seen[demands[i]]) {
            seen[demands[i]] = true;
            uint32_t slot = sigma(next_rank++);
            slot_file[slot] = static_cast<int>(demands[i]);
            slot_of_file[demands[i]] = slot;
        }
    }
    BitString payload(static_cast<uint64_t>(k_) * u_bits);
    for (uint32_t j = 0; j < k_; j++) {
        if (slot_file[j] >= 0) {
            payload.copy_slice(j * u_bits, files[static_cast<uint32_t>(slot_file[j])],
                               cached_bits(), u_bits);
        } else {
            for (uint64_t b = 0; b < u_bits; b++)
                payload.set(j * u_bits + b, tape.u(filler_comp_ + j * u_bits + b) != 0);
        }
    }
    bc.payload = std::move(payload);
    unsigned w = bit_width_for(k_);
    for (uint32_t k = 0; k < k_; k++)
        bc.aux.add("q", w, (slot_of_file[demands[k]] + tape.u(k)) % k_);
    return bc;
}

BitString SchemeB::decode(uint32_t user, uint32_t demand, const CacheContent& cache,
                          const Broadcast& bc) const {
    if (user >= k_ || demand >= n_) throw ParamError("schemeB: bad user/demand");
    uint64_t u_bits = uncached_bits();
    BitString out(file_bits());
    out.copy_slice(0, cache.main_bits, static_cast<uint64_t>(demand) * cached_bits(),
                   cached_bits());
    uint64_t slot;
    if (!randomized()) {
        slot = demand;
    } else {
        uint64_t sk = cache.shared_random.get("s");
        slot = (bc.aux.get("q", user) + k_ - sk) % k_;
    }
    out.copy_slice(cached_bits(), bc.payload, slot * u_bits, u_bits);
    return out;
}

// ---------------------------------------------------------------------------
// SchemeC

SchemeC::SchemeC(uint32_t n_files, uint32_t n_users, uint32_t t, uint64_t r_num, uint64_t r_den,
                 uint64_t l)
    : n_(n_files), k_(n_users), t_(t), nk_(n_files * n_users), l_(l) {
    if (n_ < 2 || k_ < 1 || l_ == 0 || r_den == 0) throw ParamError("schemeC: bad parameters");
    if (nk_ > 25) throw ParamError("schemeC: NK too large for subset labels");
    if (t_ < 1 || t_ > nk_ - 1) throw ParamError("schemeC: t must be in [1, NK-1]");
    uint64_t g = std::gcd(r_num, r_den);
    r_num_ = r_num / g;
    r_den_ = r_den / g;
    if (r_num_ < r_den_ || r_num_ > r_den_ * (n_ - 1))
        throw ParamError("schemeC: r must satisfy 1 <= r <= N-1");
    uint64_t need = pow_checked(r_den_, nk_ - t_ - 1) * (n_ - 1);
    if (l_ % need != 0)
        throw DivisibilityError("schemeC: l must be a multiple of r_den^(NK-t-1)*(N-1) = " +
                                std::to_string(need));

    seg_bits_.assign(nk_ + 1, 0);
    group_base_.assign(nk_ + 1, 0);
    cache_group_base_.assign(nk_ + 1, 0);
    kappa_.assign(nk_ + 1, 0);
    block_base_.assign(nk_ + 1, 0);
    uint64_t off = 0, cache_off = 0;
    for (uint32_t s = t_; s <= nk_ - 1; s++) {
        uint32_t e = nk_ - s - 1;
        uint64_t num = pow_checked(r_num_, e);
        uint64_t den = pow_checked(r_den_, e);
        uint64_t scaled = l_ / den * num;
        if ((l_ % den) * num % den != 0) throw DivisibilityError("schemeC: non-integral segment");
        seg_bits_[s] = scaled + (l_ % den) * num / den;
        group_base_[s] = off;
        off += binom_u64(nk_, s) * seg_bits_[s];
        cache_group_base_[s] = cache_off;
        cache_off += static_cast<uint64_t>(n_) * binom_u64(nk_ - 1, s - 1) * seg_bits_[s];
    }
    file_bits_ = off;

    for (uint32_t k = 0; k < k_; k++) tape_.add_uniform("s" + std::to_string(k), n_);
    perm_comp_base_ = tape_.size();
    uint64_t poff = 0;
    for (uint32_t s = t_ + 1; s <= nk_ - 1; s++) {
        kappa_[s] = binom_u64(nk_, s) - binom_u64(nk_ - k_, s);
        tape_.add_perm("pi" + std::to_string(s), kappa_[s]);
        block_base_[s] = poff;
        poff += kappa_[s] * seg_bits_[s - 1];
    }
    pad_comp_base_ = tape_.size();
    for (uint32_t s = t_ + 1; s <= nk_ - 1; s++) {
        uint64_t count = binom_u64(nk_, s);
        for (uint64_t i = 0; i < count; i++) tape_.add_uniform("sp", kappa_[s]);
    }
}

uint64_t SchemeC::segment_offset(uint32_t mask) const {
    uint32_t s = popcount32(mask);
    return group_base_[s] + colex_rank(mask) * seg_bits_[s];
}

uint64_t SchemeC::cache_main_bits() const {
    uint64_t bits = 0;
    for (uint32_t s = t_; s <= nk_ - 1; s++)
        bits += static_cast<uint64_t>(n_) * binom_u64(nk_ - 1, s - 1) * seg_bits_[s];
    return bits;
}

uint64_t SchemeC::payload_bits() const {
    uint64_t bits = seg_bits_[nk_ - 1];  // the whole-index-set symbol
    for (uint32_t s = t_ + 1; s <= nk_ - 1; s++) bits += kappa_[s] * seg_bits_[s - 1];
    return bits;
}

uint64_t SchemeC::pad_rank(uint32_t mask) const {
    uint64_t rank = 0;
    for (uint32_t s = t_ + 1; s < popcount32(mask); s++) rank += binom_u64(nk_, s);
    return rank + colex_rank(mask);
}

uint64_t SchemeC::cached_pad_rank(uint32_t v, uint32_t mask) const {
    uint64_t rank = 0;
    for (uint32_t s = t_ + 1; s < popcount32(mask); s++) rank += binom_u64(nk_ - 1, s - 1);
    return rank + colex_rank(compress_remove(mask, v));
}

std::vector<uint32_t> SchemeC::expanded_demand(const std::vector<uint32_t>& keys,
                                               const DemandVector& demands) const {
    std::vector<uint32_t> dbar(nk_);
    for (uint32_t k = 0; k < k_; k++) {
        uint32_t shift = (keys[k] + n_ - demands[k]) % n_;
        for (uint32_t i = 0; i < n_; i++) dbar[k * n_ + i] = (i + n_ - shift) % n_;
    }
    return dbar;
}

BitString SchemeC::y_symbol(const FileSet& files, const std::vector<uint32_t>& dbar,
                            uint32_t mask) const {
    uint64_t len = seg_bits_[popcount32(mask) - 1];
    BitString y(len);
    for_members(mask, [&](unsigned u) {
        y.xor_slice(0, files[dbar[u]], segment_offset(mask & ~(1u << u)), len);
    });
    return y;
}

BitString SchemeC::wr_prefix_from_files(const FileSet& files, uint32_t mask) const {
    uint32_t s = popcount32(mask);
    uint64_t seg = seg_bits_[s];
    uint64_t remaining = seg_bits_[s - 1];
    uint64_t seg_off = segment_offset(mask);
    BitString pref(remaining);
    uint64_t pos = 0;
    for (uint32_t c = 0; c + 1 < n_ && remaining > 0; c++) {
        uint64_t take = remaining < seg ? remaining : seg;
        pref.xor_slice(pos, files[c], seg_off, take);
        pref.xor_slice(pos, files[c + 1], seg_off, take);
        pos += take;
        remaining -= take;
    }
    return pref;
}

BitString SchemeC::v_symbol(const FileSet& files, const std::vector<uint32_t>& dbar,
                            uint32_t mask) const {
    BitString v = y_symbol(files, dbar, mask);
    v.xor_in(wr_prefix_from_files(files, mask));
    return v;
}

std::vector<CacheContent> SchemeC::place(const TapeValue& tape, const FileSet& files) const {
    if (files.n_files != n_ || files.file_bits != file_bits_)
        throw ParamError("schemeC: file set shape mismatch");
    std::vector<CacheContent> out(k_);
    for (uint32_t k = 0; k < k_; k++) {
        uint32_t v = k * n_ + static_cast<uint32_t>(tape.u(k));
        BitWriter w(cache_main_bits());
        for (uint32_t s = t_; s <= nk_ - 1; s++) {
            for (uint32_t i = 0; i < n_; i++)
                for (uint32_t sub : subsets_of_size(nk_ - 1, s - 1))
                    w.put(files[i].slice(segment_offset(expand_insert(sub, v)), seg_bits_[s]));
        }
        out[k].main_bits = w.finish();
        out[k].shared_random.add("s", bit_width_for(n_), tape.u(k));
        for (uint32_t s = t_ + 1; s <= nk_ - 1; s++) {
            unsigned width = bit_width_for(kappa_[s]);
            for (uint32_t sub : subsets_of_size(nk_ - 1, s - 1)) {
                uint32_t mask = expand_insert(sub, v);
                out[k].shared_random.add("sp", width,
                                         tape.u(pad_comp_base_ + pad_rank(mask)));
            }
        }
    }
    return out;
}

Broadcast SchemeC::deliver(const TapeValue& tape, const FileSet& files,
                           const DemandVector& demands) const {
    check_inputs(files, demands);
    std::vector<uint32_t> keys(k_);
    uint32_t l_mask = 0;
    for (uint32_t k = 0; k < k_; k++) {
        keys[k] = static_cast<uint32_t>(tape.u(k));
        l_mask |= 1u << (k * n_ + keys[k]);
    }
    std::vector<uint32_t> dbar = expanded_demand(keys, demands);

    Broadcast bc;
    BitString payload(payload_bits());
    unsigned cw = bit_width_for(n_);
    for (uint32_t k = 0; k < k_; k++)
        bc.aux.add("c", cw, (keys[k] + n_ - demands[k]) % n_);
    for (uint32_t s = t_ + 1; s <= nk_ - 1; s++) {
        const Permutation& pi = tape.perm(perm_comp_base_ + (s - t_ - 1));
        unsigned width = bit_width_for(kappa_[s]);
        uint64_t symbol_len = seg_bits_[s - 1];
        uint32_t tau_idx = 0;
        for (uint32_t mask : subsets_of_size(nk_, s)) {
            uint64_t pad = tape.u(pad_comp_base_ + pad_rank(mask));
            if (mask & l_mask) {
                uint32_t alpha = pi(tau_idx++);
                payload.copy_slice(block_base_[s] + alpha * symbol_len,
                                   v_symbol(files, dbar, mask), 0, symbol_len);
                bc.aux.add("pa", width, (pad + alpha) % kappa_[s]);
            } else {
                // Slot kept for subsets outside tau: a bare pad, uniform to
                // every user, so the aux layout does not reveal the key set.
                bc.aux.add("pa", width, pad);
            }
        }
    }
    uint32_t full = (1u << nk_) - 1;
    payload.copy_slice(payload_bits() - seg_bits_[nk_ - 1], y_symbol(files, dbar, full), 0,
                       seg_bits_[nk_ - 1]);
    bc.payload = std::move(payload);
    return bc;
}

BitString SchemeC::decode(uint32_t user, uint32_t demand, const CacheContent& cache,
                          const Broadcast& bc) const {
    if (user >= k_ || demand >= n_) throw ParamError("schemeC: bad user/demand");
    uint32_t sk = static_cast<uint32_t>(cache.shared_random.get("s"));
    uint32_t v = user * n_ + sk;
    std::vector<uint32_t> cbar(k_);
    for (uint32_t k = 0; k < k_; k++) cbar[k] = static_cast<uint32_t>(bc.aux.get("c", k));
    std::vector<uint32_t> dbar(nk_);
    for (uint32_t k = 0; k < k_; k++)
        for (uint32_t i = 0; i < n_; i++) dbar[k * n_ + i] = (i + n_ - cbar[k]) % n_;

    auto cache_seg_off = [&](uint32_t file, uint32_t mask) {
        uint32_t s = popcount32(mask);
        return cache_group_base_[s] +
               (file * binom_u64(nk_ - 1, s - 1) + colex_rank(compress_remove(mask, v))) *
                   seg_bits_[s];
    };

    BitString out(file_bits_);
    // Segments whose label contains the own virtual index sit in the cache.
    for (uint32_t s = t_; s <= nk_ - 1; s++)
        for (uint32_t sub : subsets_of_size(nk_ - 1, s - 1)) {
            uint32_t mask = expand_insert(sub, v);
            out.copy_slice(segment_offset(mask), cache.main_bits, cache_seg_off(demand, mask),
                           seg_bits_[s]);
        }
    // Top group: one segment is missing; peel it off the unpermuted symbol.
    {
        uint32_t full = (1u << nk_) - 1;
        uint32_t miss = full & ~(1u << v);
        uint64_t len = seg_bits_[nk_ - 1];
        BitString val = bc.payload.slice(payload_bits() - len, len);
        for_members(miss, [&](unsigned u) {
            val.xor_slice(0, cache.main_bits, cache_seg_off(dbar[u], full & ~(1u << u)), len);
        });
        out.copy_slice(segment_offset(miss), val, 0, len);
    }
    // Remaining groups: locate the masked symbol through the pad hint, then
    // strip the prefix mask and the cached cross terms.
    for (uint32_t j = t_; j <= nk_ - 2; j++) {
        uint32_t s = j + 1;
        uint64_t len = seg_bits_[j];
        for (uint32_t sub : subsets_of_size(nk_ - 1, j)) {
            uint32_t mask = expand_skip(sub, v);  // size j, v not a member
            uint32_t plus = mask | (1u << v);
            uint64_t pad = cache.shared_random.get("sp", cached_pad_rank(v, plus));
            uint64_t field = bc.aux.get("pa", pad_rank(plus));
            uint64_t alpha = (field + kappa_[s] - pad) % kappa_[s];
            BitString val = bc.payload.slice(block_base_[s] + alpha * len, len);
            // prefix of the adjacent-file difference chain, from the cache
            uint64_t remaining = len, pos = 0;
            for (uint32_t c = 0; c + 1 < n_ && remaining > 0; c++) {
                uint64_t take = remaining < seg_bits_[s] ? remaining : seg_bits_[s];
                val.xor_slice(pos, cache.main_bits, cache_seg_off(c, plus), take);
                val.xor_slice(pos, cache.main_bits, cache_seg_off(c + 1, plus), take);
                pos += take;
                remaining -= take;
            }
            for_members(mask, [&](unsigned u) {
                val.xor_slice(0, cache.main_bits, cache_seg_off(dbar[u], plus & ~(1u << u)), len);
            });
            out.copy_slice(segment_offset(mask), val, 0, len);
        }
    }
    return out;
}

SchemePtr make_scheme_b(uint32_t n, uint32_t k, uint64_t m_num, uint64_t m_den, uint64_t l) {
    return std::make_shared<SchemeB>(n, k, m_num, m_den, l);
}
SchemePtr make_scheme_c(uint32_t n, uint32_t k, uint32_t t, uint64_t r_num, uint64_t r_den,
                        uint64_t l) {
    return std::make_shared<SchemeC>(n, k, t, r_num, r_den, l);
}

} // namespace pcc
