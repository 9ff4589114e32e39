#include "pcc/exact_k2.hpp"

#include <algorithm>
#include <numeric>

namespace pcc {

// ---------------------------------------------------------------------------
// SchemeD

SchemeD::SchemeD(uint32_t n_files, uint64_t l) : n_(n_files), l_(l) {
    if (n_ < 3) throw ParamError("schemeD: needs N > 2 (K = 2)");
    if (l_ == 0) throw ParamError("schemeD: l must be positive");
    for (int i = 0; i < 3; i++)
        pi_[i] = tape_.add_perm("pi" + std::to_string(i), i == 2 ? 3 : n_);
    for (int k = 0; k < 2; k++) {
        std::string sk = std::to_string(k);
        s1_[k] = tape_.add_uniform("s" + sk + "_1", n_);
        s2_[k] = tape_.add_uniform("s" + sk + "_2", n_);
        p1_[k] = tape_.add_uniform("p" + sk + "_1", 3);
        p2_[k] = tape_.add_uniform("p" + sk + "_2", 3);
    }
}

std::vector<CacheContent> SchemeD::place(const TapeValue& tape, const FileSet& files) const {
    if (files.n_files != n_ || files.file_bits != file_bits())
        throw ParamError("schemeD: file set shape mismatch");
    std::vector<CacheContent> out(2);
    for (uint32_t k = 0; k < 2; k++) {
        const Permutation& pi = tape.perm(pi_[k]);
        BitString main(n_ * l_);
        for (uint32_t i = 0; i < n_; i++)
            main.copy_slice(pi(i) * l_, files[i], k * l_, l_);
        out[k].main_bits = std::move(main);
        out[k].shared_random.add("s1", bit_width_for(n_), tape.u(s1_[k]));
        out[k].shared_random.add("s2", bit_width_for(n_), tape.u(s2_[k]));
        out[k].shared_random.add("p1", 2, tape.u(p1_[k]));
        out[k].shared_random.add("p2", 2, tape.u(p2_[k]));
    }
    return out;
}

Broadcast SchemeD::deliver(const TapeValue& tape, const FileSet& files,
                           const DemandVector& demands) const {
    check_inputs(files, demands);
    uint32_t d0 = demands[0], d1 = demands[1];
    uint32_t m = (d0 + 1) % n_;
    const Permutation& pi2 = tape.perm(pi_[2]);

    auto seg = [&](uint32_t i, uint32_t part) { return files[i].slice(part * l_, l_); };
    BitString x[3];
    if (d0 != d1) {
        x[0] = seg(d0, 1);
        x[0].xor_in(seg(d1, 0));
        x[1] = seg(d0, 2);
        x[2] = seg(d1, 2);
    } else {
        x[0] = seg(d0, 1);
        x[0].xor_in(seg(m, 0));
        x[1] = seg(d0, 2);
        x[2] = seg(d0, 0);
        x[2].xor_in(seg(m, 1));
    }
    Broadcast bc;
    bc.payload = BitString(3 * l_);
    for (uint32_t i = 0; i < 3; i++) bc.payload.copy_slice(pi2(i) * l_, x[i], 0, l_);

    uint32_t t[2][2];
    if (d0 != d1) {
        t[0][0] = pi2(0); t[0][1] = pi2(1);
        t[1][0] = pi2(0); t[1][1] = pi2(2);
    } else {
        t[0][0] = pi2(0); t[0][1] = pi2(1);
        t[1][0] = pi2(2); t[1][1] = pi2(1);
    }
    unsigned wn = bit_width_for(n_);
    for (uint32_t k = 0; k < 2; k++) {
        const Permutation& pik = tape.perm(pi_[k]);
        uint32_t dk = demands[k];
        uint32_t helper = d0 != d1 ? demands[1 - k] : m;
        bc.aux.add("j1", wn, (tape.u(s1_[k]) + pik(dk)) % n_);
        bc.aux.add("j2", 2, (tape.u(p1_[k]) + t[k][0]) % 3);
        bc.aux.add("j2", 2, (tape.u(p2_[k]) + t[k][1]) % 3);
        bc.aux.add("j3", wn, (tape.u(s2_[k]) + pik(helper)) % n_);
    }
    return bc;
}

BitString SchemeD::decode(uint32_t user, uint32_t demand, const CacheContent& cache,
                          const Broadcast& bc) const {
    if (user >= 2 || demand >= n_) throw ParamError("schemeD: bad user/demand");
    uint64_t s1 = cache.shared_random.get("s1");
    uint64_t s2 = cache.shared_random.get("s2");
    uint64_t p1 = cache.shared_random.get("p1");
    uint64_t p2 = cache.shared_random.get("p2");
    uint64_t pos_own = (bc.aux.get("j1", user) + n_ - s1) % n_;
    uint64_t t1 = (bc.aux.get("j2", 2 * user) + 3 - p1) % 3;
    uint64_t t2 = (bc.aux.get("j2", 2 * user + 1) + 3 - p2) % 3;
    uint64_t pos_helper = (bc.aux.get("j3", user) + n_ - s2) % n_;

    BitString out(file_bits());
    // own third straight from the cache
    out.copy_slice(user * l_, cache.main_bits, pos_own * l_, l_);
    // uncoded payload symbol
    out.copy_slice(2 * l_, bc.payload, t2 * l_, l_);
    // coded payload symbol, stripped with the hinted cache slot
    BitString other = bc.payload.slice(t1 * l_, l_);
    other.xor_slice(0, cache.main_bits, pos_helper * l_, l_);
    out.copy_slice((1 - user) * l_, other, 0, l_);
    return out;
}

// ---------------------------------------------------------------------------
// SchemeE

SchemeE::SchemeE(uint32_t n_files, uint64_t l)
    : n_(n_files), l_(l), rs_(3 * n_files - 2, 2 * n_files - 1) {
    if (n_ < 3) throw ParamError("schemeE: needs N > 2 (K = 2)");
    if (n_ > 86) throw ParamError("schemeE: 3N-2 must fit the byte field");
    if (l_ == 0) throw ParamError("schemeE: l must be positive");
    u0_ = tape_.add_uniform("u0", 3);
    u1sel_ = tape_.add_uniform("u1", 2);
    for (int k = 0; k < 2; k++) pi_[k] = tape_.add_perm("pi" + std::to_string(k), n_ * n_);
    for (int k = 0; k < 2; k++) {
        pads_[k] = tape_.size();
        for (uint32_t j = 1; j <= 2 * n_ - 1; j++)
            tape_.add_uniform("s" + std::to_string(k) + "_" + std::to_string(j),
                              static_cast<uint64_t>(n_) * n_);
        p_[k] = tape_.add_uniform("p" + std::to_string(k), 3);
    }
}

std::array<uint32_t, 2> SchemeE::draw_u(const TapeValue& tape) const {
    uint32_t u0 = static_cast<uint32_t>(tape.u(u0_));
    uint32_t others[2], w = 0;
    for (uint32_t c = 0; c < 3; c++)
        if (c != u0) others[w++] = c;
    return {u0, others[tape.u(u1sel_)]};
}

std::vector<BitString> SchemeE::coded_symbols(const BitString& file) const {
    std::vector<BitString> parts;
    parts.reserve(2 * n_ - 1);
    for (uint32_t m = 0; m < 2 * n_ - 1; m++)
        parts.push_back(file.slice(m * symbol_bits(), symbol_bits()));
    return rs_.encode_lanes(parts);
}

std::vector<CacheContent> SchemeE::place(const TapeValue& tape, const FileSet& files) const {
    if (files.n_files != n_ || files.file_bits != file_bits())
        throw ParamError("schemeE: file set shape mismatch");
    std::vector<std::vector<BitString>> syms;
    syms.reserve(n_);
    for (uint32_t i = 0; i < n_; i++) syms.push_back(coded_symbols(files[i]));
    auto u = draw_u(tape);

    std::vector<CacheContent> out(2);
    unsigned wn2 = bit_width_for(static_cast<uint64_t>(n_) * n_);
    for (uint32_t k = 0; k < 2; k++) {
        const Permutation& pi = tape.perm(pi_[k]);
        BitString main(static_cast<uint64_t>(n_) * n_ * symbol_bits());
        for (uint32_t i = 0; i < n_; i++)
            for (uint32_t j = 0; j < n_; j++) {
                const BitString& lane = j == 0 ? syms[i][0] : syms[i][symbol_pos(u[k], j)];
                main.copy_slice(pi(n_ * i + j) * symbol_bits(), lane, 0, symbol_bits());
            }
        out[k].main_bits = std::move(main);
        out[k].shared_random.add("u", 2, u[k]);
        for (uint32_t j = 1; j <= 2 * n_ - 1; j++)
            out[k].shared_random.add("s", wn2, tape.u(pads_[k] + j - 1));
        out[k].shared_random.add("p", 2, tape.u(p_[k]));
    }
    return out;
}

Broadcast SchemeE::deliver(const TapeValue& tape, const FileSet& files,
                           const DemandVector& demands) const {
    check_inputs(files, demands);
    uint32_t d0 = demands[0], d1 = demands[1];
    auto u = draw_u(tape);
    uint32_t v = 3 - u[0] - u[1];

    std::vector<std::vector<BitString>> syms;
    syms.reserve(n_);
    for (uint32_t i = 0; i < n_; i++) syms.push_back(coded_symbols(files[i]));

    Broadcast bc;
    bc.payload = BitString((n_ - 1) * symbol_bits());
    for (uint32_t t = 1; t <= n_ - 1; t++) {
        BitString sym = d0 != d1 ? syms[d0][symbol_pos(u[1], t)] : syms[d0][symbol_pos(v, t)];
        if (d0 != d1) {
            sym.xor_in(syms[d1][symbol_pos(u[0], t)]);
        } else {
            sym.xor_in(syms[(d0 + t) % n_][0]);
        }
        bc.payload.copy_slice((t - 1) * symbol_bits(), sym, 0, symbol_bits());
    }

    uint64_t n2 = static_cast<uint64_t>(n_) * n_;
    unsigned wn2 = bit_width_for(n2);
    for (uint32_t k = 0; k < 2; k++) {
        const Permutation& pik = tape.perm(pi_[k]);
        uint32_t dk = demands[k], dother = demands[1 - k];
        for (uint32_t j = 0; j < n_; j++)
            bc.aux.add("j1", wn2, (tape.u(pads_[k] + j) + pik(n_ * dk + j)) % n2);
        for (uint32_t j = 1; j <= n_ - 1; j++) {
            uint64_t h = d0 != d1 ? pik(n_ * dother + j) : pik(n_ * ((d0 + j) % n_));
            bc.aux.add("j2", wn2, (tape.u(pads_[k] + n_ + j - 1) + h) % n2);
        }
        uint32_t tk = d0 != d1 ? u[1 - k] : v;
        bc.aux.add("j3", 2, (tape.u(p_[k]) + tk) % 3);
    }
    return bc;
}

BitString SchemeE::decode(uint32_t user, uint32_t demand, const CacheContent& cache,
                          const Broadcast& bc) const {
    if (user >= 2 || demand >= n_) throw ParamError("schemeE: bad user/demand");
    uint32_t uk = static_cast<uint32_t>(cache.shared_random.get("u"));
    uint64_t n2 = static_cast<uint64_t>(n_) * n_;
    uint64_t sym = symbol_bits();

    uint32_t tk = static_cast<uint32_t>(
        (bc.aux.get("j3", user) + 3 - cache.shared_random.get("p")) % 3);
    if (tk == uk) throw AuxError("schemeE: helper bundle equals own bundle");

    std::vector<unsigned> positions;
    std::vector<BitString> lanes;
    positions.reserve(2 * n_ - 1);
    lanes.reserve(2 * n_ - 1);
    for (uint32_t j = 0; j < n_; j++) {
        uint64_t c = (bc.aux.get("j1", user * n_ + j) + n2 - cache.shared_random.get("s", j)) % n2;
        positions.push_back(symbol_pos(uk, j));
        lanes.push_back(cache.main_bits.slice(c * sym, sym));
    }
    for (uint32_t j = 1; j <= n_ - 1; j++) {
        uint64_t h = (bc.aux.get("j2", user * (n_ - 1) + j - 1) + n2 -
                      cache.shared_random.get("s", n_ + j - 1)) %
                     n2;
        BitString lane = bc.payload.slice((j - 1) * sym, sym);
        lane.xor_slice(0, cache.main_bits, h * sym, sym);
        positions.push_back(symbol_pos(tk, j));
        lanes.push_back(std::move(lane));
    }
    std::vector<BitString> parts = rs_.decode_lanes(positions, lanes);
    BitString out(file_bits());
    for (uint32_t m = 0; m < 2 * n_ - 1; m++) out.copy_slice(m * sym, parts[m], 0, sym);
    return out;
}

SchemePtr make_scheme_d(uint32_t n, uint64_t l) { return std::make_shared<SchemeD>(n, l); }
SchemePtr make_scheme_e(uint32_t n, uint64_t l) { return std::make_shared<SchemeE>(n, l); }

// ---------------------------------------------------------------------------
// Reduced statistics

std::map<std::array<uint32_t, 2>, uint64_t> scheme_d_hint_pair_counts(bool equal_demands,
                                                                      uint32_t k) {
    std::map<std::array<uint32_t, 2>, uint64_t> counts;
    std::vector<uint32_t> pi2{0, 1, 2};
    std::sort(pi2.begin(), pi2.end());
    do {
        uint32_t t1, t2;
        if (!equal_demands) {
            t1 = pi2[0];
            t2 = k == 0 ? pi2[1] : pi2[2];
        } else {
            t1 = k == 0 ? pi2[0] : pi2[2];
            t2 = pi2[1];
        }
        counts[{t1, t2}]++;
    } while (std::next_permutation(pi2.begin(), pi2.end()));
    return counts;
}

std::map<std::array<uint32_t, 4>, uint64_t> scheme_d_tuple_counts(uint32_t n, uint32_t k,
                                                                  uint32_t d0, uint32_t d1) {
    std::map<std::array<uint32_t, 4>, uint64_t> counts;
    uint32_t dk = k == 0 ? d0 : d1;
    uint32_t helper = d0 != d1 ? (k == 0 ? d1 : d0) : (d0 + 1) % n;
    std::vector<uint32_t> pik(n);
    std::iota(pik.begin(), pik.end(), 0);
    do {
        std::vector<uint32_t> pi2{0, 1, 2};
        do {
            uint32_t t1, t2;
            if (d0 != d1) {
                t1 = pi2[0];
                t2 = k == 0 ? pi2[1] : pi2[2];
            } else {
                t1 = k == 0 ? pi2[0] : pi2[2];
                t2 = pi2[1];
            }
            counts[{pik[dk], t1, t2, pik[helper]}]++;
        } while (std::next_permutation(pi2.begin(), pi2.end()));
    } while (std::next_permutation(pik.begin(), pik.end()));
    return counts;
}

std::map<std::vector<uint32_t>, uint64_t> scheme_e_position_counts(uint32_t n, uint32_t k,
                                                                   uint32_t d0, uint32_t d1) {
    std::map<std::vector<uint32_t>, uint64_t> counts;
    uint32_t dk = k == 0 ? d0 : d1;
    uint32_t dother = k == 0 ? d1 : d0;
    std::vector<uint32_t> pi(n * n);
    std::iota(pi.begin(), pi.end(), 0);
    do {
        std::vector<uint32_t> tuple;
        tuple.reserve(2 * n - 1);
        for (uint32_t j = 0; j < n; j++) tuple.push_back(pi[n * dk + j]);
        for (uint32_t j = 1; j <= n - 1; j++)
            tuple.push_back(d0 != d1 ? pi[n * dother + j] : pi[n * ((d0 + j) % n)]);
        counts[tuple]++;
    } while (std::next_permutation(pi.begin(), pi.end()));
    return counts;
}

std::map<uint32_t, uint64_t> scheme_e_t_counts(uint32_t k, uint32_t d0, uint32_t d1, uint32_t uk) {
    std::map<uint32_t, uint64_t> counts;
    for (uint32_t u0 = 0; u0 < 3; u0++)
        for (uint32_t u1 = 0; u1 < 3; u1++) {
            if (u1 == u0) continue;
            uint32_t uks = k == 0 ? u0 : u1;
            if (uks != uk) continue;
            uint32_t v = 3 - u0 - u1;
            uint32_t tk = d0 != d1 ? (k == 0 ? u1 : u0) : v;
            counts[tk]++;
        }
    return counts;
}

} // namespace pcc
