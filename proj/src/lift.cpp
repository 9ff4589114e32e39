#include "pcc/lift.hpp"

#include "pcc/gf2.hpp"

namespace pcc {

// Atom bit a = 3*file + segment over (A1,A2,A3,B1,B2,B3).
namespace {

constexpr uint8_t kCache[2][2] = {
    {0x09, 0x24},  // A1^B1, A3^B3
    {0x12, 0x3f},  // A2^B2, A1^A2^A3^B1^B2^B3
};

constexpr uint8_t kTx[2][2][4] = {
    {{0x08, 0x10, 0x04, 0x07},   // (0,0): B1, B2, A3, A1^A2^A3
     {0x02, 0x04, 0x08, 0x38}},  // (0,1): A2, A3, B1, B1^B2^B3
    {{0x10, 0x20, 0x01, 0x07},   // (1,0): B2, B3, A1, A1^A2^A3
     {0x01, 0x02, 0x20, 0x38}},  // (1,1): A1, A2, B3, B1^B2^B3
};

} // namespace

Example1Drs::Example1Drs(uint64_t segment_bits) : l_(segment_bits) {
    if (l_ == 0) throw ParamError("example1: segment size must be positive");
}

uint8_t Example1Drs::cache_pattern(uint32_t stack, uint32_t pos) { return kCache[stack][pos]; }
const uint8_t* Example1Drs::tx_pattern(uint32_t p, uint32_t q) { return kTx[p][q]; }

BitString Example1Drs::combine(const FileSet& files, uint8_t atom_mask) const {
    BitString out(l_);
    for_members(atom_mask, [&](unsigned a) {
        out.xor_slice(0, files[a / 3], (a % 3) * l_, l_);
    });
    return out;
}

std::vector<std::vector<BitString>> Example1Drs::setup(const FileSet& files) const {
    if (files.n_files != 2 || files.file_bits != file_bits())
        throw ParamError("example1: file set shape mismatch");
    std::vector<std::vector<BitString>> caches(2, std::vector<BitString>(2));
    for (uint32_t i = 0; i < 2; i++)
        for (uint32_t j = 0; j < 2; j++) caches[i][j] = combine(files, kCache[i][j]);
    return caches;
}

BitString Example1Drs::deliver(const FileSet& files, const std::vector<uint32_t>& shifts) const {
    check_shifts(shifts);
    BitWriter w(payload_bits());
    for (int s = 0; s < 4; s++) w.put(combine(files, kTx[shifts[0]][shifts[1]][s]));
    return w.finish();
}

BitString Example1Drs::decode(uint32_t stack, uint32_t pos, const std::vector<uint32_t>& shifts,
                              const BitString& cache, const BitString& payload) const {
    check_shifts(shifts);
    if (stack >= 2 || pos >= 2) throw ParamError("example1: bad stack/position");
    uint32_t demand = demand_at(stack, pos, shifts);
    XorSpan span(6);
    auto mask_of = [&](uint8_t pattern) {
        XorSpan::Mask m(1, 0);
        m[0] = pattern;
        return m;
    };
    span.add(mask_of(kCache[stack][pos]), cache);
    for (int s = 0; s < 4; s++)
        span.add(mask_of(kTx[shifts[0]][shifts[1]][s]), payload.slice(s * l_, l_));
    BitString out(file_bits());
    for (uint32_t seg = 0; seg < 3; seg++) {
        auto val = span.express(mask_of(static_cast<uint8_t>(1u << (3 * demand + seg))), l_);
        if (!val) throw DecodeError("example1: segment not recoverable");
        out.copy_slice(seg * l_, *val, 0, l_);
    }
    return out;
}

// ---------------------------------------------------------------------------
// LiftScheme

LiftScheme::LiftScheme(std::string name, std::shared_ptr<const DrsScheme> inner)
    : name_(std::move(name)), inner_(std::move(inner)) {
    for (uint32_t k = 0; k < inner_->n_stacks(); k++)
        tape_.add_uniform("s" + std::to_string(k), inner_->n_files());
}

std::vector<CacheContent> LiftScheme::place(const TapeValue& tape, const FileSet& files) const {
    auto virtual_caches = inner_->setup(files);
    unsigned w = bit_width_for(n_files());
    std::vector<CacheContent> out(n_users());
    for (uint32_t k = 0; k < n_users(); k++) {
        uint32_t sk = static_cast<uint32_t>(tape.u(k));
        out[k].main_bits = std::move(virtual_caches[k][sk]);
        out[k].shared_random.add("s", w, sk);
    }
    return out;
}

Broadcast LiftScheme::deliver(const TapeValue& tape, const FileSet& files,
                              const DemandVector& demands) const {
    check_inputs(files, demands);
    uint32_t n = n_files();
    std::vector<uint32_t> shifts(n_users());
    for (uint32_t k = 0; k < n_users(); k++)
        shifts[k] = (static_cast<uint32_t>(tape.u(k)) + n - demands[k]) % n;
    Broadcast bc;
    bc.payload = inner_->deliver(files, shifts);
    unsigned w = bit_width_for(n);
    for (uint32_t k = 0; k < n_users(); k++) bc.aux.add("c", w, shifts[k]);
    return bc;
}

BitString LiftScheme::decode(uint32_t user, uint32_t demand, const CacheContent& cache,
                             const Broadcast& bc) const {
    if (user >= n_users() || demand >= n_files()) throw ParamError("lift: bad user/demand");
    uint32_t sk = static_cast<uint32_t>(cache.shared_random.get("s"));
    std::vector<uint32_t> shifts(n_users());
    for (uint32_t k = 0; k < n_users(); k++)
        shifts[k] = static_cast<uint32_t>(bc.aux.get("c", k));
    return inner_->decode(user, sk, shifts, cache.main_bits, bc.payload);
}

SchemePtr make_scheme_a(uint32_t n_files, uint32_t n_users, uint32_t r, uint64_t l) {
    auto inner = std::make_shared<YmaDrs>(n_files, n_users, r, l);
    return std::make_shared<LiftScheme>("schemeA", std::move(inner));
}

SchemePtr make_example1(uint64_t l) {
    return std::make_shared<LiftScheme>("example1", std::make_shared<Example1Drs>(l));
}

} // namespace pcc
