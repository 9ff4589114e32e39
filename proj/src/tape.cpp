#include "pcc/tape.hpp"

namespace pcc {

u128 TapeSpec::component_domain(size_t i) const {
    const Component& c = comps_[i];
    if (c.kind == Component::Kind::Uniform) return c.m;
    u128 f = 1;
    for (uint64_t j = 2; j <= c.m; j++) f = mul_sat(f, j);
    return f;
}

u128 TapeSpec::enumeration_size() const {
    u128 total = 1;
    for (size_t i = 0; i < comps_.size(); i++) total = mul_sat(total, component_domain(i));
    return total;
}

TapeValue TapeSpec::at(u128 index) const {
    TapeValue v;
    v.entries.resize(comps_.size());
    for (size_t i = 0; i < comps_.size(); i++) {
        u128 d = component_domain(i);
        if (d == U128_MAX) throw BudgetError("tape component domain too large to enumerate: " + comps_[i].name);
        uint64_t r = static_cast<uint64_t>(index % d);
        index /= d;
        if (comps_[i].kind == Component::Kind::Uniform) {
            v.entries[i].u = r;
        } else {
            v.entries[i].p = Permutation::unrank(static_cast<unsigned>(comps_[i].m), r);
        }
    }
    return v;
}

TapeValue TapeSpec::sample(CounterRng& rng) const {
    TapeValue v;
    v.entries.resize(comps_.size());
    for (size_t i = 0; i < comps_.size(); i++) {
        if (comps_[i].kind == Component::Kind::Uniform) {
            v.entries[i].u = rng.bounded(comps_[i].m);
        } else {
            v.entries[i].p = Permutation::sample(static_cast<unsigned>(comps_[i].m), rng);
        }
    }
    return v;
}

} // namespace pcc
