#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pcc/errors.hpp"
#include "pcc/perm.hpp"
#include "pcc/rng.hpp"

namespace pcc {

using u128 = unsigned __int128;
inline constexpr u128 U128_MAX = ~static_cast<u128>(0);

// Saturating product, used for enumeration-size accounting.
inline u128 mul_sat(u128 a, u128 b) {
    if (a == 0 || b == 0) return 0;
    if (a > U128_MAX / b) return U128_MAX;
    return a * b;
}

// Declared randomness of a scheme: a product of independent uniform
// components, each either an integer domain [0:m-1] or a permutation of
// [0:m-1]. Every scheme declares its tape at construction so the verifier
// can enumerate or sample it without scheme-specific knowledge, and the
// same tape value replays to bit-identical caches and broadcasts.
class TapeSpec {
public:
    struct Component {
        std::string name;
        enum class Kind { Uniform, Perm } kind;
        uint64_t m;  // domain [0:m-1] or permutation of [0:m-1]
    };

    size_t add_uniform(std::string name, uint64_t m) {
        if (m == 0) throw ParamError("empty tape domain: " + name);
        comps_.push_back({std::move(name), Component::Kind::Uniform, m});
        return comps_.size() - 1;
    }
    size_t add_perm(std::string name, uint64_t m) {
        if (m == 0) throw ParamError("empty tape domain: " + name);
        comps_.push_back({std::move(name), Component::Kind::Perm, m});
        return comps_.size() - 1;
    }

    const std::vector<Component>& components() const { return comps_; }
    size_t size() const { return comps_.size(); }

    u128 component_domain(size_t i) const;

    // Total count of equiprobable tape values; saturates at 2^128-1.
    u128 enumeration_size() const;

    struct Value;
    Value at(u128 index) const;          // unrank (requires non-saturated domains)
    Value sample(CounterRng& rng) const;

private:
    std::vector<Component> comps_;
};

// One drawn tape: scalar or permutation per component, index-aligned with
// the declaring TapeSpec.
struct TapeSpec::Value {
    struct Entry {
        uint64_t u = 0;
        Permutation p;
    };
    std::vector<Entry> entries;

    uint64_t u(size_t i) const { return entries[i].u; }
    const Permutation& perm(size_t i) const { return entries[i].p; }
};

using TapeValue = TapeSpec::Value;

} // namespace pcc
