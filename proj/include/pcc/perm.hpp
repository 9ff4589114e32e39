#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "pcc/errors.hpp"
#include "pcc/rng.hpp"

namespace pcc {

// Permutation of [0:m-1]. Applying pi to a tuple Y places Y[i] at output
// position pi(i), i.e. pi(Y)_j = Y_{pi^{-1}(j)}.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<uint32_t> map) : map_(std::move(map)) {
        std::vector<bool> seen(map_.size(), false);
        for (uint32_t v : map_) {
            if (v >= map_.size() || seen[v]) throw ParamError("not a bijection");
            seen[v] = true;
        }
    }

    static Permutation identity(unsigned m) {
        std::vector<uint32_t> v(m);
        std::iota(v.begin(), v.end(), 0);
        return Permutation(std::move(v));
    }

    static Permutation sample(unsigned m, CounterRng& rng) {
        std::vector<uint32_t> v(m);
        std::iota(v.begin(), v.end(), 0);
        for (unsigned i = m; i > 1; i--) std::swap(v[i - 1], v[rng.bounded(i)]);
        return Permutation(std::move(v));
    }

    // Lehmer-code unrank; valid while m! fits in 64 bits (m <= 20).
    static Permutation unrank(unsigned m, uint64_t rank) {
        std::vector<uint32_t> pool(m);
        std::iota(pool.begin(), pool.end(), 0);
        std::vector<uint64_t> fact(m + 1, 1);
        for (unsigned i = 1; i <= m; i++) fact[i] = fact[i - 1] * i;
        std::vector<uint32_t> v(m);
        for (unsigned i = 0; i < m; i++) {
            uint64_t f = fact[m - 1 - i];
            uint64_t idx = rank / f;
            rank %= f;
            v[i] = pool[idx];
            pool.erase(pool.begin() + static_cast<long>(idx));
        }
        return Permutation(std::move(v));
    }

    unsigned size() const { return static_cast<unsigned>(map_.size()); }
    uint32_t operator()(uint32_t i) const { return map_[i]; }

    Permutation inverse() const {
        std::vector<uint32_t> inv(map_.size());
        for (uint32_t i = 0; i < map_.size(); i++) inv[map_[i]] = i;
        return Permutation(std::move(inv));
    }

    // (this o other)(i) = this(other(i))
    Permutation compose(const Permutation& other) const {
        std::vector<uint32_t> v(map_.size());
        for (uint32_t i = 0; i < map_.size(); i++) v[i] = map_[other.map_[i]];
        return Permutation(std::move(v));
    }

    template <typename T>
    std::vector<T> apply(const std::vector<T>& in) const {
        std::vector<T> out(in.size());
        for (uint32_t i = 0; i < in.size(); i++) out[map_[i]] = in[i];
        return out;
    }

    const std::vector<uint32_t>& raw() const { return map_; }
    bool operator==(const Permutation&) const = default;

private:
    std::vector<uint32_t> map_;
};

} // namespace pcc
