#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "pcc/aux_record.hpp"
#include "pcc/bits.hpp"
#include "pcc/errors.hpp"
#include "pcc/tape.hpp"

namespace pcc {

// The server's library: n equal-length files.
struct FileSet {
    uint32_t n_files = 0;
    uint64_t file_bits = 0;
    std::vector<BitString> files;

    static FileSet zeros(uint32_t n, uint64_t f) {
        FileSet w{n, f, {}};
        w.files.assign(n, BitString(f));
        return w;
    }
    static FileSet random(uint32_t n, uint64_t f, CounterRng& rng) {
        FileSet w{n, f, {}};
        w.files.reserve(n);
        for (uint32_t i = 0; i < n; i++) w.files.push_back(BitString::random(f, rng));
        return w;
    }
    // Single set bit: file i, bit b.
    static FileSet unit(uint32_t n, uint64_t f, uint32_t i, uint64_t b) {
        FileSet w = zeros(n, f);
        w.files[i].set(b, true);
        return w;
    }
    // Enumeration helper: bit j of `index` is bit (j % f) of file (j / f).
    static FileSet from_index(uint32_t n, uint64_t f, u128 index) {
        FileSet w = zeros(n, f);
        for (uint32_t i = 0; i < n; i++)
            for (uint64_t b = 0; b < f; b++) {
                w.files[i].set(b, static_cast<bool>((index >> (i * f + b)) & 1));
            }
        return w;
    }

    const BitString& operator[](uint32_t i) const { return files[i]; }
};

struct DemandVector {
    std::vector<uint32_t> d;

    static DemandVector from_index(uint32_t n_files, uint32_t k, uint64_t index) {
        DemandVector v;
        v.d.resize(k);
        for (uint32_t i = 0; i < k; i++) {
            v.d[i] = static_cast<uint32_t>(index % n_files);
            index /= n_files;
        }
        return v;
    }

    uint32_t operator[](uint32_t i) const { return d[i]; }
    uint32_t size() const { return static_cast<uint32_t>(d.size()); }
};

// Per-user placement. main_bits counts against M*F; the shared-randomness
// record is o(F) and excluded from the memory accounting.
struct CacheContent {
    BitString main_bits;
    AuxRecord shared_random;
};

// Delivery message. The payload counts against R*F; aux is the negligible
// side transmission J whose bit size must not depend on the segment scale.
struct Broadcast {
    BitString payload;
    AuxRecord aux;
};

// Uniform interface every scheme implements. Operations are pure: types
// are immutable after construction and calls are safe from many threads.
//
// decode deliberately receives only (user, demand, own cache, broadcast) -
// the information a real user holds - never the tape or other caches.
class CachingScheme {
public:
    virtual ~CachingScheme() = default;

    virtual std::string name() const = 0;
    virtual uint32_t n_files() const = 0;
    virtual uint32_t n_users() const = 0;
    virtual uint64_t file_bits() const = 0;
    virtual const TapeSpec& tape_spec() const = 0;

    virtual std::vector<CacheContent> place(const TapeValue& tape, const FileSet& files) const = 0;
    virtual Broadcast deliver(const TapeValue& tape, const FileSet& files, const DemandVector& demands) const = 0;
    virtual BitString decode(uint32_t user, uint32_t demand, const CacheContent& cache,
                             const Broadcast& bc) const = 0;

    void check_inputs(const FileSet& files, const DemandVector& demands) const {
        if (files.n_files != n_files() || files.file_bits != file_bits())
            throw ParamError(name() + ": file set shape mismatch");
        if (demands.size() != n_users()) throw DemandError(name() + ": demand vector length != K");
        for (uint32_t d : demands.d)
            if (d >= n_files()) throw DemandError(name() + ": demand index >= N");
    }
};

using SchemePtr = std::shared_ptr<const CachingScheme>;

// Rebuilds a scheme at a different segment scale; used to audit that aux
// sizes do not grow with l.
using SchemeFactory = std::function<SchemePtr(uint64_t l)>;

} // namespace pcc
