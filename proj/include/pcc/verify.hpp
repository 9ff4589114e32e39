#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pcc/core.hpp"
#include "pcc/rat.hpp"

namespace pcc {

inline constexpr u128 kDefaultBudget = static_cast<u128>(1) << 34;

// Size of the (files x tape x demands) product space a check would walk.
struct StateSpace {
    u128 filesets = 0;
    u128 tapes = 0;
    uint64_t demand_vectors = 0;
    u128 total = 0;
};
StateSpace state_space(const CachingScheme& s, bool enumerate_files);

// Canonical byte string of what user k holds and receives: cache main
// bits, shared-randomness record, payload, auxiliary record, own demand.
std::vector<uint8_t> view_bytes(uint32_t demand, const CacheContent& cache, const Broadcast& bc);

// ---------------------------------------------------------------------------
// Decodability

// Runs the pipeline on the all-zero library and on every single-bit
// library, for every demand vector and every tape (or `tape_samples`
// sampled tapes when nonzero). For schemes whose caches, payloads and
// decoders are XOR-affine in the file bits this certifies decoding on
// every library.
struct DecodeBasisResult {
    bool pass = false;
    uint64_t pipelines = 0;
    std::string failure;  // located user/demand/tape/bit when failing
};
DecodeBasisResult verify_decode_basis(const CachingScheme& s, uint64_t tape_samples,
                                      uint64_t seed, u128 budget = kDefaultBudget);

// Spot check of the affinity assumption itself on random libraries.
bool check_gf2_affinity(const CachingScheme& s, uint64_t trials, uint64_t seed);

// ---------------------------------------------------------------------------
// Privacy

struct ExactMi {
    uint32_t user = 0;
    bool zero = false;       // exact integer factorization test
    double mi_bits = 0.0;
    u128 states = 0;
};
// Exact I(D_others; view of user k) by full enumeration of files, tapes
// and demands. Zero required for a private scheme.
std::vector<ExactMi> verify_privacy_exact(const CachingScheme& s, u128 budget = kDefaultBudget);

struct WeakMi {
    uint32_t user = 0, other = 0;
    bool zero = false;
    double mi_bits = 0.0;
};
// Pairwise I(D_i; view of user k), i != k; implied by the exact check.
std::vector<WeakMi> verify_weak_privacy(const CachingScheme& s, u128 budget = kDefaultBudget);

struct MiEstimate {
    uint32_t user = 0;
    uint64_t samples = 0;
    uint32_t bins = 0;          // 0 = raw hashed views
    uint64_t distinct_keys = 0; // occupied rows of the empirical joint
    double plugin_bits = 0.0;
    double mm_bits = 0.0;  // Miller-Madow corrected
    double ci_lo = 0.0, ci_hi = 0.0;
};
// Plug-in estimate of I(D_others; view) over hashed views with a
// Miller-Madow correction and a Poisson-bootstrap confidence interval.
// A sampled estimate can only flag leaks, never prove privacy; when the
// view alphabet outgrows the sample count the views are first hashed into
// `bins` buckets to keep the plug-in estimator calibrated.
MiEstimate verify_privacy_estimate(const CachingScheme& s, uint32_t user, uint64_t samples,
                                   uint32_t bins, uint64_t seed);

// Optional reduction of the joint view of a user subset to a statistic of
// it (must be computable from that view alone). A dependent statistic
// witnesses a violation; the default is the full view.
using ViewStatFn = std::function<std::vector<uint8_t>(
    const FileSet&, const TapeValue&, const DemandVector&, const std::vector<CacheContent>&,
    const Broadcast&, uint32_t subset_mask)>;

struct StrongMi {
    uint32_t subset_mask = 0;
    bool zero = false;
    double max_mi_bits = 0.0;  // worst case over the tested libraries
};
// The collusion-grade condition: conditioned on the full library, the
// joint view of any user subset must stay independent of the outside
// demands. Enumerates tapes and demands at fixed random libraries.
std::vector<StrongMi> verify_strong_privacy(const CachingScheme& s, unsigned n_filesets,
                                            uint64_t seed, u128 budget = kDefaultBudget,
                                            const ViewStatFn& stat = nullptr);

struct DistEqResult {
    bool identical = false;
    std::string mismatch;
};
// K = 2 distribution property: (X, Z_k, W_j | D_k = j) has the same
// distribution whatever the other user demands.
DistEqResult verify_lemma3(const CachingScheme& s, u128 budget = kDefaultBudget);

// ---------------------------------------------------------------------------
// Rate/memory measurement

struct RateMeasurement {
    Rat memory{0};
    Rat rate{0};
    uint64_t cache_main_bits = 0;
    uint64_t payload_bits = 0;
    uint64_t aux_bits = 0;
    uint64_t shared_bits = 0;
    bool payload_constant = false;  // across demands and tapes
    bool aux_constant_in_l = false; // same aux size at scale 2l
    bool decode_ok = false;
};
RateMeasurement measure_rates(const SchemeFactory& factory, uint64_t l, uint64_t tape_samples,
                              uint64_t seed);

// ---------------------------------------------------------------------------
// Negative controls

// Deliberately broken scheme: both demands ride in the clear inside the
// auxiliary message, so each user learns the other demand exactly.
SchemePtr make_leaky_scheme(uint64_t l);

// Fault-injection wrapper flipping one payload bit after delivery.
SchemePtr make_corrupted(SchemePtr inner, uint64_t payload_bit);

} // namespace pcc
