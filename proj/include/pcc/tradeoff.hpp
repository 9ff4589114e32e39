#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pcc/errors.hpp"
#include "pcc/rat.hpp"

namespace pcc {

struct MRPoint {
    Rat M, R;
    bool operator==(const MRPoint& o) const { return M == o.M && R == o.R; }
};

// Achievable pair of the leader-based non-private scheme for N files and
// Ktil users at integer cache parameter r.
MRPoint yma_pair(uint32_t n, uint32_t ktil, uint32_t r);

// The non-private baseline curves used by the order-optimality check.
std::vector<MRPoint> yma_points(uint32_t n, uint32_t k);  // r = 0..K
std::vector<MRPoint> man_points(uint32_t n, uint32_t k);  // M = jN/K
Rat man_rate(uint32_t n, uint32_t k, const Rat& m);       // requires KM/N integral
Rat cutset_bound(uint32_t n, const Rat& m);               // max(1 - M/N, 0)

// Private-scheme point formulas.
std::vector<MRPoint> scheme_a_points(uint32_t n, uint32_t k);  // r = 0..NK-K+1
MRPoint scheme_b_point(uint32_t n, uint32_t k, const Rat& m);
MRPoint scheme_c_point(uint32_t n, uint32_t k, uint32_t t, const Rat& r);
std::vector<MRPoint> scheme_c_points(uint32_t n, uint32_t k, const Rat& r);  // t = 1..NK-1

// Lower convex envelope of achievable points: convex, non-increasing in M,
// flat-extended to the right of the last corner.
class Envelope {
public:
    explicit Envelope(std::vector<MRPoint> points);

    const std::vector<MRPoint>& corners() const { return corners_; }
    Rat eval(const Rat& m) const;
    Rat min_m() const { return corners_.front().M; }
    Rat max_m() const { return corners_.back().M; }

private:
    std::vector<MRPoint> corners_;
};

struct HalfPlane {
    Rat a, b, c;  // a*M + b*R >= c
};

struct RateRegion {
    std::vector<HalfPlane> planes;  // besides M >= 0, R >= 0
    std::vector<MRPoint> corners;   // boundary corner points

    bool contains(const MRPoint& p) const {
        if (p.M < 0 || p.R < 0) return false;
        for (const auto& h : planes)
            if (h.a * p.M + h.b * p.R < h.c) return false;
        return true;
    }
};

// The exact private region for K = 2 (three boundary lines).
RateRegion exact_region(uint32_t n);

// Grid comparison of the achievable envelopes against the lower-bound
// surrogates behind the order-optimality constants. R* itself is not
// computable; the surrogates are the published lower bounds on it, and the
// report is a surrogate-bound property check, stated as such.
struct RatioEntry {
    Rat m;
    Rat achievable;
    Rat surrogate;
    Rat bound;  // the constant claimed for this memory regime
    bool pass;
};

struct RatioReport {
    uint32_t n = 0, k = 0;
    bool all_pass = false;
    bool cutset_tail_exact = false;  // achievable == cut-set for large M
    std::vector<RatioEntry> entries;
};

RatioReport order_ratio_check(uint32_t n, uint32_t k, uint32_t grid_points = 20);

} // namespace pcc
