#include "pcc/tradeoff.hpp"

#include <algorithm>
#include <cstdio>

namespace pcc {

std::string rat_decimal(const Rat& v, int sig) {
    mpf_class f(v, 256);
    char buf[128];
    gmp_snprintf(buf, sizeof(buf), "%.*Fg", sig, f.get_mpf_t());
    return buf;
}

Rat rat_parse(const std::string& text) {
    if (text.empty()) throw ParamError("empty rational");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        Rat num(text.substr(0, slash), 10);
        Rat den(text.substr(slash + 1), 10);
        if (den == 0) throw ParamError("zero denominator");
        Rat r = num / den;
        r.canonicalize();
        return r;
    }
    std::string body = text;
    long exp10 = 0;
    auto e = body.find_first_of("eE");
    if (e != std::string::npos) {
        exp10 = std::stol(body.substr(e + 1));
        body = body.substr(0, e);
    }
    Rat r;
    auto dot = body.find('.');
    if (dot != std::string::npos) {
        std::string digits = body.substr(0, dot) + body.substr(dot + 1);
        exp10 -= static_cast<long>(body.size() - dot - 1);
        r = Rat(mpz_class(digits, 10));
    } else {
        r = Rat(mpz_class(body, 10));
    }
    for (long i = 0; i < exp10; i++) r *= 10;
    for (long i = 0; i > exp10; i--) r /= 10;
    r.canonicalize();
    return r;
}

MRPoint yma_pair(uint32_t n, uint32_t ktil, uint32_t r) {
    if (r > ktil) throw ParamError("yma_pair: r out of range");
    uint32_t distinct = std::min(n, ktil);
    Rat m = rat(n) * rat(r) / rat(ktil);
    Rat rate = (rbinom(ktil, r + 1) - rbinom(ktil - distinct, r + 1)) / rbinom(ktil, r);
    return {m, rate};
}

std::vector<MRPoint> yma_points(uint32_t n, uint32_t k) {
    std::vector<MRPoint> out;
    for (uint32_t r = 0; r <= k; r++) out.push_back(yma_pair(n, k, r));
    return out;
}

std::vector<MRPoint> man_points(uint32_t n, uint32_t k) {
    std::vector<MRPoint> out;
    for (uint32_t j = 0; j <= k; j++) {
        Rat m = rat(n) * rat(j) / rat(k);
        out.push_back({m, man_rate(n, k, m)});
    }
    return out;
}

Rat man_rate(uint32_t n, uint32_t k, const Rat& m) {
    Rat t0 = m * rat(k) / rat(n);
    if (t0.get_den() != 1) throw ParamError("man_rate: KM/N must be an integer");
    Rat lhs = 1 / (1 + t0);
    Rat rhs = rat(n) / rat(k);
    return rat(k) * (1 - m / rat(n)) * std::min(lhs, rhs);
}

Rat cutset_bound(uint32_t n, const Rat& m) {
    Rat r = 1 - m / rat(n);
    return r > 0 ? r : Rat(0);
}

std::vector<MRPoint> scheme_a_points(uint32_t n, uint32_t k) {
    uint32_t ktil = n * k - k + 1;
    std::vector<MRPoint> out;
    for (uint32_t r = 0; r <= ktil; r++) out.push_back(yma_pair(n, ktil, r));
    return out;
}

MRPoint scheme_b_point(uint32_t n, uint32_t k, const Rat& m) {
    if (m < 0 || m > rat(n)) throw ParamError("scheme_b_point: memory out of range");
    return {m, rat(std::min(n, k)) * (1 - m / rat(n))};
}

MRPoint scheme_c_point(uint32_t n, uint32_t k, uint32_t t, const Rat& r) {
    uint32_t nk = n * k;
    if (t < 1 || t > nk - 1) throw ParamError("scheme_c_point: t out of range");
    if (r < 1 || r > rat(n - 1)) throw ParamError("scheme_c_point: r out of range");
    Rat denom = 0, mnum = 0, rnum = 0;
    for (uint32_t s = t; s <= nk - 1; s++) {
        Rat re = rpow(r, nk - s - 1);
        denom += rbinom(nk, s) * re;
        mnum += rbinom(nk - 1, s - 1) * re;
    }
    for (uint32_t s = t + 1; s <= nk; s++)
        rnum += (rbinom(nk, s) - rbinom(nk - k, s)) * rpow(r, nk - s);
    return {rat(n) * mnum / denom, rnum / denom};
}

std::vector<MRPoint> scheme_c_points(uint32_t n, uint32_t k, const Rat& r) {
    std::vector<MRPoint> out;
    for (uint32_t t = 1; t <= n * k - 1; t++) out.push_back(scheme_c_point(n, k, t, r));
    return out;
}

// ---------------------------------------------------------------------------

Envelope::Envelope(std::vector<MRPoint> points) {
    if (points.empty()) throw ParamError("envelope: no points");
    std::sort(points.begin(), points.end(), [](const MRPoint& a, const MRPoint& b) {
        return a.M < b.M || (a.M == b.M && a.R < b.R);
    });
    auto cross = [](const MRPoint& o, const MRPoint& a, const MRPoint& b) -> Rat {
        return (a.M - o.M) * (b.R - o.R) - (a.R - o.R) * (b.M - o.M);
    };
    for (const MRPoint& p : points) {
        if (!corners_.empty() && corners_.back().M == p.M) continue;  // dominated
        while (corners_.size() >= 2 &&
               cross(corners_[corners_.size() - 2], corners_.back(), p) <= 0)
            corners_.pop_back();
        corners_.push_back(p);
    }
    for (size_t i = 1; i < corners_.size(); i++)
        if (corners_[i].R > corners_[i - 1].R)
            throw Error("envelope: rate increases with memory");
}

Rat Envelope::eval(const Rat& m) const {
    if (m < corners_.front().M) throw ParamError("envelope: memory below smallest point");
    if (m >= corners_.back().M) return corners_.back().R;
    size_t i = 1;
    while (corners_[i].M < m) i++;
    const MRPoint& a = corners_[i - 1];
    const MRPoint& b = corners_[i];
    return a.R + (b.R - a.R) * (m - a.M) / (b.M - a.M);
}

RateRegion exact_region(uint32_t n) {
    if (n < 2) throw ParamError("exact_region: needs N >= 2");
    RateRegion reg;
    if (n == 2) {
        reg.planes = {{rat(2), rat(1), rat(2)}, {rat(3), rat(3), rat(5)}, {rat(1), rat(2), rat(2)}};
        reg.corners = {{rat(0), rat(2)},
                       {rat(1, 3), rat(4, 3)},
                       {rat(4, 3), rat(1, 3)},
                       {rat(2), rat(0)}};
    } else {
        reg.planes = {{rat(3), rat(n), rat(2) * n},
                      {rat(3), rat(n + 1), rat(2 * n + 1)},
                      {rat(1), rat(n), rat(n)}};
        reg.corners = {{rat(0), rat(2)},
                       {rat(n) / 3, rat(1)},
                       {rat(n) * n / rat(2 * n - 1), rat(n - 1) / rat(2 * n - 1)},
                       {rat(n), rat(0)}};
    }
    return reg;
}

// ---------------------------------------------------------------------------

namespace {

// Published lower bounds on the optimal non-private rate, used as ratio
// denominators. For N <= K: the cut-set line, the flat N/4 bound on
// M <= 1, and f1(M)/4 with f1(M) = N/M - 1/2 on 1 <= M <= N/2. For K < N:
// the cut-set line and half the leader-based non-private envelope.
Rat surrogate_bound(uint32_t n, uint32_t k, const Envelope* yma_env, const Rat& m) {
    Rat best = cutset_bound(n, m);
    if (n <= k) {
        if (m <= 1) best = std::max(best, rat(n, 4));
        if (m >= 1 && m <= rat(n, 2) && m > 0)
            best = std::max(best, Rat((rat(n) / m - rat(1, 2)) / 4));
    } else {
        best = std::max(best, Rat(yma_env->eval(m) / 2));
    }
    return best;
}

} // namespace

RatioReport order_ratio_check(uint32_t n, uint32_t k, uint32_t grid_points) {
    RatioReport rep;
    rep.n = n;
    rep.k = k;

    std::vector<MRPoint> ach_points;
    if (n <= k) {
        ach_points = scheme_a_points(n, k);
    } else {
        ach_points.push_back(scheme_b_point(n, k, rat(0)));
        ach_points.push_back(scheme_b_point(n, k, rat(n)));
        for (uint32_t r = 1; r <= n - 1; r++)
            for (const MRPoint& p : scheme_c_points(n, k, rat(r))) ach_points.push_back(p);
    }
    Envelope ach(ach_points);
    Envelope yma_env(yma_points(n, k));

    std::vector<Rat> grid;
    for (uint32_t j = 1; j <= grid_points; j++) grid.push_back(rat(n) * rat(j) / rat(2 * grid_points));
    for (uint32_t j = 1; j <= grid_points; j++)
        grid.push_back(rat(n, 2) + rat(n) * rat(j) / rat(2 * grid_points));
    for (const MRPoint& c : ach.corners())
        if (c.M > 0 && c.M < rat(n)) grid.push_back(c.M);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    rep.all_pass = true;
    for (const Rat& m : grid) {
        Rat a = ach.eval(m);
        Rat s = surrogate_bound(n, k, &yma_env, m);
        if (a == 0 && s == 0) continue;  // degenerate endpoint
        Rat bound;
        if (n <= k) {
            if (m <= 1 - rat(n) / rat(k)) bound = 4;
            else if (m < rat(n, 2)) bound = 8;
            else bound = 2;
        } else {
            bound = m < rat(n, 2) ? 3 : 2;
        }
        bool pass = s > 0 && a <= bound * s;
        rep.entries.push_back({m, a, s, bound, pass});
        rep.all_pass = rep.all_pass && pass;
    }

    // Achievable rate meets the cut-set line for large memory.
    Rat m_star = rat(n) * rat(n * k - k) / rat(n * k - k + 1);
    Envelope a_env(scheme_a_points(n, k));
    rep.cutset_tail_exact = true;
    for (const Rat& m : {m_star, Rat((m_star + rat(n)) / 2), rat(n)}) {
        if (a_env.eval(m) != cutset_bound(n, m)) rep.cutset_tail_exact = false;
    }
    rep.all_pass = rep.all_pass && rep.cutset_tail_exact;
    return rep;
}

} // namespace pcc
