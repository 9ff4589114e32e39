#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace pcc {

// Exact rational arithmetic for the trade-off layer; floats appear only at
// the CSV-emission boundary.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat rat_u64(uint64_t num, uint64_t den = 1) {
    mpz_class n, d;
    mpz_import(n.get_mpz_t(), 1, 1, sizeof(num), 0, 0, &num);
    mpz_import(d.get_mpz_t(), 1, 1, sizeof(den), 0, 0, &den);
    Rat r(n, d);
    r.canonicalize();
    return r;
}

inline Rat rbinom(unsigned long n, unsigned long k) {
    if (k > n) return 0;
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return Rat(b);
}

inline Rat rpow(const Rat& base, unsigned long e) {
    Rat out = 1;
    for (unsigned long i = 0; i < e; i++) out *= base;
    return out;
}

// Decimal with `sig` significant digits (scientific form), for CSV rows.
std::string rat_decimal(const Rat& v, int sig = 12);

// Parses "p", "p/q" or a plain decimal like "1.5".
Rat rat_parse(const std::string& text);

} // namespace pcc
