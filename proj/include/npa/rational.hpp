#ifndef NPA_RATIONAL_HPP
#define NPA_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace npa {

// Exact rational scalar. GMP keeps the canonical form (coprime numerator and
// denominator, denominator >= 1) through all arithmetic; construction from a
// raw pair goes through rat() which canonicalizes.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat rat(const Int& num, const Int& den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

inline std::string rat_str(const Rat& r) { return r.get_str(); }

// Parses "n" or "n/d" with optional leading sign.
inline Rat rat_from_string(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

inline Int binomial(unsigned long n, unsigned long k) {
    Int b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

inline Int factorial(unsigned long n) {
    Int f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

inline Rat rat_pow(const Rat& base, unsigned long e) {
    Rat r = 1;
    Rat b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

}  // namespace npa

#endif
