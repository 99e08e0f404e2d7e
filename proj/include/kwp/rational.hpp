#pragma once
// Exact rational scalars used as the coefficient field everywhere.
// Thin helpers around GMP's mpq_class: canonical construction, "p/q" parsing,
// and string formatting suitable for JSON round-trips.

#include <gmpxx.h>

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace kwp {

using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat rat(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Accepts "p", "p/q", and plain decimal strings like "1.5" (converted exactly).
inline Rat rat_parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    // Base 10 always; the default GMP string constructor would treat a
    // leading zero as octal.
    auto int10 = [&s](const std::string& t) -> Int {
        try {
            return Int(t, 10);
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("not a rational literal: " + s);
        }
    };
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        return rat(int10(s.substr(0, slash)), int10(s.substr(slash + 1)));
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        std::size_t frac_len = s.size() - dot - 1;
        Int den(1);
        for (std::size_t k = 0; k < frac_len; ++k) den *= 10;
        return rat(int10(digits), den);
    }
    return rat(int10(s), Int(1));
}

inline std::string rat_str(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rat rat_pow(const Rat& base, unsigned long e) {
    Rat out = 1;
    Rat b = base;
    unsigned long k = e;
    while (k) {
        if (k & 1) out *= b;
        b *= b;
        k >>= 1;
    }
    return out;
}

inline bool rat_is_integer(const Rat& r) { return r.get_den() == 1; }

inline long rat_to_long(const Rat& r) {
    if (!rat_is_integer(r) || !r.get_num().fits_slong_p())
        throw std::domain_error("rational does not fit a machine integer: " + rat_str(r));
    return r.get_num().get_si();
}

// True iff r = (p/q)^2 for some rational; used to factor quadratics over Q.
inline bool rat_sqrt_exact(const Rat& r, Rat* root) {
    if (r < 0) return false;
    Int n = r.get_num(), d = r.get_den();
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return false;
    if (mpz_perfect_square_p(d.get_mpz_t()) == 0) return false;
    Int sn, sd;
    mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
    if (root) *root = rat(sn, sd);
    return true;
}

}  // namespace kwp
