#pragma once
// Dense univariate polynomials over the rationals, coefficients stored in
// ascending order.  These carry the one-variable side of the toolkit: weight
// data, three-term recurrences, and the coefficient arithmetic behind the
// bivariate gcd.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kwp/rational.hpp"

namespace kwp {

class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
    static UniPoly constant(const Rat& v) { return UniPoly({v}); }
    static UniPoly x() { return UniPoly({Rat(0), Rat(1)}); }
    // p = c0 + c1*x + ... given as initializer-friendly longs.
    static UniPoly from_longs(std::initializer_list<long> cs) {
        std::vector<Rat> v;
        for (long x : cs) v.emplace_back(x);
        return UniPoly(std::move(v));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // zero poly: -1
    const Rat& coeff(int k) const {
        static const Rat kZero = 0;
        if (k < 0 || k >= static_cast<int>(c_.size())) return kZero;
        return c_[static_cast<std::size_t>(k)];
    }
    const std::vector<Rat>& coeffs() const { return c_; }
    const Rat& leading() const {
        if (is_zero()) throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }

    void set_coeff(int k, const Rat& v) {
        if (k < 0) throw std::invalid_argument("negative exponent");
        if (k >= static_cast<int>(c_.size())) c_.resize(static_cast<std::size_t>(k) + 1, Rat(0));
        c_[static_cast<std::size_t>(k)] = v;
        trim();
    }

    UniPoly operator-() const {
        UniPoly r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }
    UniPoly operator+(const UniPoly& o) const {
        std::vector<Rat> v(std::max(c_.size(), o.c_.size()), Rat(0));
        for (std::size_t k = 0; k < c_.size(); ++k) v[k] += c_[k];
        for (std::size_t k = 0; k < o.c_.size(); ++k) v[k] += o.c_[k];
        return UniPoly(std::move(v));
    }
    UniPoly operator-(const UniPoly& o) const { return *this + (-o); }
    UniPoly operator*(const UniPoly& o) const {
        if (is_zero() || o.is_zero()) return UniPoly();
        std::vector<Rat> v(c_.size() + o.c_.size() - 1, Rat(0));
        for (std::size_t a = 0; a < c_.size(); ++a)
            for (std::size_t b = 0; b < o.c_.size(); ++b) v[a + b] += c_[a] * o.c_[b];
        return UniPoly(std::move(v));
    }
    UniPoly operator*(const Rat& s) const {
        if (s == 0) return UniPoly();
        UniPoly r = *this;
        for (auto& v : r.c_) v *= s;
        return r;
    }
    bool operator==(const UniPoly& o) const { return c_ == o.c_; }
    bool operator!=(const UniPoly& o) const { return !(*this == o); }

    UniPoly derivative() const {
        if (c_.size() <= 1) return UniPoly();
        std::vector<Rat> v(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) v[k - 1] = c_[k] * Rat(static_cast<long>(k));
        return UniPoly(std::move(v));
    }

    Rat eval(const Rat& x) const {
        Rat acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    // Horner evaluation in any ring reachable from Rat (e.g. multiprecision floats).
    template <typename T, typename Conv>
    T eval_as(const T& x, Conv conv) const {
        T acc = conv(Rat(0));
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + conv(*it);
        return acc;
    }

    // p(s*x + t): affine substitution.
    UniPoly compose_affine(const Rat& s, const Rat& t) const {
        UniPoly arg({t, s});
        UniPoly acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * arg + constant(*it);
        return acc;
    }

    UniPoly pow(unsigned e) const {
        UniPoly out = constant(1);
        UniPoly b = *this;
        while (e) {
            if (e & 1) out = out * b;
            b = b * b;
            e >>= 1;
        }
        return out;
    }

    UniPoly monic() const {
        if (is_zero()) return *this;
        return *this * (Rat(1) / leading());
    }

    std::string str(const std::string& var = "x") const;

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rat> c_;
};

inline UniPoly operator*(const Rat& s, const UniPoly& p) { return p * s; }

struct UniDivRem {
    UniPoly quot, rem;
};

inline UniDivRem div_rem(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    UniPoly r = a;
    std::vector<Rat> q(a.degree() >= b.degree() ? static_cast<std::size_t>(a.degree() - b.degree() + 1) : 0, Rat(0));
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int shift = r.degree() - b.degree();
        Rat f = r.leading() / b.leading();
        q[static_cast<std::size_t>(shift)] = f;
        UniPoly sub;
        std::vector<Rat> sc(static_cast<std::size_t>(shift) + 1, Rat(0));
        sc.back() = f;
        r = r - UniPoly(std::move(sc)) * b;
    }
    return {UniPoly(std::move(q)), r};
}

inline std::optional<UniPoly> divide_exact(const UniPoly& a, const UniPoly& b) {
    auto dr = div_rem(a, b);
    if (!dr.rem.is_zero()) return std::nullopt;
    return dr.quot;
}

// Monic gcd via the Euclidean algorithm over Q.
inline UniPoly gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly f = a, g = b;
    while (!g.is_zero()) {
        UniPoly r = div_rem(f, g).rem;
        f = g;
        g = r;
    }
    if (f.is_zero()) return f;
    return f.monic();
}

// Monic irreducible factors over Q with multiplicities. Handles any product of
// linear pieces plus at most one quadratic; quadratics are split exactly when
// the discriminant is a rational square. Degrees beyond the factorable range
// are returned whole (the callers here never produce them).
struct UniFactor {
    UniPoly base;  // monic
    int exponent;
};

inline std::vector<UniFactor> factor_over_q(const UniPoly& p_in) {
    std::vector<UniFactor> out;
    if (p_in.is_zero() || p_in.degree() == 0) return out;
    UniPoly p = p_in.monic();
    auto push = [&out](const UniPoly& base) {
        for (auto& f : out)
            if (f.base == base) {
                ++f.exponent;
                return;
            }
        out.push_back({base, 1});
    };
    // Strip powers of x.
    while (p.coeff(0) == 0 && p.degree() >= 1) {
        push(UniPoly::x());
        std::vector<Rat> shifted(p.coeffs().begin() + 1, p.coeffs().end());
        p = UniPoly(std::move(shifted));
    }
    while (p.degree() >= 1) {
        if (p.degree() == 1) {
            push(p.monic());
            break;
        }
        // Try a rational root of the quadratic tail; works for every weight
        // polynomial in this toolkit (degree <= 2 after x-stripping).
        if (p.degree() == 2) {
            Rat b = p.coeff(1), c = p.coeff(0);
            Rat disc = b * b - 4 * c;
            Rat sq;
            if (rat_sqrt_exact(disc, &sq)) {
                Rat r1 = (-b + sq) / 2, r2 = (-b - sq) / 2;
                push(UniPoly({-r1, Rat(1)}));
                push(UniPoly({-r2, Rat(1)}));
            } else {
                push(p);
            }
            break;
        }
        out.push_back({p, 1});
        break;
    }
    return out;
}

inline std::string UniPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::string s;
    for (int k = degree(); k >= 0; --k) {
        const Rat& v = coeff(k);
        if (v == 0) continue;
        Rat mag = v < 0 ? Rat(-v) : v;
        if (!s.empty())
            s += (v < 0) ? " - " : " + ";
        else if (v < 0)
            s += "-";
        std::string coeff_txt = rat_str(mag);
        if (k == 0) {
            s += coeff_txt;
        } else {
            if (mag != 1) s += coeff_txt + "*";
            s += var;
            if (k > 1) s += "^" + std::to_string(k);
        }
    }
    return s;
}

}  // namespace kwp
