#pragma once
// Sparse bivariate polynomials over Q with a graded monomial order.
//
// The order compares total degree first and breaks ties by the y-exponent, so
// x^2 < xy < y^2 within degree 2.  Under this order every product basis
// element built by the toolkit has the single monomial x^{n-m} y^m on top,
// which is what makes exact expansion-by-elimination possible.

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kwp/rational.hpp"
#include "kwp/unipoly.hpp"

namespace kwp {

struct Mono {
    int i = 0;  // x-exponent
    int j = 0;  // y-exponent
    int total() const { return i + j; }
    bool operator==(const Mono& o) const { return i == o.i && j == o.j; }
};

struct MonoGradedYLess {
    bool operator()(const Mono& a, const Mono& b) const {
        if (a.total() != b.total()) return a.total() < b.total();
        return a.j < b.j;
    }
};

class BiPoly {
public:
    using TermMap = std::map<Mono, Rat, MonoGradedYLess>;

    BiPoly() = default;
    static BiPoly constant(const Rat& v) {
        BiPoly p;
        p.add_term({0, 0}, v);
        return p;
    }
    static BiPoly x() {
        BiPoly p;
        p.add_term({1, 0}, 1);
        return p;
    }
    static BiPoly y() {
        BiPoly p;
        p.add_term({0, 1}, 1);
        return p;
    }
    static BiPoly monomial(int i, int j, const Rat& c = 1) {
        BiPoly p;
        p.add_term({i, j}, c);
        return p;
    }
    // Embed a univariate polynomial as a polynomial in x (var=0) or y (var=1).
    static BiPoly from_uni(const UniPoly& p, int var) {
        BiPoly out;
        for (int k = 0; k <= p.degree(); ++k) {
            if (p.coeff(k) == 0) continue;
            out.add_term(var == 0 ? Mono{k, 0} : Mono{0, k}, p.coeff(k));
        }
        return out;
    }

    bool is_zero() const { return t_.empty(); }

    // Total degree; -1 for the zero polynomial.
    int total_degree() const {
        if (t_.empty()) return -1;
        const Mono& m = t_.rbegin()->first;
        return m.i + m.j;
    }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first == Mono{0, 0}); }
    const TermMap& terms() const { return t_; }

    int degree() const {  // total degree; zero polynomial: -1
        if (t_.empty()) return -1;
        return t_.rbegin()->first.total();
    }
    int degree_x() const {
        int d = -1;
        for (const auto& [m, c] : t_) d = std::max(d, m.i);
        return d;
    }
    int degree_y() const {
        if (t_.empty()) return -1;
        int d = -1;
        for (const auto& [m, c] : t_) d = std::max(d, m.j);
        return d;
    }

    Mono leading_mono() const {
        if (t_.empty()) throw std::domain_error("leading monomial of zero polynomial");
        return t_.rbegin()->first;
    }
    const Rat& leading_coeff() const {
        if (t_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
        return t_.rbegin()->second;
    }

    Rat coeff(int i, int j) const {
        auto it = t_.find({i, j});
        return it == t_.end() ? Rat(0) : it->second;
    }

    void add_term(Mono m, const Rat& c) {
        if (c == 0) return;
        auto [it, fresh] = t_.try_emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) t_.erase(it);
        }
    }

    BiPoly operator-() const {
        BiPoly r = *this;
        for (auto& [m, c] : r.t_) c = -c;
        return r;
    }
    BiPoly operator+(const BiPoly& o) const {
        BiPoly r = *this;
        for (const auto& [m, c] : o.t_) r.add_term(m, c);
        return r;
    }
    BiPoly operator-(const BiPoly& o) const {
        BiPoly r = *this;
        for (const auto& [m, c] : o.t_) r.add_term(m, -c);
        return r;
    }
    BiPoly operator*(const BiPoly& o) const {
        BiPoly r;
        for (const auto& [ma, ca] : t_)
            for (const auto& [mb, cb] : o.t_) r.add_term({ma.i + mb.i, ma.j + mb.j}, ca * cb);
        return r;
    }
    BiPoly operator*(const Rat& s) const {
        if (s == 0) return BiPoly();
        BiPoly r = *this;
        for (auto& [m, c] : r.t_) c *= s;
        return r;
    }
    bool operator==(const BiPoly& o) const { return t_ == o.t_; }
    bool operator!=(const BiPoly& o) const { return !(*this == o); }

    BiPoly pow(unsigned e) const {
        BiPoly out = constant(1);
        BiPoly b = *this;
        while (e) {
            if (e & 1) out = out * b;
            b = b * b;
            e >>= 1;
        }
        return out;
    }

    // var: 0 for d/dx, 1 for d/dy.
    BiPoly partial(int var) const {
        BiPoly r;
        for (const auto& [m, c] : t_) {
            if (var == 0 && m.i > 0) r.add_term({m.i - 1, m.j}, c * Rat(m.i));
            if (var == 1 && m.j > 0) r.add_term({m.i, m.j - 1}, c * Rat(m.j));
        }
        return r;
    }

    Rat eval(const Rat& x, const Rat& y) const {
        Rat acc = 0;
        for (const auto& [m, c] : t_)
            acc += c * rat_pow(x, static_cast<unsigned long>(m.i)) * rat_pow(y, static_cast<unsigned long>(m.j));
        return acc;
    }

    template <typename T, typename Conv>
    T eval_as(const T& x, const T& y, Conv conv) const {
        T acc = conv(Rat(0));
        for (const auto& [m, c] : t_) {
            T term = conv(c);
            for (int k = 0; k < m.i; ++k) term *= x;
            for (int k = 0; k < m.j; ++k) term *= y;
            acc += term;
        }
        return acc;
    }

    // p(q(x), y): substitute a univariate polynomial for x.
    BiPoly subst_x(const BiPoly& q) const {
        BiPoly out;
        for (const auto& [m, c] : t_) {
            BiPoly term = q.pow(static_cast<unsigned>(m.i)) * monomial(0, m.j, c);
            out = out + term;
        }
        return out;
    }
    // p(x, q(x, y)): substitute for y.
    BiPoly subst_y(const BiPoly& q) const {
        BiPoly out;
        for (const auto& [m, c] : t_) {
            BiPoly term = q.pow(static_cast<unsigned>(m.j)) * monomial(m.i, 0, c);
            out = out + term;
        }
        return out;
    }

    // View as a polynomial in y with coefficients in Q[x]; index = y-power.
    std::vector<UniPoly> y_coefficients() const {
        std::vector<UniPoly> out(static_cast<std::size_t>(std::max(0, degree_y() + 1)));
        for (const auto& [m, c] : t_) {
            UniPoly& slot = out[static_cast<std::size_t>(m.j)];
            slot.set_coeff(m.i, slot.coeff(m.i) + c);
        }
        return out;
    }
    static BiPoly from_y_coefficients(const std::vector<UniPoly>& ys) {
        BiPoly out;
        for (std::size_t j = 0; j < ys.size(); ++j)
            for (int i = 0; i <= ys[j].degree(); ++i) out.add_term({i, static_cast<int>(j)}, ys[j].coeff(i));
        return out;
    }

    std::string str() const;

private:
    TermMap t_;
};

inline BiPoly operator*(const Rat& s, const BiPoly& p) { return p * s; }

struct BiDivRem {
    BiPoly quot, rem;
};

// Division by a single divisor under the graded order: the remainder contains
// no monomial divisible by the divisor's leading monomial.  For an exact
// multiple the remainder is zero regardless of order, which is all the
// divisibility tests here rely on.
inline BiDivRem div_rem(const BiPoly& a, const BiPoly& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    BiPoly q, r, work = a;
    Mono lb = b.leading_mono();
    Rat lc = b.leading_coeff();
    while (!work.is_zero()) {
        Mono lm = work.leading_mono();
        if (lm.i >= lb.i && lm.j >= lb.j) {
            Mono shift{lm.i - lb.i, lm.j - lb.j};
            Rat f = work.leading_coeff() / lc;
            q.add_term(shift, f);
            work = work - BiPoly::monomial(shift.i, shift.j, f) * b;
        } else {
            r.add_term(lm, work.leading_coeff());
            work = work - BiPoly::monomial(lm.i, lm.j, work.leading_coeff());
        }
    }
    return {q, r};
}

inline std::optional<BiPoly> divide_exact(const BiPoly& a, const BiPoly& b) {
    auto dr = div_rem(a, b);
    if (!dr.rem.is_zero()) return std::nullopt;
    return dr.quot;
}

namespace detail {

// gcd over Q[x] of all y-coefficients.
inline UniPoly content_x(const BiPoly& p) {
    UniPoly g;
    for (const auto& uni : p.y_coefficients()) {
        if (uni.is_zero()) continue;
        g = g.is_zero() ? uni.monic() : gcd(g, uni);
        if (g.degree() == 0) break;
    }
    return g.is_zero() ? UniPoly() : g;
}

inline BiPoly divide_content_x(const BiPoly& p, const UniPoly& cont) {
    auto ys = p.y_coefficients();
    for (auto& uni : ys) {
        if (uni.is_zero()) continue;
        auto q = divide_exact(uni, cont);
        if (!q) throw std::logic_error("content division failed");
        uni = *q;
    }
    return BiPoly::from_y_coefficients(ys);
}

// Pseudo-remainder of a by b, both viewed as polynomials in y over Q[x].
inline BiPoly pseudo_rem_y(const BiPoly& a, const BiPoly& b) {
    auto ac = a.y_coefficients();
    auto bc = b.y_coefficients();
    int db = static_cast<int>(bc.size()) - 1;
    UniPoly lb = bc.back();
    std::vector<UniPoly> r = ac;
    int dr = static_cast<int>(r.size()) - 1;
    while (dr >= db) {
        while (dr >= 0 && r[static_cast<std::size_t>(dr)].is_zero()) --dr;
        if (dr < db) break;
        UniPoly lead = r[static_cast<std::size_t>(dr)];
        // r <- lb*r - lead*y^{dr-db}*b
        for (auto& u : r) u = u * lb;
        for (int k = 0; k <= db; ++k) {
            std::size_t idx = static_cast<std::size_t>(dr - db + k);
            r[idx] = r[idx] - lead * bc[static_cast<std::size_t>(k)];
        }
        --dr;
    }
    while (!r.empty() && r.back().is_zero()) r.pop_back();
    return BiPoly::from_y_coefficients(r);
}

}  // namespace detail

// Bivariate gcd via a primitive pseudo-remainder sequence in y over Q[x].
// The result is normalized to leading coefficient 1 in the graded order.
inline BiPoly gcd(const BiPoly& a, const BiPoly& b) {
    auto normalize = [](const BiPoly& p) {
        if (p.is_zero()) return p;
        return p * (Rat(1) / p.leading_coeff());
    };
    if (a.is_zero()) return normalize(b);
    if (b.is_zero()) return normalize(a);

    UniPoly cont_a = detail::content_x(a);
    UniPoly cont_b = detail::content_x(b);
    BiPoly pa = detail::divide_content_x(a, cont_a);
    BiPoly pb = detail::divide_content_x(b, cont_b);
    UniPoly cont_g = gcd(cont_a, cont_b);

    // Primitive part gcd in y.
    BiPoly f = pa, g = pb;
    if (f.degree_y() < g.degree_y()) std::swap(f, g);
    BiPoly pp_gcd;
    if (g.degree_y() == 0) {
        // g is free of y; its primitive part over Q[x] is a constant, so the
        // y-part of the gcd is trivial.
        pp_gcd = BiPoly::constant(1);
    } else {
        while (true) {
            BiPoly r = detail::pseudo_rem_y(f, g);
            if (r.is_zero()) {
                pp_gcd = g;
                break;
            }
            if (r.degree_y() == 0) {
                pp_gcd = BiPoly::constant(1);
                break;
            }
            r = detail::divide_content_x(r, detail::content_x(r));
            f = g;
            g = r;
        }
        pp_gcd = detail::divide_content_x(pp_gcd, detail::content_x(pp_gcd));
    }

    BiPoly result = BiPoly::from_uni(cont_g.is_zero() ? UniPoly::constant(1) : cont_g, 0) * pp_gcd;
    return normalize(result);
}

inline std::string BiPoly::str() const {
    if (is_zero()) return "0";
    std::string s;
    // Leading term first: iterate the graded order from the top.
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        const Mono& m = it->first;
        const Rat& v = it->second;
        Rat mag = v < 0 ? Rat(-v) : v;
        if (!s.empty())
            s += (v < 0) ? " - " : " + ";
        else if (v < 0)
            s += "-";
        std::string body;
        if (m.i > 0) {
            body += "x";
            if (m.i > 1) body += "^" + std::to_string(m.i);
        }
        if (m.j > 0) {
            if (!body.empty()) body += "*";
            body += "y";
            if (m.j > 1) body += "^" + std::to_string(m.j);
        }
        if (body.empty()) {
            s += rat_str(mag);
        } else {
            if (mag != 1) s += rat_str(mag) + "*";
            s += body;
        }
    }
    return s;
}

}  // namespace kwp
