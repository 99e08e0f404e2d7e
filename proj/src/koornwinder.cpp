#include "kwp/koornwinder.hpp"

#include <algorithm>
#include <stdexcept>

namespace kwp {

namespace {

std::vector<Rat> interior_samples(const Bound& lo, const Bound& hi) {
    if (lo.is_finite() && hi.is_finite()) {
        std::vector<Rat> out;
        for (long k = 1; k <= 5; ++k) out.push_back(lo.value + (hi.value - lo.value) * rat(k, 6));
        return out;
    }
    if (lo.is_finite()) return {lo.value + rat(1, 2), lo.value + 1, lo.value + 2, lo.value + 3, lo.value + 5};
    if (hi.is_finite()) return {hi.value - rat(1, 2), hi.value - 1, hi.value - 2, hi.value - 3, hi.value - 5};
    return {rat(-2), rat(-1), rat(0), rat(1), rat(2)};
}

// Reflection t -> -t of a density factor base, scaled back to a canonical
// primitive representative (positive leading part kept as produced).
UniPoly reflect_base(const UniPoly& p) {
    std::vector<Rat> c(p.coeffs());
    for (std::size_t k = 0; k < c.size(); ++k)
        if (k % 2 == 1) c[k] = -c[k];
    UniPoly q{std::move(c)};
    // Fix overall sign so the constant-or-leading coefficient stays positive
    // when possible, matching how family densities are written (1-t vs t-1).
    for (int k = 0; k <= q.degree(); ++k) {
        if (q.coeff(k) == 0) continue;
        if (q.coeff(k) < 0) q = -q;
        break;
    }
    return q;
}

bool density_is_even(const FactoredDensity& d) {
    for (int k = 1; k <= d.exp_arg.degree(); k += 2)
        if (d.exp_arg.coeff(k) != 0) return false;  // exp argument must be even
    std::vector<bool> used(d.factors.size(), false);
    for (std::size_t i = 0; i < d.factors.size(); ++i) {
        if (used[i]) continue;
        const UniPoly& b = d.factors[i].base;
        UniPoly r = reflect_base(b);
        if (r == b) {
            used[i] = true;  // even (or odd) base is self-matched
            continue;
        }
        bool matched = false;
        for (std::size_t j = i + 1; j < d.factors.size(); ++j) {
            if (used[j]) continue;
            if (d.factors[j].base == r && d.factors[j].exponent == d.factors[i].exponent) {
                used[i] = used[j] = true;
                matched = true;
                break;
            }
        }
        if (!matched) return false;
    }
    return true;
}

// Insert a factor into a coprime factored list, splitting shared divisors.
void insert_bi_factor(std::vector<std::pair<BiPoly, Rat>>& fs, BiPoly base, Rat e) {
    if (e == 0 || base.is_constant()) return;
    // Primitive integer scaling (positive scalar only; sign is meaningful).
    Int l = 1;
    for (const auto& [m, c] : base.terms()) l = Int(lcm(l, c.get_den()));
    base = base * Rat(l);
    Int g = 0;
    for (const auto& [m, c] : base.terms()) g = Int(gcd(g, c.get_num()));
    if (g > 1) base = base * rat(Int(1), g);

    for (std::size_t i = 0; i < fs.size(); ++i) {
        if (fs[i].first == base || fs[i].first == -base) {
            fs[i].second += e;
            if (fs[i].second == 0) fs.erase(fs.begin() + static_cast<long>(i));
            return;
        }
        BiPoly common = gcd(fs[i].first, base);
        if (common.degree() > 0) {
            auto [bi, ei] = fs[i];
            fs.erase(fs.begin() + static_cast<long>(i));
            BiPoly rest_i = *divide_exact(bi, common);
            BiPoly rest_new = *divide_exact(base, common);
            insert_bi_factor(fs, common, ei + e);
            insert_bi_factor(fs, rest_i, ei);
            insert_bi_factor(fs, rest_new, e);
            return;
        }
    }
    fs.push_back({base, e});
}

}  // namespace

KoornwinderSystem make_system(const UnivariateWeight& w1, const UnivariateWeight& w2,
                              const RhoFunction& rho) {
    KoornwinderSystem sys{w1, w2, rho, {}};

    auto xs = interior_samples(w1.lo, w1.hi);
    if (rho.is_linear()) {
        for (const auto& s : xs)
            if (rho.linear.eval(s) <= 0)
                throw std::invalid_argument("Case I requires rho > 0 on the x-interval (fails at x=" +
                                            rat_str(s) + ")");
    } else {
        for (const auto& s : xs)
            if (rho.square.eval(s) <= 0)
                throw std::invalid_argument("Case II requires rho^2 > 0 inside the x-interval");
        if (w1.lo.is_finite() && rho.square.eval(w1.lo.value) < 0)
            throw std::invalid_argument("Case II requires rho^2 >= 0 at the left endpoint");
        if (w1.hi.is_finite() && rho.square.eval(w1.hi.value) < 0)
            throw std::invalid_argument("Case II requires rho^2 >= 0 at the right endpoint");
        if (!(w2.lo.is_finite() && w2.hi.is_finite() && w2.lo.value == -w2.hi.value && w2.hi.value > 0))
            throw std::invalid_argument("Case II requires a symmetric w2 interval (-d, d)");
        if (!density_is_even(w2.density)) throw std::invalid_argument("Case II requires even w2");
    }

    DomainDescriptor& dom = sys.domain;
    dom.x_lo = w1.lo;
    dom.x_hi = w1.hi;
    dom.y_lo = w2.lo;
    dom.y_hi = w2.hi;

    BiPoly x = BiPoly::x(), y = BiPoly::y();
    if (dom.x_lo.is_finite()) dom.boundary.push_back(x - BiPoly::constant(dom.x_lo.value));
    if (dom.x_hi.is_finite()) dom.boundary.push_back(BiPoly::constant(dom.x_hi.value) - x);
    if (rho.is_linear()) {
        BiPoly r = BiPoly::from_uni(rho.linear, 0);
        if (dom.y_lo.is_finite()) dom.boundary.push_back(y - r * dom.y_lo.value);
        if (dom.y_hi.is_finite()) dom.boundary.push_back(r * dom.y_hi.value - y);
    } else {
        BiPoly rsq = BiPoly::from_uni(rho.square, 0);
        dom.boundary.push_back(rsq * (dom.y_hi.value * dom.y_hi.value) - y * y);
    }
    return sys;
}

BiPoly lift(const UniPoly& q, const RhoFunction& rho, int m) {
    if (m < 0 || q.degree() > m) throw std::invalid_argument("lift requires deg q <= m");
    BiPoly out;
    for (int j = 0; j <= q.degree(); ++j) {
        const Rat& cj = q.coeff(j);
        if (cj == 0) continue;
        int k = m - j;  // residual rho power
        BiPoly rho_pow;
        if (rho.is_linear()) {
            rho_pow = BiPoly::from_uni(rho.linear.pow(static_cast<unsigned>(k)), 0);
        } else {
            if (k % 2 != 0)
                throw std::domain_error("non-polynomial lift: odd rho power in Case II (parity violation)");
            rho_pow = BiPoly::from_uni(rho.square.pow(static_cast<unsigned>(k / 2)), 0);
        }
        out = out + rho_pow * BiPoly::monomial(0, j, cj);
    }
    return out;
}

BiPoly build_polynomial(const KoornwinderSystem& sys, int n, int m) {
    if (m < 0 || m > n) throw std::invalid_argument("build_polynomial requires 0 <= m <= n");
    UnivariateWeight um = rho_modified(sys.w1, sys.rho, m);
    UniPoly p = monic_poly(um, n - m);
    UniPoly q = monic_poly(sys.w2, m);
    return BiPoly::from_uni(p, 0) * lift(q, sys.rho, m);
}

BasisTable::BasisTable(const KoornwinderSystem& sys, int nmax) : nmax_(nmax) {
    rows_.resize(static_cast<std::size_t>(nmax) + 1);
    for (int m = 0; m <= nmax; ++m) {
        UnivariateWeight um = rho_modified(sys.w1, sys.rho, m);
        Recurrence rec = monic_recurrence(um, std::max(1, nmax - m));
        BiPoly lifted = lift(monic_poly(sys.w2, m), sys.rho, m);
        auto& row = rows_[static_cast<std::size_t>(m)];
        row.reserve(static_cast<std::size_t>(nmax - m) + 1);
        for (int k = 0; k <= nmax - m; ++k)
            row.push_back(BiPoly::from_uni(monic_poly(rec, k), 0) * lifted);
    }
}

const BiPoly& BasisTable::at(int n, int m) const {
    if (m < 0 || m > n || n > nmax_) throw std::out_of_range("basis index out of range");
    return rows_[static_cast<std::size_t>(m)][static_cast<std::size_t>(n - m)];
}

FactoredWeight2 factored_weight(const KoornwinderSystem& sys) {
    FactoredWeight2 fw;
    // w1 factors carry over as x-polynomials.
    for (const auto& f : sys.w1.density.factors)
        insert_bi_factor(fw.factors, BiPoly::from_uni(f.base, 0), f.exponent);

    // w2 factors: each base g(t) becomes rho^{deg g} g(y/rho) with the
    // residual power rho^{-deg g} collected and folded in at the end.  In
    // Case II a base without parity is first paired with its reflection.
    Rat rho_exponent = 0;  // accumulated power of rho
    struct Pending {
        UniPoly base;
        Rat exponent;
    };
    std::vector<Pending> pending;
    for (const auto& f : sys.w2.density.factors) pending.push_back({f.base, f.exponent});
    std::vector<bool> done(pending.size(), false);
    for (std::size_t i = 0; i < pending.size(); ++i) {
        if (done[i]) continue;
        UniPoly g = pending[i].base;
        Rat e = pending[i].exponent;
        bool has_parity = true;
        int par = -1;
        for (int k = 0; k <= g.degree(); ++k) {
            if (g.coeff(k) == 0) continue;
            if (par < 0)
                par = k % 2;
            else if (k % 2 != par)
                has_parity = false;
        }
        if (!sys.rho.is_linear() && !has_parity) {
            UniPoly r = reflect_base(g);
            bool paired = false;
            for (std::size_t j = i + 1; j < pending.size(); ++j) {
                if (done[j]) continue;
                if (pending[j].base == r && pending[j].exponent == e) {
                    g = g * pending[j].base;
                    done[j] = true;
                    paired = true;
                    break;
                }
            }
            if (!paired)
                throw std::domain_error(
                    "weight not expressible in factored polynomial form: base " + g.str() +
                    " cannot clear its rho denominator");
        }
        done[i] = true;
        int d = g.degree();
        // rho^d g(y/rho) via the same mechanism as the basis lift.
        BiPoly lifted = lift(g, sys.rho, d);
        insert_bi_factor(fw.factors, lifted, e);
        rho_exponent -= Rat(d) * e;
    }

    if (rho_exponent != 0) {
        if (sys.rho.is_linear())
            insert_bi_factor(fw.factors, BiPoly::from_uni(sys.rho.linear, 0), rho_exponent);
        else
            insert_bi_factor(fw.factors, BiPoly::from_uni(sys.rho.square, 0), rho_exponent / 2);
    }

    // exp arguments: w1's in x, w2's composed with y/rho.
    RatFun2 arg(BiPoly::from_uni(sys.w1.density.exp_arg, 0));
    const UniPoly& a2 = sys.w2.density.exp_arg;
    for (int k = 0; k <= a2.degree(); ++k) {
        if (a2.coeff(k) == 0) continue;
        if (k == 0) {
            arg = arg + RatFun2(BiPoly::constant(a2.coeff(0)));
            continue;
        }
        BiPoly yk = BiPoly::monomial(0, k, a2.coeff(k));
        BiPoly den;
        if (sys.rho.is_linear()) {
            den = BiPoly::from_uni(sys.rho.linear.pow(static_cast<unsigned>(k)), 0);
        } else {
            if (k % 2 != 0)
                throw std::domain_error(
                    "weight not expressible in factored polynomial form: odd exponential term in Case II");
            den = BiPoly::from_uni(sys.rho.square.pow(static_cast<unsigned>(k / 2)), 0);
        }
        arg = arg + RatFun2(yk, den);
    }
    fw.exp_argument = arg;
    return fw;
}

Vec2RF grad_log_weight(const FactoredWeight2& fw) {
    Vec2RF g{RatFun2(Rat(0)), RatFun2(Rat(0))};
    for (const auto& [base, e] : fw.factors) {
        g.a = g.a + RatFun2(base.partial(0) * e, base);
        g.b = g.b + RatFun2(base.partial(1) * e, base);
    }
    g.a = g.a + fw.exp_argument.partial(0);
    g.b = g.b + fw.exp_argument.partial(1);
    return g;
}

Vec2RF grad_log_weight(const KoornwinderSystem& sys) { return grad_log_weight(factored_weight(sys)); }

}  // namespace kwp
