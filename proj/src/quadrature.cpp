#include "kwp/quadrature.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace kwp {

PrecisionGuard::PrecisionGuard(int digits) : prev_(Real::default_precision()) {
    Real::default_precision(static_cast<unsigned>(digits));
}

PrecisionGuard::~PrecisionGuard() { Real::default_precision(prev_); }

namespace {

using PrecScope = PrecisionGuard;

int sign_of(const Real& v) { return v == 0 ? 0 : (v < 0 ? -1 : 1); }

std::string weight_label(const UnivariateWeight& w) {
    std::string out = w.family + "(";
    bool first = true;
    for (const auto& [k, v] : w.params) {
        if (!first) out += ",";
        first = false;
        out += k + "=" + rat_str(v);
    }
    return out + ")";
}

// Evaluates the monic polynomial of the given degree and its derivative at x
// from the three-term recurrence coefficients.
struct MonicEval {
    const std::vector<Real>* b;
    const std::vector<Real>* c;
    int degree;

    std::pair<Real, Real> operator()(const Real& x) const {
        Real pm1 = 0, p = 1, dpm1 = 0, dp = 0;
        for (int k = 0; k < degree; ++k) {
            Real pn = (x - (*b)[k]) * p - (*c)[k] * pm1;
            Real dpn = (x - (*b)[k]) * dp + p - (*c)[k] * dpm1;
            pm1 = p;
            p = pn;
            dpm1 = dp;
            dp = dpn;
        }
        return {p, dp};
    }
};

// Safeguarded Newton iteration on a sign-change bracket.
Real rtsafe(const MonicEval& f, const Real& x1, const Real& x2, int digits) {
    Real f1 = f(x1).first, f2 = f(x2).first;
    if (f1 == 0) return x1;
    if (f2 == 0) return x2;
    if (sign_of(f1) == sign_of(f2))
        throw std::runtime_error("non-bracketable root between " + x1.str(8) + " and " +
                                 x2.str(8) + " (invalid weight?)");
    Real xl = x1, xh = x2;
    if (f1 > 0) std::swap(xl, xh);  // keep f(xl) < 0 < f(xh)
    Real rts = (x1 + x2) / 2;
    Real dxold = abs(x2 - x1), dx = dxold;
    auto [fv, dv] = f(rts);
    Real eps = pow(Real(10), -(digits + 2));
    for (int it = 0; it < 64 * digits; ++it) {
        bool bisect = dv == 0 || (((rts - xh) * dv - fv) * ((rts - xl) * dv - fv) > 0) ||
                      abs(fv * 2) > abs(dxold * dv);
        if (bisect) {
            dxold = dx;
            dx = (xh - xl) / 2;
            rts = xl + dx;
            if (rts == xl) return rts;
        } else {
            dxold = dx;
            dx = fv / dv;
            Real prev = rts;
            rts -= dx;
            if (prev == rts) return rts;
        }
        if (abs(dx) < eps * (abs(rts) + 1)) return rts;
        std::tie(fv, dv) = f(rts);
        if (fv < 0)
            xl = rts;
        else
            xh = rts;
    }
    return rts;
}

// Roots of the degree-k monic polynomial given the roots of degree k-1
// (interlacing brackets; infinite interval ends expanded geometrically).
std::vector<Real> level_roots(const MonicEval& f, int k, const std::vector<Real>& prev,
                              const Bound& lo, const Bound& hi, int digits) {
    Real left;
    if (lo.is_finite()) {
        left = to_real(lo.value);
    } else {
        int want = (k % 2 == 0) ? 1 : -1;  // sign of a monic polynomial at -infinity
        left = prev.empty() ? Real(-1) : prev.front() - 1;
        int guard = 0;
        while (sign_of(f(left).first) != want) {
            left -= abs(left) + 1;
            if (++guard > 512) throw std::runtime_error("cannot bracket the smallest root");
        }
    }
    Real right;
    if (hi.is_finite()) {
        right = to_real(hi.value);
    } else {
        right = prev.empty() ? Real(1) : prev.back() + 1;
        int guard = 0;
        while (sign_of(f(right).first) != 1) {
            right += abs(right) + 1;
            if (++guard > 512) throw std::runtime_error("cannot bracket the largest root");
        }
    }
    std::vector<Real> out;
    Real a = left;
    for (std::size_t i = 0; i <= prev.size(); ++i) {
        Real b = (i < prev.size()) ? prev[i] : right;
        out.push_back(rtsafe(f, a, b, digits));
        a = b;
    }
    return out;
}

}  // namespace

Real to_real(const Rat& r) {
    return Real(r.get_num().get_str()) / Real(r.get_den().get_str());
}

Real eval_real(const UniPoly& p, const Real& x) {
    Real v = 0;
    for (int k = p.degree(); k >= 0; --k) v = v * x + to_real(p.coeff(k));
    return v;
}

Real eval_real(const BiPoly& p, const Real& x, const Real& y) {
    Real v = 0;
    for (const auto& [mono, c] : p.terms())
        v += to_real(c) * pow(x, mono.i) * pow(y, mono.j);
    return v;
}

Real weight_mass(const UnivariateWeight& w, int digits) {
    PrecScope scope(digits);
    auto param = [&](const char* name) { return to_real(w.params.at(name)); };
    if (w.family == "jacobi_sym") {
        Real a = param("alpha"), b = param("beta");
        return pow(Real(2), a + b + 1) * tgamma(a + 1) * tgamma(b + 1) / tgamma(a + b + 2);
    }
    if (w.family == "jacobi01") {
        Real a = param("alpha"), b = param("beta");
        return tgamma(a + 1) * tgamma(b + 1) / tgamma(a + b + 2);
    }
    if (w.family == "laguerre") return tgamma(param("alpha") + 1);
    if (w.moment_base) {
        const UniPoly& mult = w.moment_multiplier;
        auto nu = normalized_moments(*w.moment_base, mult.degree() + 1);
        Rat s = 0;
        for (int j = 0; j <= mult.degree(); ++j) s += mult.coeff(j) * nu[static_cast<size_t>(j)];
        if (s <= 0) throw std::invalid_argument("weight " + weight_label(w) + " has nonpositive mass");
        return to_real(s) * weight_mass(*w.moment_base, digits);
    }
    throw std::invalid_argument("no closed-form mass for weight " + weight_label(w));
}

Real GaussRule::integrate(const UniPoly& f) const {
    PrecScope scope(digits + 10);
    Real s = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * eval_real(f, nodes[i]);
    return s;
}

GaussRule gauss_rule(const UnivariateWeight& w, int n, int digits) {
    if (n < 1) throw std::invalid_argument("gauss_rule requires n >= 1");
    if (digits < kMinDigits) throw std::invalid_argument("precision must be at least 15 digits");
    int work = digits + 10;
    PrecScope scope(work);

    Recurrence rec = monic_recurrence(w, n);
    std::vector<Real> b, c;
    for (const Rat& v : rec.b) b.push_back(to_real(v));
    for (const Rat& v : rec.c) c.push_back(to_real(v));

    std::vector<Real> roots;
    for (int k = 1; k <= n; ++k)
        roots = level_roots(MonicEval{&b, &c, k}, k, roots, w.lo, w.hi, work);

    auto h = normalized_norms(rec, n - 1);  // h_0 .. h_{n-1}
    std::vector<Real> hr;
    for (const Rat& v : h) hr.push_back(to_real(v));
    Real mass = weight_mass(w, work);

    GaussRule rule;
    rule.n = n;
    rule.digits = digits;
    rule.source = weight_label(w);
    rule.nodes = roots;
    for (const Real& x : roots) {
        Real pm1 = 0, p = 1, s = 0;
        for (int k = 0; k < n; ++k) {
            s += p * p / hr[static_cast<size_t>(k)];
            Real pn = (x - b[static_cast<size_t>(k)]) * p - c[static_cast<size_t>(k)] * pm1;
            pm1 = p;
            p = pn;
        }
        rule.weights.push_back(mass / s);
    }

    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        bool ok = rule.weights[i] > 0;
        if (i > 0) ok = ok && rule.nodes[i] > rule.nodes[i - 1];
        if (w.lo.is_finite()) ok = ok && rule.nodes[i] > to_real(w.lo.value);
        if (w.hi.is_finite()) ok = ok && rule.nodes[i] < to_real(w.hi.value);
        if (!ok)
            throw std::runtime_error("gauss rule for " + rule.source +
                                     " failed validation (invalid weight?)");
    }
    return rule;
}

struct QuadEngine::Impl {
    KoornwinderSystem sys;
    int max_degree;
    int digits;
    std::vector<Real> m2abs;    // absolute moments of the second weight
    std::vector<bool> m2zero;   // exact-zero flags from the rational moments
    std::vector<UniPoly> rpow;  // linear rho: rho^k; sqrt rho: (rho^2)^k
    GaussRule rule_main;        // against w1
    GaussRule rule_odd;         // against rho * w1 (sqrt case, odd rho powers)
    bool has_odd = false;
};

QuadEngine::QuadEngine(const KoornwinderSystem& sys, int max_degree, int digits)
    : impl_(std::make_unique<Impl>()) {
    if (max_degree < 0) throw std::invalid_argument("max_degree must be nonnegative");
    if (digits < kMinDigits) throw std::invalid_argument("precision must be at least 15 digits");
    impl_->sys = sys;
    impl_->max_degree = max_degree;
    impl_->digits = digits;
    int work = digits + 10;
    PrecScope scope(work);

    Real mass2 = weight_mass(sys.w2, work);
    auto nu = normalized_moments(sys.w2, max_degree + 1);
    for (int j = 0; j <= max_degree; ++j) {
        impl_->m2abs.push_back(to_real(nu[static_cast<size_t>(j)]) * mass2);
        impl_->m2zero.push_back(nu[static_cast<size_t>(j)] == 0);
    }

    const int D = max_degree;
    int deg_main = 0, deg_odd = 0;
    if (sys.rho.is_linear()) {
        const UniPoly& l = sys.rho.linear;
        impl_->rpow.push_back(UniPoly::constant(1));
        for (int k = 1; k <= D + 1; ++k) impl_->rpow.push_back(impl_->rpow.back() * l);
        for (int j = 0; j <= D; ++j)
            deg_main = std::max(deg_main, D - j + impl_->rpow[static_cast<size_t>(j + 1)].degree());
        impl_->rule_main = gauss_rule(sys.w1, deg_main / 2 + 1, digits);
    } else {
        const UniPoly& s = sys.rho.square;
        impl_->rpow.push_back(UniPoly::constant(1));
        for (int k = 1; k <= (D + 2) / 2; ++k) impl_->rpow.push_back(impl_->rpow.back() * s);
        for (int j = 0; j <= D; ++j) {
            if (j % 2 == 1)  // rho^(j+1) is an exact power of rho^2
                deg_main = std::max(
                    deg_main, D - j + impl_->rpow[static_cast<size_t>((j + 1) / 2)].degree());
            else  // one rho factor left over, absorbed into the modified weight
                deg_odd = std::max(deg_odd,
                                   D - j + impl_->rpow[static_cast<size_t>(j / 2)].degree());
        }
        impl_->rule_main = gauss_rule(sys.w1, deg_main / 2 + 1, digits);
        impl_->rule_odd = gauss_rule(rho_modified(sys.w1, sys.rho, 0), deg_odd / 2 + 1, digits);
        impl_->has_odd = true;
    }
}

QuadEngine::~QuadEngine() = default;
QuadEngine::QuadEngine(QuadEngine&&) noexcept = default;
QuadEngine& QuadEngine::operator=(QuadEngine&&) noexcept = default;

int QuadEngine::max_degree() const { return impl_->max_degree; }
int QuadEngine::digits() const { return impl_->digits; }

Real QuadEngine::inner(const BiPoly& p, const BiPoly& q) const {
    PrecScope scope(impl_->digits + 10);
    BiPoly r = p * q;
    if (r.is_zero()) return Real(0);
    if (r.total_degree() > impl_->max_degree)
        throw std::invalid_argument("inner product degree " + std::to_string(r.total_degree()) +
                                    " exceeds engine bound " +
                                    std::to_string(impl_->max_degree));
    std::vector<UniPoly> slices(static_cast<size_t>(r.total_degree()) + 1);
    for (const auto& [mono, c] : r.terms())
        slices[static_cast<size_t>(mono.j)].set_coeff(mono.i, slices[static_cast<size_t>(mono.j)].coeff(mono.i) + c);

    Real total = 0;
    for (int j = 0; j < static_cast<int>(slices.size()); ++j) {
        if (slices[static_cast<size_t>(j)].is_zero() || impl_->m2zero[static_cast<size_t>(j)])
            continue;
        UniPoly f;
        const GaussRule* rule;
        if (impl_->sys.rho.is_linear()) {
            f = slices[static_cast<size_t>(j)] * impl_->rpow[static_cast<size_t>(j + 1)];
            rule = &impl_->rule_main;
        } else if (j % 2 == 1) {
            f = slices[static_cast<size_t>(j)] * impl_->rpow[static_cast<size_t>((j + 1) / 2)];
            rule = &impl_->rule_main;
        } else {
            f = slices[static_cast<size_t>(j)] * impl_->rpow[static_cast<size_t>(j / 2)];
            rule = &impl_->rule_odd;
        }
        total += impl_->m2abs[static_cast<size_t>(j)] * rule->integrate(f);
    }
    return total;
}

Real inner_product(const KoornwinderSystem& sys, const BiPoly& p, const BiPoly& q, int digits) {
    int d = std::max(p.total_degree(), 0) + std::max(q.total_degree(), 0);
    return QuadEngine(sys, d, digits).inner(p, q);
}

std::string OrthoReport::summary() const {
    std::ostringstream os;
    if (!norms_positive) {
        os << "orthocheck fail: nonpositive squared norm at (" << offending.first << ", "
           << offending.second << ")";
        return os.str();
    }
    os << "orthocheck " << (pass ? "pass" : "fail") << ": max residual "
       << max_residual.str(3, std::ios_base::scientific) << " at (" << worst[0] << "," << worst[1]
       << ")x(" << worst[2] << "," << worst[3] << "), nmax=" << nmax << ", digits=" << digits
       << ", tol=" << tol;
    return os.str();
}

OrthoReport orthocheck(const KoornwinderSystem& sys, int nmax, int digits, double tol) {
    if (nmax < 1) throw std::invalid_argument("orthocheck requires nmax >= 1");
    PrecScope scope(digits + 10);
    OrthoReport rep;
    rep.nmax = nmax;
    rep.digits = digits;
    rep.tol = tol;
    rep.max_residual = Real(0);

    BasisTable table(sys, nmax);
    QuadEngine engine(sys, 2 * nmax, digits);

    std::vector<std::pair<int, int>> idx;
    for (int n = 0; n <= nmax; ++n)
        for (int m = 0; m <= n; ++m) idx.emplace_back(n, m);

    std::vector<Real> norm2;
    for (const auto& [n, m] : idx) {
        Real v = engine.inner(table.at(n, m), table.at(n, m));
        if (v <= 0) {
            rep.norms_positive = false;
            rep.offending = {n, m};
            rep.pass = false;
            return rep;
        }
        norm2.push_back(v);
    }
    std::vector<Real> norm;
    for (const Real& v : norm2) norm.push_back(sqrt(v));

    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = i + 1; j < idx.size(); ++j) {
            Real res = abs(engine.inner(table.at(idx[i].first, idx[i].second),
                                        table.at(idx[j].first, idx[j].second))) /
                       (norm[i] * norm[j]);
            if (res > rep.max_residual) {
                rep.max_residual = res;
                rep.worst = {idx[i].first, idx[i].second, idx[j].first, idx[j].second};
            }
        }
    rep.pass = rep.max_residual <= Real(tol);
    return rep;
}

std::string MomentMatrixVerdict::summary() const {
    std::ostringstream os;
    os << "moment matrix " << (pass ? "pass" : "fail") << ": |det| = "
       << Real(abs(det)).str(3, std::ios_base::scientific) << ", scale = "
       << scale.str(3, std::ios_base::scientific);
    return os.str();
}

MomentMatrixVerdict moment_matrix_check(const PearsonPair& pair, const KoornwinderSystem& sys,
                                        int digits) {
    if (!pair.verified)
        throw std::invalid_argument("moment_matrix_check requires a verified Pearson pair");
    PrecScope scope(digits + 10);
    int d = std::max({pair.phi11.total_degree(), pair.phi12.total_degree(),
                      pair.phi22.total_degree(), 0});
    QuadEngine engine(sys, d, digits);
    BiPoly one = BiPoly::constant(1);
    MomentMatrixVerdict v;
    v.digits = digits;
    v.entries = {engine.inner(one, pair.phi11), engine.inner(one, pair.phi12),
                 engine.inner(one, pair.phi22)};
    v.det = v.entries[0] * v.entries[2] - v.entries[1] * v.entries[1];
    Real top = std::max({abs(v.entries[0]), abs(v.entries[1]), abs(v.entries[2])});
    v.scale = top * top;
    v.pass = v.scale > 0 && abs(v.det) > v.scale * pow(Real(10), -digits / 2);
    return v;
}

}  // namespace kwp
