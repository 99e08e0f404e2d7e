#include "kwp/weights.hpp"

#include <algorithm>
#include <stdexcept>

namespace kwp {

std::string Bound::str() const {
    switch (kind) {
        case Kind::NegInf: return "-inf";
        case Kind::PosInf: return "+inf";
        default: return rat_str(value);
    }
}

namespace {

// Interior sample points, used both for positivity validation and for
// sign-normalizing density factors.
std::vector<Rat> sample_points(const Bound& lo, const Bound& hi) {
    if (lo.is_finite() && hi.is_finite()) {
        std::vector<Rat> out;
        for (long k = 1; k <= 5; ++k) out.push_back(lo.value + (hi.value - lo.value) * rat(k, 6));
        return out;
    }
    if (lo.is_finite() && hi.kind == Bound::Kind::PosInf) {
        return {lo.value + rat(1, 2), lo.value + 1, lo.value + 2, lo.value + 3, lo.value + 5};
    }
    if (lo.kind == Bound::Kind::NegInf && hi.is_finite()) {
        return {hi.value - rat(1, 2), hi.value - 1, hi.value - 2, hi.value - 3, hi.value - 5};
    }
    return {rat(-2), rat(-1), rat(0), rat(1), rat(2)};
}

void check_density_positive(const UnivariateWeight& w) {
    auto samples = sample_points(w.lo, w.hi);
    for (const auto& f : w.density.factors)
        for (const auto& s : samples)
            if (f.base.eval(s) <= 0)
                throw std::invalid_argument("density factor " + f.base.str() +
                                            " is not positive inside the interval at x=" + rat_str(s));
}

void require_param_gt(const std::string& family, const std::map<std::string, Rat>& params,
                      const std::string& name, const Rat& floor) {
    auto it = params.find(name);
    if (it == params.end())
        throw std::invalid_argument(family + " requires parameter '" + name + "'");
    if (!(it->second > floor))
        throw std::invalid_argument(family + " requires " + name + " > " + rat_str(floor) +
                                    " (got " + rat_str(it->second) + ")");
}

// Scale to primitive integer coefficients, sign fixed positive at the first
// sample where the factor does not vanish.
UniPoly canonical_base(const UniPoly& p, const std::vector<Rat>& samples) {
    Int l = 1;
    for (const auto& c : p.coeffs()) l = Int(lcm(l, c.get_den()));
    UniPoly q = p * Rat(l);
    Int g = 0;
    for (const auto& c : q.coeffs()) g = Int(gcd(g, c.get_num()));
    if (g > 1) q = q * rat(Int(1), g);
    for (const auto& s : samples) {
        Rat v = q.eval(s);
        if (v != 0) {
            if (v < 0) q = -q;
            break;
        }
    }
    return q;
}

void insert_factor(std::vector<DensityFactor>& out, const UniPoly& base, const Rat& exponent,
                   const std::vector<Rat>& samples) {
    if (exponent == 0 || base.degree() < 1) return;
    for (const auto& f : factor_over_q(base)) {
        UniPoly b = canonical_base(f.base, samples);
        Rat e = exponent * Rat(f.exponent);
        bool merged = false;
        for (auto& existing : out)
            if (existing.base == b) {
                existing.exponent += e;
                merged = true;
                break;
            }
        if (!merged) out.push_back({b, e});
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const DensityFactor& f) { return f.exponent == 0; }),
              out.end());
}

const UniPoly kOneMinusX = UniPoly({Rat(1), Rat(-1)});
const UniPoly kOnePlusX = UniPoly({Rat(1), Rat(1)});
const UniPoly kX = UniPoly::x();

std::optional<Rat> exponent_of(const std::vector<DensityFactor>& fs, const UniPoly& base) {
    for (const auto& f : fs)
        if (f.base == base) return f.exponent;
    return Rat(0);
}

// Try to identify a factored density with one of the built-in families.
std::optional<UnivariateWeight> recognize_family(const std::vector<DensityFactor>& factors,
                                                 const UniPoly& exp_arg, const Bound& lo,
                                                 const Bound& hi) {
    auto only_bases = [&factors](std::initializer_list<const UniPoly*> allowed) {
        for (const auto& f : factors) {
            bool ok = false;
            for (const UniPoly* b : allowed) ok = ok || (f.base == *b);
            if (!ok) return false;
        }
        return true;
    };
    try {
        if (exp_arg.is_zero() && lo.is_finite() && hi.is_finite() && lo.value == -1 && hi.value == 1 &&
            only_bases({&kOneMinusX, &kOnePlusX})) {
            return make_family("jacobi_sym", {{"alpha", *exponent_of(factors, kOneMinusX)},
                                              {"beta", *exponent_of(factors, kOnePlusX)}});
        }
        if (exp_arg.is_zero() && lo.is_finite() && hi.is_finite() && lo.value == 0 && hi.value == 1 &&
            only_bases({&kOneMinusX, &kX})) {
            return make_family("jacobi01", {{"alpha", *exponent_of(factors, kOneMinusX)},
                                            {"beta", *exponent_of(factors, kX)}});
        }
        if (exp_arg == -kX && lo.is_finite() && lo.value == 0 && hi.kind == Bound::Kind::PosInf &&
            only_bases({&kX})) {
            return make_family("laguerre", {{"alpha", *exponent_of(factors, kX)}});
        }
    } catch (const std::invalid_argument&) {
        return std::nullopt;  // pattern matched but parameters out of range
    }
    return std::nullopt;
}

Rat jacobi_sym_b(const Rat& a, const Rat& b, long k) {
    if (k == 0) return (b - a) / (a + b + 2);
    Rat t = 2 * Rat(k) + a + b;
    return (b * b - a * a) / (t * (t + 2));
}

Rat jacobi_sym_c(const Rat& a, const Rat& b, long k) {
    Rat s = a + b;
    if (k == 1) return 4 * (a + 1) * (b + 1) / ((s + 2) * (s + 2) * (s + 3));
    Rat t = 2 * Rat(k) + s;
    return 4 * Rat(k) * (Rat(k) + a) * (Rat(k) + b) * (Rat(k) + s) / ((t - 1) * t * t * (t + 1));
}

}  // namespace

UnivariateWeight make_family(const std::string& name, const std::map<std::string, Rat>& params) {
    UnivariateWeight w;
    w.family = name;
    w.params = params;
    if (name == "jacobi_sym") {
        require_param_gt(name, params, "alpha", rat(-1));
        require_param_gt(name, params, "beta", rat(-1));
        Rat a = params.at("alpha"), b = params.at("beta");
        w.lo = Bound::finite(rat(-1));
        w.hi = Bound::finite(rat(1));
        if (a != 0) w.density.factors.push_back({kOneMinusX, a});
        if (b != 0) w.density.factors.push_back({kOnePlusX, b});
        w.pearson_phi = UniPoly({Rat(1), Rat(0), Rat(-1)});          // 1 - x^2
        w.pearson_psi = UniPoly({b - a, -(a + b + 2)});
    } else if (name == "jacobi01") {
        require_param_gt(name, params, "alpha", rat(-1));
        require_param_gt(name, params, "beta", rat(-1));
        Rat a = params.at("alpha"), b = params.at("beta");
        w.lo = Bound::finite(rat(0));
        w.hi = Bound::finite(rat(1));
        if (a != 0) w.density.factors.push_back({kOneMinusX, a});
        if (b != 0) w.density.factors.push_back({kX, b});
        w.pearson_phi = UniPoly({Rat(0), Rat(1), Rat(-1)});          // (1-x)x
        w.pearson_psi = UniPoly({b + 1, -(a + b + 2)});
    } else if (name == "laguerre") {
        require_param_gt(name, params, "alpha", rat(-1));
        Rat a = params.at("alpha");
        w.lo = Bound::finite(rat(0));
        w.hi = Bound::pos_inf();
        if (a != 0) w.density.factors.push_back({kX, a});
        w.density.exp_arg = -kX;
        w.pearson_phi = kX;
        w.pearson_psi = UniPoly({a + 1, Rat(-1)});
    } else {
        throw std::invalid_argument("unknown weight family: " + name);
    }
    check_density_positive(w);
    return w;
}

PearsonData1 pearson_tilde(const UnivariateWeight& w) {
    PearsonData1 d;
    d.phi = w.pearson_phi;
    d.psi = w.pearson_psi;
    d.psi_tilde = w.pearson_psi - w.pearson_phi.derivative();
    d.class_s = class_of(d.phi, d.psi);
    return d;
}

int class_of(const UniPoly& phi, const UniPoly& psi) {
    if (psi.degree() < 1) throw std::invalid_argument("class is undefined for constant psi");
    return std::max({phi.degree() - 2, psi.degree() - 1, 0});
}

std::vector<Rat> normalized_moments(const UnivariateWeight& w, int count) {
    if (count <= 0) return {};
    std::vector<Rat> nu(static_cast<std::size_t>(count));
    nu[0] = 1;
    if (w.family == "laguerre") {
        Rat a = w.params.at("alpha");
        for (int k = 1; k < count; ++k) nu[static_cast<std::size_t>(k)] = nu[static_cast<std::size_t>(k - 1)] * (a + k);
        return nu;
    }
    if (w.family == "jacobi01") {
        Rat a = w.params.at("alpha"), b = w.params.at("beta");
        for (int k = 1; k < count; ++k)
            nu[static_cast<std::size_t>(k)] = nu[static_cast<std::size_t>(k - 1)] * (b + k) / (a + b + k + 1);
        return nu;
    }
    if (w.family == "jacobi_sym") {
        // Image of the (0,1) weight under x -> 2x-1: binomial transform.
        UnivariateWeight w01 = make_family("jacobi01", w.params);
        std::vector<Rat> nu01 = normalized_moments(w01, count);
        for (int k = 1; k < count; ++k) {
            Rat acc = 0;
            Rat binom = 1;  // C(k, j), built incrementally
            for (int j = 0; j <= k; ++j) {
                Rat sign = ((k - j) % 2 == 0) ? 1 : -1;
                acc += binom * rat_pow(rat(2), static_cast<unsigned long>(j)) * sign *
                       nu01[static_cast<std::size_t>(j)];
                binom = binom * Rat(k - j) / Rat(j + 1);
            }
            nu[static_cast<std::size_t>(k)] = acc;
        }
        return nu;
    }
    if (w.moment_base) {
        // nu_k = M_base(x^k * mult) / M_base(mult).
        const UniPoly& mult = w.moment_multiplier;
        auto base_nu = normalized_moments(*w.moment_base, count + mult.degree());
        auto functional = [&base_nu](const UniPoly& p) {
            Rat acc = 0;
            for (int k = 0; k <= p.degree(); ++k) acc += p.coeff(k) * base_nu[static_cast<std::size_t>(k)];
            return acc;
        };
        Rat denom = functional(mult);
        if (denom == 0) throw std::domain_error("degenerate modified weight: zero total mass");
        for (int k = 1; k < count; ++k) {
            UniPoly xk;
            xk.set_coeff(k, rat(1));
            nu[static_cast<std::size_t>(k)] = functional(xk * mult) / denom;
        }
        return nu;
    }
    throw std::domain_error("no exact moment rule for family '" + w.family +
                            "'; supply moments to the generic recurrence route");
}

Recurrence monic_recurrence(const UnivariateWeight& w, int n) {
    Recurrence rec;
    if (n <= 0) return rec;
    rec.b.resize(static_cast<std::size_t>(n));
    rec.c.resize(static_cast<std::size_t>(n), Rat(0));
    if (w.family == "laguerre") {
        Rat a = w.params.at("alpha");
        for (long k = 0; k < n; ++k) {
            rec.b[static_cast<std::size_t>(k)] = 2 * Rat(k) + a + 1;
            if (k >= 1) rec.c[static_cast<std::size_t>(k)] = Rat(k) * (Rat(k) + a);
        }
        return rec;
    }
    if (w.family == "jacobi_sym") {
        Rat a = w.params.at("alpha"), b = w.params.at("beta");
        for (long k = 0; k < n; ++k) {
            rec.b[static_cast<std::size_t>(k)] = jacobi_sym_b(a, b, k);
            if (k >= 1) rec.c[static_cast<std::size_t>(k)] = jacobi_sym_c(a, b, k);
        }
        return rec;
    }
    if (w.family == "jacobi01") {
        // Affine image of the symmetric family: x -> (1+x)/2.
        Rat a = w.params.at("alpha"), b = w.params.at("beta");
        for (long k = 0; k < n; ++k) {
            rec.b[static_cast<std::size_t>(k)] = (1 + jacobi_sym_b(a, b, k)) / 2;
            if (k >= 1) rec.c[static_cast<std::size_t>(k)] = jacobi_sym_c(a, b, k) / 4;
        }
        return rec;
    }
    return chebyshev_recurrence(normalized_moments(w, 2 * n), n);
}

Recurrence chebyshev_recurrence(const std::vector<Rat>& moments, int n) {
    Recurrence rec;
    if (n <= 0) return rec;
    if (static_cast<int>(moments.size()) < 2 * n)
        throw std::invalid_argument("need at least 2n moments for the recurrence");
    if (moments[0] == 0) throw std::domain_error("indefinite or degenerate functional");
    rec.b.resize(static_cast<std::size_t>(n));
    rec.c.resize(static_cast<std::size_t>(n), Rat(0));

    std::size_t len = static_cast<std::size_t>(2 * n);
    std::vector<Rat> prev2(len, Rat(0));                         // sigma_{k-2}
    std::vector<Rat> prev(moments.begin(), moments.begin() + static_cast<long>(len));  // sigma_{k-1}
    rec.b[0] = moments[1] / moments[0];
    for (int k = 1; k < n; ++k) {
        std::vector<Rat> cur(len, Rat(0));
        for (int l = k; l <= 2 * n - k - 1; ++l) {
            std::size_t li = static_cast<std::size_t>(l);
            cur[li] = prev[li + 1] - rec.b[static_cast<std::size_t>(k - 1)] * prev[li] -
                      rec.c[static_cast<std::size_t>(k - 1)] * prev2[li];
        }
        std::size_t kk = static_cast<std::size_t>(k);
        if (cur[kk] == 0 || prev[kk - 1] == 0) throw std::domain_error("indefinite or degenerate functional");
        rec.b[kk] = cur[kk + 1] / cur[kk] - prev[kk] / prev[kk - 1];
        rec.c[kk] = cur[kk] / prev[kk - 1];
        prev2 = prev;
        prev = cur;
    }
    return rec;
}

UniPoly monic_poly(const Recurrence& rec, int n) {
    if (n < 0) return UniPoly();
    if (n > rec.depth())
        throw std::invalid_argument("recurrence depth insufficient for degree " + std::to_string(n));
    UniPoly pm1;                        // p_{-1} = 0
    UniPoly p = UniPoly::constant(1);   // p_0
    for (int k = 0; k < n; ++k) {
        std::size_t ki = static_cast<std::size_t>(k);
        UniPoly next = UniPoly({-rec.b[ki], Rat(1)}) * p - rec.c[ki] * pm1;
        pm1 = p;
        p = next;
    }
    return p;
}

UniPoly monic_poly(const UnivariateWeight& w, int n) {
    return monic_poly(monic_recurrence(w, std::max(n, 1)), n);
}

std::vector<Rat> normalized_norms(const Recurrence& rec, int n) {
    std::vector<Rat> h(static_cast<std::size_t>(n) + 1);
    h[0] = 1;
    for (int k = 1; k <= n; ++k) {
        if (k >= static_cast<int>(rec.c.size()))
            throw std::invalid_argument("recurrence depth insufficient for norms");
        h[static_cast<std::size_t>(k)] = h[static_cast<std::size_t>(k - 1)] * rec.c[static_cast<std::size_t>(k)];
    }
    return h;
}

UnivariateWeight rho_modified(const UnivariateWeight& w1, const RhoFunction& rho, int m) {
    if (m < 0) throw std::invalid_argument("rho_modified requires m >= 0");
    auto samples = sample_points(w1.lo, w1.hi);

    // Merge rho^{2m+1} into the factored density.
    std::vector<DensityFactor> merged;
    for (const auto& f : w1.density.factors) insert_factor(merged, f.base, f.exponent, samples);
    if (rho.is_linear())
        insert_factor(merged, rho.linear, rat(2 * m + 1), samples);
    else
        insert_factor(merged, rho.square, Rat(m) + rat(1, 2), samples);

    if (auto known = recognize_family(merged, w1.density.exp_arg, w1.lo, w1.hi)) return *known;

    // Generic path: u_m keeps w1's interval; the Pearson pair is
    // (phi_1, psi_1 + (2m+1) phi_1 rho'/rho), cleared of rho denominators by
    // the minimal admissible power when the correction is not polynomial.
    UnivariateWeight u;
    u.family = "custom";
    u.params = w1.params;
    u.lo = w1.lo;
    u.hi = w1.hi;
    u.density.factors = merged;
    u.density.exp_arg = w1.density.exp_arg;
    if (rho.is_linear()) {
        // Moments of u follow from w1's: density = rho^{2m+1} * w1-density.
        u.moment_base = std::make_shared<UnivariateWeight>(w1);
        u.moment_multiplier = rho.linear.pow(static_cast<unsigned>(2 * m + 1));
    }

    auto [dnum, dden] = rho.log_derivative();   // rho'/rho = dnum/dden
    Rat scale = Rat(2 * m + 1);
    UniPoly correction_num = w1.pearson_phi * dnum * scale;  // over dden
    UniPoly psi_num = w1.pearson_psi * dden + correction_num;
    if (auto exact = divide_exact(psi_num, dden)) {
        u.pearson_phi = w1.pearson_phi;
        u.pearson_psi = *exact;
    } else if (rho.is_linear()) {
        // Scale the pair by g = rho.  Scaling a Pearson pair (phi, psi) by g
        // yields (g phi, g psi + g' phi), and here g psi picks up the
        // rho'/rho correction too: psi_m = rho psi_1 + (2m+2) rho' phi_1.
        u.pearson_phi = w1.pearson_phi * rho.linear;
        u.pearson_psi = w1.pearson_psi * rho.linear +
                        w1.pearson_phi * rho.linear.derivative() * (scale + 1);
    } else {
        // Case II: only even rho powers are polynomial, so scale by g = rho^2:
        // psi_m = rho^2 psi_1 + (2m+3)/2 (rho^2)' phi_1.
        u.pearson_phi = w1.pearson_phi * rho.square;
        u.pearson_psi = w1.pearson_psi * rho.square +
                        w1.pearson_phi * rho.square.derivative() * ((scale + 2) / 2);
    }
    check_density_positive(u);
    return u;
}

BandReport univariate_structure_check(const UnivariateWeight& w, int n) {
    BandReport report;
    if (n < 0) throw std::invalid_argument("n must be nonnegative");
    PearsonData1 pd = pearson_tilde(w);
    int depth = n + pd.class_s + 1;
    Recurrence rec = monic_recurrence(w, std::max(depth, 1));

    std::vector<UniPoly> basis(static_cast<std::size_t>(depth) + 1);
    basis[0] = UniPoly::constant(1);
    UniPoly pm1;
    for (int k = 0; k < depth; ++k) {
        std::size_t ki = static_cast<std::size_t>(k);
        basis[ki + 1] = UniPoly({-rec.b[ki], Rat(1)}) * basis[ki] - rec.c[ki] * pm1;
        pm1 = basis[ki];
    }

    const UniPoly& pn = basis[static_cast<std::size_t>(n)];
    UniPoly q = pd.phi * pn.derivative().derivative() + pd.psi * pn.derivative();
    while (!q.is_zero()) {
        int d = q.degree();
        if (d > depth) throw std::logic_error("structure check exceeded basis depth");
        Rat c = q.leading();
        report.coefficients[d] += c;
        q = q - c * basis[static_cast<std::size_t>(d)];
    }
    for (auto it = report.coefficients.begin(); it != report.coefficients.end();) {
        if (it->second == 0)
            it = report.coefficients.erase(it);
        else {
            report.band.push_back(it->first);
            ++it;
        }
    }
    return report;
}

bool pearson_identity_holds(const UnivariateWeight& w) {
    // Check phi' + phi * (log density)' - psi = 0 over the common denominator
    // B = prod of factor bases.
    UniPoly big = UniPoly::constant(1);
    for (const auto& f : w.density.factors) big = big * f.base;
    UniPoly lhs = (w.pearson_phi.derivative() - w.pearson_psi +
                   w.pearson_phi * w.density.exp_arg.derivative()) * big;
    for (const auto& f : w.density.factors) {
        auto cofactor = divide_exact(big, f.base);
        if (!cofactor) return false;
        lhs = lhs + w.pearson_phi * (*cofactor) * f.base.derivative() * f.exponent;
    }
    return lhs.is_zero();
}

}  // namespace kwp
