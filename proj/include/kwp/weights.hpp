#pragma once
// Univariate (semi)classical weight descriptors: factored densities with
// Pearson data, exact normalized moments, monic three-term recurrences, and
// the one-variable structure check used to validate each family before it is
// fed into the bivariate construction.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kwp/rational.hpp"
#include "kwp/rho.hpp"
#include "kwp/unipoly.hpp"

namespace kwp {

// Interval endpoint: finite rational or +-infinity.
struct Bound {
    enum class Kind { Finite, NegInf, PosInf };
    Kind kind = Kind::Finite;
    Rat value = 0;

    static Bound finite(const Rat& v) { return {Kind::Finite, v}; }
    static Bound neg_inf() { return {Kind::NegInf, 0}; }
    static Bound pos_inf() { return {Kind::PosInf, 0}; }
    bool is_finite() const { return kind == Kind::Finite; }
    std::string str() const;
};

// density = prod_i base_i(x)^{exponent_i} * exp(exp_arg(x)), with each base
// normalized to integer primitive coefficients and positive on the interval.
struct DensityFactor {
    UniPoly base;
    Rat exponent;
};

struct FactoredDensity {
    std::vector<DensityFactor> factors;
    UniPoly exp_arg;  // zero when absent
};

struct UnivariateWeight {
    std::string family;  // "jacobi_sym", "jacobi01", "laguerre", or "custom"
    std::map<std::string, Rat> params;
    Bound lo, hi;
    FactoredDensity density;
    UniPoly pearson_phi;
    UniPoly pearson_psi;

    // When this weight is a polynomial multiple of another weight with an
    // exact moment rule (density = moment_multiplier * base density), moments
    // are derived from the base.  Used by the generic rho-modified route.
    std::shared_ptr<const UnivariateWeight> moment_base;
    UniPoly moment_multiplier;
};

struct PearsonData1 {
    UniPoly phi, psi, psi_tilde;
    int class_s = 0;
};

// Monic three-term recurrence p_{k+1} = (x - b[k]) p_k - c[k] p_{k-1}.
// c[0] is kept as 0 and never used.
struct Recurrence {
    std::vector<Rat> b, c;
    int depth() const { return static_cast<int>(b.size()); }
};

struct BandReport {
    // L[p_n] = phi p_n'' + psi p_n' expanded in the monic basis:
    // indices with nonzero coefficient, and the coefficients themselves.
    std::vector<int> band;
    std::map<int, Rat> coefficients;
    bool diagonal() const { return band.empty() || (band.size() == 1); }
};

UnivariateWeight make_family(const std::string& name, const std::map<std::string, Rat>& params);

PearsonData1 pearson_tilde(const UnivariateWeight& w);

// Class of the given Pearson pair: max(deg phi - 2, deg psi - 1), floored at 0.
int class_of(const UniPoly& phi, const UniPoly& psi);

// Moments normalized by mu_0: returns (1, nu_1, ..., nu_{count-1}).
std::vector<Rat> normalized_moments(const UnivariateWeight& w, int count);

// First n coefficients b_0..b_{n-1}, c_0..c_{n-1} (closed forms for the
// built-in families, Chebyshev-algorithm route otherwise).
Recurrence monic_recurrence(const UnivariateWeight& w, int n);

// Generic route: recurrence from exact normalized moments (needs 2n of them).
Recurrence chebyshev_recurrence(const std::vector<Rat>& moments, int n);

UniPoly monic_poly(const Recurrence& rec, int n);
UniPoly monic_poly(const UnivariateWeight& w, int n);

// Squared norms h_k = <p_k, p_k> / mu_0 = c_1 c_2 ... c_k.
std::vector<Rat> normalized_norms(const Recurrence& rec, int n);

// The rho-modified weight u_m = rho^{2m+1} w1, with its Pearson pair.  The
// result is recognized as a shifted-parameter built-in family whenever the
// merged density matches one; otherwise a "custom" descriptor with a valid
// (possibly higher-class) Pearson pair is returned.
UnivariateWeight rho_modified(const UnivariateWeight& w1, const RhoFunction& rho, int m);

// Expand phi p_n'' + psi p_n' in the monic basis by exact leading-term
// elimination; classical (class-0) weights must produce the single band {n}.
BandReport univariate_structure_check(const UnivariateWeight& w, int n);

// Exact verification of (phi w)' = psi w on the factored density:
// phi' + phi * dlog(w) - psi must vanish identically.
bool pearson_identity_holds(const UnivariateWeight& w);

}  // namespace kwp
