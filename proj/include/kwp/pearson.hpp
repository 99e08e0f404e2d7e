#pragma once
// First-order systems and matrix Pearson equations for Koornwinder weights.
//
// The weight w(x,y) always satisfies an upper-triangular "raw" system
// phi * grad w = delta * w built directly from the two univariate Pearson
// pairs.  Two routes turn it into a symmetric matrix Pearson equation
// div(Phi w) = Psi^t w: multiplying by a rational symmetrizer matrix S, or
// assembling Phi from a decomposition of grad(ln w) over a common
// denominator.  Everything is verified as an exact rational-function
// identity; verification failures are verdicts, never silent.

#include <string>
#include <utility>
#include <vector>

#include "kwp/koornwinder.hpp"
#include "kwp/ratfun.hpp"

namespace kwp {

struct RawSystem {
    Mat2RF phi;    // [[phi1, eta*y], [0, phi3]], polynomial entries
    Vec2RF delta;  // (delta1, delta2), polynomial entries
    std::pair<int, int> row_scaling;  // rho powers applied to rows 1, 2
    std::vector<BiPoly> singular_factors;  // distinct factors of the diagonal
};

struct Symmetrizer {
    RatFun2 A, B, C, D;  // S = [[A, B], [C, D]]
};

enum class Provenance { RawSymmetrizer, Decomposition, Manual };

struct PearsonPair {
    BiPoly phi11, phi12, phi22;  // symmetric Phi
    BiPoly psi1, psi2;           // divergence-form Psi
    int s_value = 0;
    Provenance provenance = Provenance::Manual;
    bool verified = false;

    int deg_phi() const;
    int deg_psi() const;
};

// Validates deg Psi >= 1 and computes s = max(deg Phi - 2, deg Psi - 1).
PearsonPair make_pearson_pair(const BiPoly& phi11, const BiPoly& phi12, const BiPoly& phi22,
                              const BiPoly& psi1, const BiPoly& psi2, Provenance provenance);

struct Verdict {
    bool pass = false;
    RatFun2 residual1, residual2;  // claimed minus actual, componentwise
    std::string summary() const;
};

// The raw system: row 1 is (phi1, eta y | psi~1) with eta = phi1 rho'/rho,
// row 2 is (0, phi2(y/rho) | psi~2(y/rho)/rho); each row is multiplied by the
// minimal power of rho (case I) or rho^2 (case II) making it polynomial.
RawSystem raw_system(const KoornwinderSystem& sys);

// Does M grad(ln w) = v hold identically?
Verdict verify_gradient_form(const Mat2RF& M, const Vec2RF& v, const KoornwinderSystem& sys);

// Does div(Phi w) = Psi^t w hold identically?  Sets pair.verified on success.
Verdict verify_divergence_form(PearsonPair& pair, const KoornwinderSystem& sys);

// True iff A phi12 + B phi22 - C phi11 = 0 for the raw entries: exactly the
// condition that S * phi is symmetric.
bool symmetrizer_constraint_holds(const Symmetrizer& s, const RawSystem& raw);

// Phi = S phi (symmetric polynomial), Psi = S delta + column divergences of
// Phi; the result is verified before being returned.
PearsonPair symmetrize_with(const Symmetrizer& s, const RawSystem& raw, const KoornwinderSystem& sys);

// Enumerate symmetrizers whose entries share a denominator drawn from
// products of the singular factors (multiplicity at most 2) and whose
// numerators have degree at most deg(denominator) + deg_bound.  Results are
// deduplicated, each yields a verified pair, and the list is sorted by
// (deg Phi, deg Psi) ascending.
std::vector<Symmetrizer> search_symmetrizer(const RawSystem& raw, const KoornwinderSystem& sys,
                                            int deg_bound);

struct DecompositionInput {
    BiPoly E, F, H;        // E grad(ln w) = (F, H)
    BiPoly a0, a1, c1;     // E = a0 a1 c1
    BiPoly F0, H0;         // F = F0 c1, H = H0 a1
    BiPoly a2, b1, c2;     // chosen so that a0 = a2 c2 - a1 b1^2 c1
};

// Validates every factor-split identity (throws on violation).
DecompositionInput make_decomposition_input(const BiPoly& E, const BiPoly& F, const BiPoly& H,
                                            const BiPoly& a0, const BiPoly& a1, const BiPoly& c1,
                                            const BiPoly& a2, const BiPoly& b1, const BiPoly& c2);

// Phi = [[aE, bE], [bE, cE]] with a = a2/(a0 c1), b = b1/a0, c = c2/(a0 a1);
// Psi from the gradient-form vector (aF+bH, bF+cH) plus the divergence
// correction.  Verified before being returned.
PearsonPair decomposition_method(const DecompositionInput& inp, const KoornwinderSystem& sys);

// Exact rational interior points of the domain, for spot checks.
std::vector<std::pair<Rat, Rat>> interior_points(const KoornwinderSystem& sys, int count);

}  // namespace kwp
