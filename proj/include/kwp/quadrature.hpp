#pragma once
// Numeric cross-validation lane: Gauss rules built from exact recurrences,
// high-precision bivariate inner products via the substitution y = rho(x) t,
// orthogonality residual sweeps, and the nonsingularity check of the moment
// matrix <1, Phi>.

#include <boost/multiprecision/mpfr.hpp>

#include <array>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "kwp/bipoly.hpp"
#include "kwp/koornwinder.hpp"
#include "kwp/pearson.hpp"
#include "kwp/weights.hpp"

namespace kwp {

// Arbitrary-precision float; the working precision (decimal digits) is set
// per computation from the `digits` arguments below.
using Real = boost::multiprecision::mpfr_float;

constexpr int kDefaultDigits = 34;
constexpr int kMinDigits = 15;

// Scoped ambient precision (decimal digits), restored on destruction.  Every
// library entry point sets its own internal scope; wrap caller-side Real
// arithmetic (e.g. reference values in tests) in a guard, otherwise it runs
// at the process-wide default, which may be much lower.
class PrecisionGuard {
  public:
    explicit PrecisionGuard(int digits);
    ~PrecisionGuard();
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

  private:
    unsigned prev_;
};

Real to_real(const Rat& r);
Real eval_real(const UniPoly& p, const Real& x);
Real eval_real(const BiPoly& p, const Real& x, const Real& y);

// Total mass of the weight (Gamma/Beta closed forms for the built-in
// families; derived through the moment base for recognized products).
Real weight_mass(const UnivariateWeight& w, int digits);

struct GaussRule {
    std::vector<Real> nodes;    // strictly increasing, inside the open interval
    std::vector<Real> weights;  // positive; include the total mass of the weight
    std::string source;         // weight label
    int n = 0;
    int digits = 0;

    // Sum of w_i f(x_i) for exact polynomial f (exact for deg f <= 2n-1).
    Real integrate(const UniPoly& f) const;
};

// Nodes are the roots of the monic degree-n polynomial, found by bisection
// on interlacing brackets and polished by Newton steps; weights are
// Christoffel sums.  Throws when a root cannot be bracketed (invalid weight).
GaussRule gauss_rule(const UnivariateWeight& w, int n, int digits = kDefaultDigits);

// Caches the Gauss rules needed to integrate polynomial x polynomial inner
// products over the bivariate domain up to a fixed total degree.
class QuadEngine {
  public:
    QuadEngine(const KoornwinderSystem& sys, int max_degree, int digits = kDefaultDigits);
    ~QuadEngine();
    QuadEngine(QuadEngine&&) noexcept;
    QuadEngine& operator=(QuadEngine&&) noexcept;

    // <p, q> = integral of p q w over the domain; requires
    // deg p + deg q <= max_degree.
    Real inner(const BiPoly& p, const BiPoly& q) const;

    int max_degree() const;
    int digits() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// One-shot inner product (builds a throwaway engine).
Real inner_product(const KoornwinderSystem& sys, const BiPoly& p, const BiPoly& q,
                   int digits = kDefaultDigits);

struct OrthoReport {
    bool pass = false;
    bool norms_positive = true;
    std::pair<int, int> offending{-1, -1};  // index with a nonpositive squared norm
    Real max_residual;                      // max |<P,Q>| / (|P| |Q|) over distinct pairs
    std::array<int, 4> worst{-1, -1, -1, -1};  // (n, m, n', m') attaining the max
    int nmax = 0;
    int digits = 0;
    double tol = 0;

    std::string summary() const;
};

// Pairwise normalized orthogonality residuals for all 0 <= m <= n <= nmax.
// Passes iff every squared norm is positive and the maximum residual is at
// most tol.
OrthoReport orthocheck(const KoornwinderSystem& sys, int nmax, int digits = kDefaultDigits,
                       double tol = 1e-10);

struct MomentMatrixVerdict {
    bool pass = false;
    Real det;
    Real scale;                   // squared largest entry magnitude
    std::array<Real, 3> entries;  // <1,Phi11>, <1,Phi12>, <1,Phi22>
    int digits = 0;

    std::string summary() const;
};

// Numeric check that det<1, Phi> != 0 for a verified pair: passes iff
// |det| exceeds the entry scale by more than 10^(-digits/2).
MomentMatrixVerdict moment_matrix_check(const PearsonPair& pair, const KoornwinderSystem& sys,
                                        int digits = kDefaultDigits);

}  // namespace kwp
