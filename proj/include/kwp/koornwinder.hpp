#pragma once
// Bivariate Koornwinder-type orthogonal systems built from two univariate
// weights coupled through a scaling function rho:
//
//   w(x, y) = w1(x) * w2(y / rho(x)) on  a < x < b,  c rho(x) < y < d rho(x),
//   P_{n,m}(x, y) = p_{n-m}(x; m) * rho(x)^m * q_m(y / rho(x)),
//
// where q_m is the monic OPS of w2 and p_k(.; m) the monic OPS of the
// rho-modified weight u_m = rho^{2m+1} w1.

#include <utility>
#include <vector>

#include "kwp/bipoly.hpp"
#include "kwp/ratfun.hpp"
#include "kwp/rho.hpp"
#include "kwp/weights.hpp"

namespace kwp {

struct DomainDescriptor {
    Bound x_lo, x_hi;      // a, b
    Bound y_lo, y_hi;      // c, d (scales multiplying rho)
    std::vector<BiPoly> boundary;  // polynomials whose zero sets contain the boundary
};

struct KoornwinderSystem {
    UnivariateWeight w1, w2;
    RhoFunction rho;
    DomainDescriptor domain;
};

struct FactoredWeight2 {
    std::vector<std::pair<BiPoly, Rat>> factors;  // pairwise coprime bases
    RatFun2 exp_argument;                         // zero when absent
};

// Validates the Case I / Case II conditions (linear rho positive inside the
// x-interval, or sqrt-quadratic rho with an even w2 on a symmetric interval)
// and assembles the domain descriptor.
KoornwinderSystem make_system(const UnivariateWeight& w1, const UnivariateWeight& w2,
                              const RhoFunction& rho);

// rho(x)^m q(y/rho(x)) as a polynomial; in Case II every contributing power
// rho^{m-j} must be even, which holds exactly when q has parity (-1)^m.
BiPoly lift(const UniPoly& q, const RhoFunction& rho, int m);

// Monic P_{n,m}; leading monomial x^{n-m} y^m in the graded order.
BiPoly build_polynomial(const KoornwinderSystem& sys, int n, int m);

// All P_{n,m} with 0 <= m <= n <= nmax, sharing per-m recurrence work.
class BasisTable {
public:
    BasisTable(const KoornwinderSystem& sys, int nmax);
    const BiPoly& at(int n, int m) const;
    int nmax() const { return nmax_; }

private:
    int nmax_;
    std::vector<std::vector<BiPoly>> rows_;  // rows_[m][k] = P_{m+k, m}
};

// w(x,y) in factored polynomial form (bases positive on the domain interior,
// pairwise coprime) together with the composed exponential argument.
FactoredWeight2 factored_weight(const KoornwinderSystem& sys);

// (d/dx ln w, d/dy ln w) componentwise canonicalized.
Vec2RF grad_log_weight(const KoornwinderSystem& sys);
Vec2RF grad_log_weight(const FactoredWeight2& fw);

}  // namespace kwp
