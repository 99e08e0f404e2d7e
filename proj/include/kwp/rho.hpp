#pragma once
// The scaling function rho used to couple the two univariate weights.
// Either a polynomial of degree <= 1 (case I) or the square root of a
// positive quadratic (case II); in case II only rho^2 is a polynomial and
// every formula downstream must consume rho through even powers or through
// the combination rho * (odd function of y/rho).

#include <stdexcept>

#include "kwp/rational.hpp"
#include "kwp/unipoly.hpp"

namespace kwp {

struct RhoFunction {
    enum class Kind { Linear, SqrtQuadratic };
    Kind kind = Kind::Linear;
    UniPoly linear;  // rho itself; only valid for Kind::Linear
    UniPoly square;  // rho^2; valid in both cases

    static RhoFunction make_linear(const UniPoly& r) {
        if (r.degree() < 0 || r.degree() > 1)
            throw std::invalid_argument("linear rho must have degree 0 or 1");
        RhoFunction f;
        f.kind = Kind::Linear;
        f.linear = r;
        f.square = r * r;
        return f;
    }

    static RhoFunction make_sqrt(const UniPoly& q) {
        if (q.degree() < 1 || q.degree() > 2)
            throw std::invalid_argument("rho^2 must be a nonconstant polynomial of degree <= 2");
        RhoFunction f;
        f.kind = Kind::SqrtQuadratic;
        f.square = q;
        return f;
    }

    bool is_linear() const { return kind == Kind::Linear; }

    // rho'/rho as an exact fraction (num, den) of univariate polynomials:
    // equal to (rho^2)' / (2 rho^2) in both cases.
    std::pair<UniPoly, UniPoly> log_derivative() const {
        return {square.derivative() * rat(1, 2), square};
    }
};

}  // namespace kwp
