#pragma once
// Shared test fixtures: the six bivariate systems exercised across the test
// suite, with the parameter conventions used throughout.

#include "kwp/koornwinder.hpp"
#include "kwp/weights.hpp"

namespace kwp::fixtures {

// Weight (1 - x^2 - y^2)^alpha on the unit disk.
inline KoornwinderSystem ball_system(const Rat& alpha) {
    auto w = make_family("jacobi_sym", {{"alpha", alpha}, {"beta", alpha}});
    return make_system(w, w, RhoFunction::make_sqrt(UniPoly::from_longs({1, 0, -1})));
}

// Weight x^(alpha-beta) (1-x)^beta (x - y^2)^beta on the parabolic biangle.
inline KoornwinderSystem biangle_system(const Rat& alpha, const Rat& beta) {
    auto w1 = make_family("jacobi01", {{"alpha", alpha}, {"beta", beta}});
    auto w2 = make_family("jacobi_sym", {{"alpha", beta}, {"beta", beta}});
    return make_system(w1, w2, RhoFunction::make_sqrt(UniPoly::x()));
}

// Weight x^a (1-x)^b ... on the triangle 0 < y < x < 1.
inline KoornwinderSystem triangle_system(const Rat& a, const Rat& b, const Rat& c) {
    auto w1 = make_family("jacobi01", {{"alpha", a}, {"beta", b + c}});
    auto w2 = make_family("jacobi01", {{"alpha", b}, {"beta", c}});
    return make_system(w1, w2, RhoFunction::make_linear(UniPoly::x()));
}

// Laguerre in x blended with a one-sided Jacobi factor on -x < y < x.
inline KoornwinderSystem laguerre_jacobi_system(const Rat& a, const Rat& b) {
    auto w1 = make_family("laguerre", {{"alpha", a}});
    auto w2 = make_family("jacobi_sym", {{"alpha", b}, {"beta", rat(0)}});
    return make_system(w1, w2, RhoFunction::make_linear(UniPoly::x()));
}

// Laguerre in x blended with Laguerre in y/x on the first quadrant.
inline KoornwinderSystem laguerre_laguerre_system(const Rat& a, const Rat& b) {
    auto w1 = make_family("laguerre", {{"alpha", a}});
    auto w2 = make_family("laguerre", {{"alpha", b}});
    return make_system(w1, w2, RhoFunction::make_linear(UniPoly::x()));
}

// Product Laguerre(2) x Laguerre(3) with constant rho (decoupled variables).
inline KoornwinderSystem tensor_system() {
    auto w1 = make_family("laguerre", {{"alpha", rat(2)}});
    auto w2 = make_family("laguerre", {{"alpha", rat(3)}});
    return make_system(w1, w2, RhoFunction::make_linear(UniPoly::constant(rat(1))));
}

}  // namespace kwp::fixtures
