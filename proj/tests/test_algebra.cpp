#include "doctest.h"

#include "kwp/bipoly.hpp"
#include "kwp/ratfun.hpp"
#include "kwp/rational.hpp"
#include "kwp/unipoly.hpp"

using namespace kwp;

TEST_CASE("rational parsing and formatting") {
    CHECK(rat_parse("3/4") == rat(3, 4));
    CHECK(rat_parse("-3/6") == rat(-1, 2));
    CHECK(rat_parse("7") == rat(7));
    CHECK(rat_parse("1.5") == rat(3, 2));
    CHECK(rat_parse("-0.25") == rat(-1, 4));
    CHECK(rat_str(rat(5, 10)) == "1/2");
    CHECK(rat_str(rat(-4, 2)) == "-2");
    CHECK_THROWS(rat_parse(""));
    Rat root;
    CHECK(rat_sqrt_exact(rat(9, 4), &root));
    CHECK(root == rat(3, 2));
    CHECK_FALSE(rat_sqrt_exact(rat(2), nullptr));
}

TEST_CASE("univariate arithmetic and division") {
    UniPoly p = UniPoly::from_longs({-1, 0, 1});  // x^2 - 1
    UniPoly q = UniPoly::from_longs({1, 1});      // x + 1
    auto dr = div_rem(p, q);
    CHECK(dr.rem.is_zero());
    CHECK(dr.quot == UniPoly::from_longs({-1, 1}));
    CHECK(p.derivative() == UniPoly::from_longs({0, 2}));
    CHECK(p.eval(rat(3)) == rat(8));
    CHECK(gcd(p, q) == q.monic());
    CHECK(p.compose_affine(rat(2), rat(-1)) == UniPoly::from_longs({0, -4, 4}));
    CHECK(p.str() == "x^2 - 1");
}

TEST_CASE("univariate factorization over Q") {
    // x^3 - x = x (x-1) (x+1)
    auto fs = factor_over_q(UniPoly::from_longs({0, -1, 0, 1}));
    REQUIRE(fs.size() == 3);
    // x^2 + 1 stays irreducible
    auto irr = factor_over_q(UniPoly::from_longs({1, 0, 1}));
    REQUIRE(irr.size() == 1);
    CHECK(irr[0].base.degree() == 2);
    // (x - 1/2)^2 type split: 4x^2 - 1
    auto halves = factor_over_q(UniPoly::from_longs({-1, 0, 4}));
    REQUIRE(halves.size() == 2);
    CHECK(halves[0].base.degree() == 1);
}

TEST_CASE("graded order puts the expected monomial on top") {
    // Under the graded order with y priority, x^2 < x*y < y^2.
    BiPoly p = BiPoly::monomial(2, 0) + BiPoly::monomial(1, 1) + BiPoly::monomial(0, 2);
    CHECK(p.leading_mono() == Mono{0, 2});
    BiPoly q = BiPoly::monomial(3, 0) + BiPoly::monomial(1, 1);
    CHECK(q.leading_mono() == Mono{3, 0});  // total degree wins first
}

TEST_CASE("bivariate arithmetic, partials, substitution") {
    BiPoly x = BiPoly::x(), y = BiPoly::y();
    BiPoly p = x * x - y * y;  // (x-y)(x+y)
    CHECK(p.partial(0) == 2 * x);
    CHECK(p.partial(1) == BiPoly() - 2 * y);
    CHECK(p.eval(rat(3), rat(2)) == rat(5));
    CHECK(p.degree() == 2);
    CHECK(p.degree_x() == 2);
    CHECK(p.degree_y() == 2);
    BiPoly sub = p.subst_y(x * y);  // x^2 - x^2 y^2
    CHECK(sub == x * x - x * x * y * y);
    CHECK(p.str() == "-y^2 + x^2");
}

TEST_CASE("single-divisor division and exactness") {
    BiPoly x = BiPoly::x(), y = BiPoly::y();
    BiPoly a = (x - y) * (x + y) * (x + BiPoly::constant(1));
    CHECK(divide_exact(a, x - y).has_value());
    CHECK(*divide_exact(a, x - y) == (x + y) * (x + BiPoly::constant(1)));
    CHECK_FALSE(divide_exact(a, x - BiPoly::constant(2)).has_value());
    auto dr = div_rem(x * x * y + y, x * y);
    CHECK(dr.quot == x);
    CHECK(dr.rem == y);
}

TEST_CASE("bivariate gcd via primitive remainder sequences") {
    BiPoly x = BiPoly::x(), y = BiPoly::y();
    BiPoly g = x * x + y * y - BiPoly::constant(1);
    BiPoly a = g * (x - y);
    BiPoly b = g * (x + y + BiPoly::constant(2));
    CHECK(gcd(a, b) == g);

    // Content in x must be found too.
    BiPoly c = (x - BiPoly::constant(1)) * y;
    BiPoly d = (x - BiPoly::constant(1)) * (x + y);
    CHECK(gcd(c, d) == x - BiPoly::constant(1));

    // Coprime inputs.
    CHECK(gcd(x + y, x - y).is_constant());
    CHECK(gcd(BiPoly(), x).leading_coeff() == 1);
}

TEST_CASE("rational functions canonicalize") {
    BiPoly x = BiPoly::x(), y = BiPoly::y();
    RatFun2 f((x * x - y * y), (x - y));  // reduces to x + y
    CHECK(f.is_polynomial());
    CHECK(f.num() == x + y);

    RatFun2 g(y, 2 * x);  // denominator normalized monic
    CHECK(g.den() == x);
    CHECK(g.num() == BiPoly::monomial(0, 1, rat(1, 2)));

    RatFun2 zero(BiPoly(), x);
    CHECK(zero.is_zero());
    CHECK(zero.den() == BiPoly::constant(1));
}

TEST_CASE("rational function arithmetic and partials") {
    BiPoly x = BiPoly::x(), y = BiPoly::y();
    RatFun2 f(BiPoly::constant(1), x);
    RatFun2 g(BiPoly::constant(1), y);
    RatFun2 sum = f + g;
    CHECK(sum == RatFun2(x + y, x * y));
    CHECK(f * g == RatFun2(BiPoly::constant(1), x * y));
    CHECK(f - f == RatFun2());
    // d/dx (1/x) = -1/x^2
    CHECK(f.partial(0) == RatFun2(BiPoly::constant(-1), x * x));
    // d/dy (y/x) = 1/x
    CHECK(RatFun2(y, x).partial(1) == f);
    CHECK(f / g == RatFun2(y, x));
}

TEST_CASE("matrix helpers") {
    BiPoly x = BiPoly::x(), y = BiPoly::y();
    Mat2RF s;
    s.m[0][0] = RatFun2(x);
    s.m[0][1] = RatFun2(y);
    s.m[1][0] = RatFun2(y);
    s.m[1][1] = RatFun2(x);
    CHECK(mat_is_symmetric(s));
    CHECK(s.det() == RatFun2(x * x - y * y));

    Mat2RF t = s;
    t.m[1][0] = RatFun2(Rat(0));
    CHECK_FALSE(mat_is_symmetric(t));

    Vec2RF v{RatFun2(x * y), RatFun2(y * y)};
    CHECK(divergence(v) == RatFun2(3 * y));

    // Column divergence: entry j sums d/dx of row-0 and d/dy of row-1 in column j.
    Vec2RF dc = divergence_columns(s);
    CHECK(dc.a == RatFun2(BiPoly::constant(1) + BiPoly::constant(1)));
    CHECK(dc.b == RatFun2(BiPoly()));
}

TEST_CASE("polynomial string forms are deterministic") {
    BiPoly x = BiPoly::x(), y = BiPoly::y();
    BiPoly p = x * y - BiPoly::constant(1) * rat(1, 2) + y * y * rat(3, 1);
    CHECK(p.str() == "3*y^2 + x*y - 1/2");
    CHECK(RatFun2(y, x * 2).str() == "1/2*y / x");
}
