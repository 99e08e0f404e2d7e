#include "doctest.h"

#include "kwp/weights.hpp"

using namespace kwp;

namespace {
UnivariateWeight jac_sym(long a_num, long a_den, long b_num, long b_den) {
    return make_family("jacobi_sym", {{"alpha", rat(a_num, a_den)}, {"beta", rat(b_num, b_den)}});
}
// Moment functional applied to a polynomial.
Rat apply_moments(const std::vector<Rat>& nu, const UniPoly& p) {
    Rat acc = 0;
    for (int k = 0; k <= p.degree(); ++k) acc += p.coeff(k) * nu[static_cast<std::size_t>(k)];
    return acc;
}
}  // namespace

TEST_CASE("family constructors carry the classical Pearson pairs") {
    auto js = make_family("jacobi_sym", {{"alpha", rat(2)}, {"beta", rat(5)}});
    CHECK(js.pearson_phi == UniPoly::from_longs({1, 0, -1}));
    CHECK(js.pearson_psi == UniPoly::from_longs({3, -9}));

    auto j01 = make_family("jacobi01", {{"alpha", rat(1)}, {"beta", rat(2)}});
    CHECK(j01.pearson_phi == UniPoly::from_longs({0, 1, -1}));
    CHECK(j01.pearson_psi == UniPoly::from_longs({3, -5}));

    auto lag = make_family("laguerre", {{"alpha", rat(3)}});
    CHECK(lag.pearson_phi == UniPoly::x());
    CHECK(lag.pearson_psi == UniPoly::from_longs({4, -1}));
    CHECK(lag.hi.kind == Bound::Kind::PosInf);

    CHECK_THROWS_WITH_AS(make_family("jacobi_sym", {{"alpha", rat(-3, 2)}, {"beta", rat(0)}}),
                         doctest::Contains("alpha > -1"), std::invalid_argument);
    CHECK_THROWS_AS(make_family("laguerre", {}), std::invalid_argument);
    CHECK_THROWS_AS(make_family("hermite", {}), std::invalid_argument);
}

TEST_CASE("pearson data: psi_tilde and class") {
    auto w = jac_sym(3, 1, 3, 1);
    auto pd = pearson_tilde(w);
    CHECK(pd.psi == UniPoly::from_longs({0, -8}));
    CHECK(pd.psi_tilde == UniPoly::from_longs({0, -6}));  // psi - phi' = -2*alpha*x
    CHECK(pd.class_s == 0);

    auto lag = make_family("laguerre", {{"alpha", rat(1, 2)}});
    auto pl = pearson_tilde(lag);
    CHECK(pl.psi_tilde == UniPoly({rat(1, 2), rat(-1)}));  // alpha - x
    CHECK(pl.class_s == 0);

    CHECK(class_of(UniPoly::from_longs({0, 0, 0, 1}), UniPoly::from_longs({0, 1})) == 1);
    CHECK_THROWS_AS(class_of(UniPoly::x(), UniPoly::constant(rat(2))), std::invalid_argument);
}

TEST_CASE("pearson identity holds on factored densities") {
    CHECK(pearson_identity_holds(jac_sym(2, 1, 5, 1)));
    CHECK(pearson_identity_holds(make_family("jacobi01", {{"alpha", rat(1, 2)}, {"beta", rat(3)}})));
    CHECK(pearson_identity_holds(make_family("laguerre", {{"alpha", rat(7, 3)}})));
}

TEST_CASE("normalized moments agree with Beta/Gamma ratios") {
    auto lag = make_family("laguerre", {{"alpha", rat(1, 2)}});
    auto nu = normalized_moments(lag, 4);
    CHECK(nu[0] == 1);
    CHECK(nu[1] == rat(3, 2));
    CHECK(nu[2] == rat(15, 4));   // (3/2)(5/2)
    CHECK(nu[3] == rat(105, 8));  // (3/2)(5/2)(7/2)

    auto j01 = make_family("jacobi01", {{"alpha", rat(2)}, {"beta", rat(3)}});
    auto nu01 = normalized_moments(j01, 3);
    CHECK(nu01[1] == rat(4, 7));
    CHECK(nu01[2] == rat(4, 7) * rat(5, 8));

    // Symmetric Jacobi: odd moments vanish, nu_2 = 1/(alpha+beta+3) for a=b.
    auto sym = jac_sym(1, 1, 1, 1);
    auto nus = normalized_moments(sym, 5);
    CHECK(nus[1] == 0);
    CHECK(nus[3] == 0);
    CHECK(nus[2] == rat(1, 5));
    CHECK(nus[4] == rat(3, 35));
}

TEST_CASE("closed-form recurrences") {
    auto lag = make_family("laguerre", {{"alpha", rat(2)}});
    auto rec = monic_recurrence(lag, 5);
    for (long k = 0; k < 5; ++k) {
        CHECK(rec.b[static_cast<std::size_t>(k)] == rat(2 * k + 3));
        if (k >= 1) CHECK(rec.c[static_cast<std::size_t>(k)] == rat(k * (k + 2)));
    }

    auto j01 = make_family("jacobi01", {{"alpha", rat(2)}, {"beta", rat(3)}});
    CHECK(monic_recurrence(j01, 1).b[0] == rat(4, 7));  // mu_1/mu_0

    auto sym0 = jac_sym(0, 1, 0, 1);
    auto rs = monic_recurrence(sym0, 4);
    CHECK(rs.b[0] == 0);  // symmetry
    CHECK(rs.b[2] == 0);
    CHECK(rs.c[1] == rat(1, 3));  // Legendre-type: c_k = k^2/(4k^2-1)
    CHECK(rs.c[2] == rat(4, 15));
    CHECK(rs.c[3] == rat(9, 35));
}

TEST_CASE("generic moment route reproduces the closed forms") {
    for (const auto& w : {jac_sym(1, 2, 1, 2), jac_sym(3, 1, 1, 1),
                          make_family("jacobi01", {{"alpha", rat(1, 2)}, {"beta", rat(5, 2)}}),
                          make_family("laguerre", {{"alpha", rat(1, 3)}})}) {
        int n = 6;
        auto closed = monic_recurrence(w, n);
        auto generic = chebyshev_recurrence(normalized_moments(w, 2 * n), n);
        for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k) {
            CHECK(closed.b[k] == generic.b[k]);
            CHECK(closed.c[k] == generic.c[k]);
        }
    }
    CHECK_THROWS_WITH_AS(chebyshev_recurrence({Rat(1), Rat(0), Rat(0), Rat(0)}, 2),
                         doctest::Contains("degenerate"), std::domain_error);
}

TEST_CASE("recurrence output is orthogonal against exact moments") {
    auto w = jac_sym(1, 2, 5, 2);
    auto nu = normalized_moments(w, 12);
    auto rec = monic_recurrence(w, 6);
    for (int n = 1; n <= 5; ++n) {
        UniPoly pn = monic_poly(rec, n);
        for (int k = 0; k < n; ++k) {
            UniPoly xk;
            xk.set_coeff(k, rat(1));
            CHECK(apply_moments(nu, pn * xk) == 0);
        }
        // <p_n, x^n> = h_n = c_1...c_n > 0
        UniPoly xn;
        xn.set_coeff(n, rat(1));
        Rat h = apply_moments(nu, pn * xn);
        CHECK(h > 0);
        CHECK(h == normalized_norms(rec, n).back());
    }
    for (std::size_t k = 1; k < rec.c.size(); ++k) CHECK(rec.c[k] > 0);
}

TEST_CASE("monic polynomials") {
    auto lag = make_family("laguerre", {{"alpha", rat(3)}});
    CHECK(monic_poly(lag, 0) == UniPoly::constant(1));
    CHECK(monic_poly(lag, 1) == UniPoly::from_longs({-4, 1}));  // x - (alpha+1)
    CHECK(monic_poly(jac_sym(2, 1, 2, 1), 1) == UniPoly::x());
}

TEST_CASE("rho-modified weights recognize shifted families") {
    // Disc-type: (1-x^2)^alpha with rho^2 = 1-x^2.
    auto w1 = jac_sym(1, 1, 1, 1);
    auto rho = RhoFunction::make_sqrt(UniPoly::from_longs({1, 0, -1}));
    auto u0 = rho_modified(w1, rho, 0);
    CHECK(u0.family == "jacobi_sym");
    CHECK(u0.params.at("alpha") == rat(3, 2));
    CHECK(u0.params.at("beta") == rat(3, 2));
    auto u2 = rho_modified(w1, rho, 2);
    CHECK(u2.params.at("alpha") == rat(7, 2));
    CHECK(pearson_identity_holds(u2));

    // Parabola-type: (1-x)^alpha x^beta with rho^2 = x.
    auto w1b = make_family("jacobi01", {{"alpha", rat(1)}, {"beta", rat(2)}});
    auto rho_b = RhoFunction::make_sqrt(UniPoly::x());
    auto u1 = rho_modified(w1b, rho_b, 1);
    CHECK(u1.family == "jacobi01");
    CHECK(u1.params.at("alpha") == rat(1));
    CHECK(u1.params.at("beta") == rat(7, 2));

    // Linear rho = x on (0,1): exponent shift by 2m+1.
    auto rho_x = RhoFunction::make_linear(UniPoly::x());
    auto u3 = rho_modified(w1b, rho_x, 1);
    CHECK(u3.family == "jacobi01");
    CHECK(u3.params.at("beta") == rat(5));

    // Laguerre with rho = x.
    auto lag = make_family("laguerre", {{"alpha", rat(1, 2)}});
    auto u4 = rho_modified(lag, rho_x, 2);
    CHECK(u4.family == "laguerre");
    CHECK(u4.params.at("alpha") == rat(11, 2));
    CHECK(class_of(u4.pearson_phi, u4.pearson_psi) == 0);  // rho divides phi: class unchanged
}

TEST_CASE("rho-modified fallback keeps a valid Pearson pair") {
    // Unrecognized density x (x+1)^{2m+1} e^{-x}: class must rise by exactly 1
    // (linear rho not dividing phi).
    auto lag = make_family("laguerre", {{"alpha", rat(1)}});
    auto rho = RhoFunction::make_linear(UniPoly::from_longs({1, 1}));  // 1 + x
    auto u = rho_modified(lag, rho, 0);
    CHECK(u.family == "custom");
    CHECK(u.pearson_phi == UniPoly::from_longs({0, 1, 1}));      // x(1+x)
    CHECK(u.pearson_psi == UniPoly::from_longs({2, 3, -1}));     // 2 + 3x - x^2
    CHECK(pearson_identity_holds(u));
    CHECK(class_of(u.pearson_phi, u.pearson_psi) == 1);
}

TEST_CASE("univariate structure check: classical weights are diagonal") {
    auto w = jac_sym(2, 1, 2, 1);
    auto report = univariate_structure_check(w, 2);
    REQUIRE(report.band == std::vector<int>{2});
    // phi p'' + psi p' = -n(n + alpha + beta + 1) p_n for symmetric Jacobi.
    CHECK(report.coefficients.at(2) == rat(-14));

    auto lag = make_family("laguerre", {{"alpha", rat(1, 2)}});
    auto r3 = univariate_structure_check(lag, 3);
    REQUIRE(r3.band == std::vector<int>{3});
    CHECK(r3.coefficients.at(3) == rat(-3));  // Laguerre eigenvalue -n

    CHECK(univariate_structure_check(lag, 0).band.empty());

    // Semiclassical modified weight: band widens beyond a single index and
    // reaches n + class = 4 with coefficient -deg(psi-top) * n = -3.
    auto custom = rho_modified(lag, RhoFunction::make_linear(UniPoly::from_longs({1, 1})), 0);
    auto rc = univariate_structure_check(custom, 3);
    CHECK(rc.band.size() == 3);
    CHECK(rc.band.back() == 4);
    CHECK(rc.coefficients.at(4) == rat(-3));
}
