#include "kwp/registry.hpp"

#include <stdexcept>
#include <utility>

namespace kwp {

namespace {

const std::vector<FamilyDescriptor> kCatalog = {
    {"ball",
     {"alpha"},
     "alpha > -1",
     "(1 - x^2 - y^2)^alpha",
     "unit disk x^2 + y^2 < 1",
     "sqrt(1 - x^2)"},
    {"biangle",
     {"alpha", "beta"},
     "alpha > -1, beta > -1",
     "(1 - x)^alpha (x - y^2)^beta",
     "parabolic biangle y^2 < x < 1",
     "sqrt(x)"},
    {"triangle",
     {"alpha", "beta", "gamma"},
     "alpha > -1, beta > -1, gamma > -1, beta + gamma > -1",
     "(1 - x)^alpha (x - y)^beta y^gamma",
     "triangle 0 < y < x < 1",
     "x"},
    {"laguerre_jacobi",
     {"alpha", "beta"},
     "alpha > -1, beta > -1",
     "x^(alpha - beta) exp(-x) (x - y)^beta",
     "wedge -x < y < x, x > 0",
     "x"},
    {"laguerre_laguerre",
     {"alpha", "beta"},
     "alpha > -1, beta > -1, alpha - beta > -1",
     "x^(alpha - beta) y^beta exp(-x - y/x)",
     "quadrant x > 0, y > 0",
     "x"},
    {"tensor",
     {"alpha1", "beta1", "alpha2", "beta2"},
     "all parameters > -1",
     "(1 - x)^alpha1 (1 + x)^beta1 (1 - y)^alpha2 (1 + y)^beta2",
     "square -1 < x < 1, -1 < y < 1",
     "1"},
};

[[noreturn]] void fail(const std::string& family, const std::string& msg) {
    throw std::invalid_argument("family " + family + ": " + msg);
}

void check_params(const FamilyDescriptor& d, const ParamMap& params) {
    for (const auto& name : d.params)
        if (!params.count(name)) fail(d.name, "missing parameter " + name);
    for (const auto& [k, v] : params) {
        bool known = false;
        for (const auto& name : d.params) known = known || name == k;
        if (!known) fail(d.name, "unknown parameter " + k);
    }
}

void check_min(const std::string& family, const std::string& what, const Rat& v) {
    if (!(v > -1)) fail(family, "requires " + what + " > -1, got " + rat_str(v));
}

// Verifies a freshly assembled manual pair, pinning the expected outcome.
PairRecord record_pair(std::string name, PearsonPair pair, const KoornwinderSystem& sys,
                       bool expect_verified, std::string note) {
    verify_divergence_form(pair, sys);
    return PairRecord{std::move(name), std::move(pair), expect_verified, std::move(note)};
}

FamilyInstance make_ball(const ParamMap& params) {
    const Rat a = params.at("alpha");
    check_min("ball", "alpha", a);

    FamilyInstance inst;
    inst.family = "ball";
    inst.params = params;
    auto w = make_family("jacobi_sym", {{"alpha", a}, {"beta", a}});
    inst.system = make_system(w, w, RhoFunction::make_sqrt(UniPoly::from_longs({1, 0, -1})));
    inst.raw = raw_system(inst.system);

    BiPoly x = BiPoly::x(), y = BiPoly::y(), one = BiPoly::constant(1);
    BiPoly den = one - x * x;
    inst.symmetrizer = {RatFun2(one), RatFun2(), RatFun2(-(x * y), den), RatFun2(one, den)};
    inst.reference_pair = symmetrize_with(inst.symmetrizer, inst.raw, inst.system);

    BiPoly E = one - x * x - y * y;
    inst.decomposition = make_decomposition_input(E, x * (a * -2), y * (a * -2), E, one, one,
                                                  one - x * x, -(x * y), one - y * y);

    inst.operator_pair = inst.reference_pair;
    inst.eigenvalue_formulas.push_back(
        {"reference", "-n(n + 2 alpha + 2)",
         [a](int n, int) -> Rat { return -(rat(n) * (rat(n) + a * 2 + 2)); }});

    inst.recorded_pairs.push_back(record_pair(
        "diagonal",
        make_pearson_pair(E, BiPoly(), E, x * (-(a * 2 + 2)), y * (-(a * 2 + 2)),
                          Provenance::Manual),
        inst.system, true,
        "diagonal alternative; not expressible in the determinant-normalized decomposition "
        "form"));
    return inst;
}

FamilyInstance make_biangle(const ParamMap& params) {
    const Rat a = params.at("alpha"), b = params.at("beta");
    check_min("biangle", "alpha", a);
    check_min("biangle", "beta", b);

    FamilyInstance inst;
    inst.family = "biangle";
    inst.params = params;
    auto w1 = make_family("jacobi01", {{"alpha", a}, {"beta", b}});
    auto w2 = make_family("jacobi_sym", {{"alpha", b}, {"beta", b}});
    inst.system = make_system(w1, w2, RhoFunction::make_sqrt(UniPoly::x()));
    inst.raw = raw_system(inst.system);

    BiPoly x = BiPoly::x(), y = BiPoly::y(), one = BiPoly::constant(1);
    inst.symmetrizer = {RatFun2(one), RatFun2(), RatFun2(y, x * 2), RatFun2(one, x * 4)};
    inst.reference_pair = symmetrize_with(inst.symmetrizer, inst.raw, inst.system);

    BiPoly xmy2 = x - y * y, omx = one - x;
    inst.decomposition = make_decomposition_input(
        omx * xmy2, xmy2 * (-a) + omx * b, y * omx * (b * -2), xmy2, omx, one, x * 2, y,
        (one - y * y) * rat(1, 2));

    inst.operator_pair = inst.reference_pair;
    inst.operator_scale = 2;
    inst.eigenvalue_formulas.push_back(
        {"reference", "-((n - m)(2n + 2 alpha + 2 beta + 5) + m(m + 2 alpha + 2 beta + 3)/2)",
         [a, b](int n, int m) -> Rat {
             return -(rat(n - m) * (rat(2 * n) + a * 2 + b * 2 + 5) +
                      rat(m) * (rat(m) + a * 2 + b * 2 + 3) / 2);
         }});
    inst.eigenvalue_formulas.push_back(
        {"corrected", "-((n - m)(2n + 2 alpha + 2 beta + 3) + m(m + 2 alpha + 2 beta + 3)/2)",
         [a, b](int n, int m) -> Rat {
             return -(rat(n - m) * (rat(2 * n) + a * 2 + b * 2 + 3) +
                      rat(m) * (rat(m) + a * 2 + b * 2 + 3) / 2);
         }});

    inst.recorded_symmetrizers.push_back(
        {"sign_variant",
         {RatFun2(one), RatFun2(), RatFun2(y, x * 2), RatFun2(-one, x * 4)},
         false,
         "flipping the sign of the (2,2) entry breaks symmetry of S*phi; symmetrize_with "
         "rejects it"});
    return inst;
}

FamilyInstance make_triangle(const ParamMap& params) {
    const Rat a = params.at("alpha"), b = params.at("beta"), c = params.at("gamma");
    check_min("triangle", "alpha", a);
    check_min("triangle", "beta", b);
    check_min("triangle", "gamma", c);
    check_min("triangle", "beta + gamma", b + c);

    FamilyInstance inst;
    inst.family = "triangle";
    inst.params = params;
    auto w1 = make_family("jacobi01", {{"alpha", a}, {"beta", b + c}});
    auto w2 = make_family("jacobi01", {{"alpha", b}, {"beta", c}});
    inst.system = make_system(w1, w2, RhoFunction::make_linear(UniPoly::x()));
    inst.raw = raw_system(inst.system);

    BiPoly x = BiPoly::x(), y = BiPoly::y(), one = BiPoly::constant(1);
    inst.symmetrizer = {RatFun2(one), RatFun2(), RatFun2(y, x), RatFun2(one, x)};
    inst.reference_pair = symmetrize_with(inst.symmetrizer, inst.raw, inst.system);

    BiPoly omx = one - x, xmy = x - y;
    BiPoly F0 = xmy * (-a) + omx * b, H0 = xmy * c - y * b;
    inst.decomposition = make_decomposition_input(omx * y * xmy, F0 * y, H0 * omx, xmy, omx, y, x,
                                                  one, one - y);

    inst.operator_pair = inst.reference_pair;
    inst.eigenvalue_formulas.push_back(
        {"reference", "-n(n + alpha + beta + gamma + 2)",
         [a, b, c](int n, int) -> Rat { return -(rat(n) * (rat(n) + a + b + c + 2)); }});
    return inst;
}

FamilyInstance make_laguerre_jacobi(const ParamMap& params) {
    const Rat a = params.at("alpha"), b = params.at("beta");
    check_min("laguerre_jacobi", "alpha", a);
    check_min("laguerre_jacobi", "beta", b);

    FamilyInstance inst;
    inst.family = "laguerre_jacobi";
    inst.params = params;
    auto w1 = make_family("laguerre", {{"alpha", a}});
    auto w2 = make_family("jacobi_sym", {{"alpha", b}, {"beta", rat(0)}});
    inst.system = make_system(w1, w2, RhoFunction::make_linear(UniPoly::x()));
    inst.raw = raw_system(inst.system);

    BiPoly x = BiPoly::x(), y = BiPoly::y(), one = BiPoly::constant(1);
    BiPoly xpy = x + y;
    inst.symmetrizer = {RatFun2(one), RatFun2(one, xpy), RatFun2(one), RatFun2(xpy + one, xpy)};
    inst.reference_pair = symmetrize_with(inst.symmetrizer, inst.raw, inst.system);

    BiPoly x2my2 = x * x - y * y;
    BiPoly F = x2my2 * (a - b) - x * x2my2 + x * xpy * b;
    inst.decomposition = make_decomposition_input(x * x2my2, F, x * xpy * (-b), x2my2, x, one, one,
                                                  one, x2my2 + x);

    inst.operator_pair = inst.reference_pair;
    inst.eigenvalue_formulas.push_back({"reference", "-n - m(m + beta)", [b](int n, int m) -> Rat {
                                            return -(rat(n) + rat(m) * (rat(m) + b));
                                        }});
    return inst;
}

FamilyInstance make_laguerre_laguerre(const ParamMap& params) {
    const Rat a = params.at("alpha"), b = params.at("beta");
    check_min("laguerre_laguerre", "alpha", a);
    check_min("laguerre_laguerre", "beta", b);
    check_min("laguerre_laguerre", "alpha - beta", a - b);

    FamilyInstance inst;
    inst.family = "laguerre_laguerre";
    inst.params = params;
    auto w1 = make_family("laguerre", {{"alpha", a}});
    auto w2 = make_family("laguerre", {{"alpha", b}});
    inst.system = make_system(w1, w2, RhoFunction::make_linear(UniPoly::x()));
    inst.raw = raw_system(inst.system);

    BiPoly x = BiPoly::x(), y = BiPoly::y(), one = BiPoly::constant(1);
    inst.symmetrizer = {RatFun2(x), RatFun2(), RatFun2(y), RatFun2(one)};
    inst.reference_pair = symmetrize_with(inst.symmetrizer, inst.raw, inst.system);

    BiPoly x2 = x * x;
    inst.decomposition = make_decomposition_input(
        x2 * x * y, x2 * y * (a - b) + x * y * y - x2 * x * y, x2 * x * b - x2 * y, x2, x, y, x,
        one, x + y);

    inst.recorded_pairs.push_back(record_pair(
        "diagonal",
        make_pearson_pair(x2, BiPoly(), x * y, x * (a - b + 2) - x2 + y, x * (b + 1) - y,
                          Provenance::Manual),
        inst.system, true, "source of the banded difference-differential relation"));
    inst.operator_pair = inst.recorded_pairs.back().pair;
    inst.operator_source = "diagonal";

    inst.eigenvalue_formulas.push_back(
        {"reference", "(n - m)(n - m + alpha + beta) - m", [a, b](int n, int m) -> Rat {
             return rat(n - m) * (rat(n - m) + a + b) - m;
         }});
    inst.eigenvalue_formulas.push_back(
        {"corrected", "-(2n^2 - 2nm + m^2 + (alpha + 1)n - (beta + 1)m)", [a, b](int n, int m) -> Rat {
             return -(rat(2 * n * n - 2 * n * m + m * m) + (a + 1) * n - (b + 1) * m);
         }});

    // First-order claims in gradient form, with the raw matrix and with the
    // diagonal matrix; the variants off by +-x are pinned as failing.
    Mat2RF diag;
    diag.m[0][0] = RatFun2(x2);
    diag.m[1][1] = RatFun2(x * y);
    inst.gradient_claims.push_back(
        {"raw_vector", inst.raw.phi, inst.raw.delta, true, ""});
    inst.gradient_claims.push_back(
        {"raw_vector_variant", inst.raw.phi,
         {inst.raw.delta.a, RatFun2(x * (b + 1) - y)}, false,
         "second component derives to beta x - y; this variant is off by x"});
    inst.gradient_claims.push_back(
        {"diagonal_vector", diag,
         {RatFun2(x * (a - b) - x2 + y), RatFun2(x * b - y)}, true, ""});
    inst.gradient_claims.push_back(
        {"diagonal_vector_variant", diag,
         {RatFun2(x * (a - b - 1) - x2 + y), RatFun2(x * (b + 1) - y)}, false,
         "components derive to ((alpha - beta - x)x + y, beta x - y); this variant is off by "
         "-x and +x"});
    return inst;
}

FamilyInstance make_tensor(const ParamMap& params) {
    const Rat pa = params.at("alpha1"), pb = params.at("beta1");
    const Rat qa = params.at("alpha2"), qb = params.at("beta2");
    check_min("tensor", "alpha1", pa);
    check_min("tensor", "beta1", pb);
    check_min("tensor", "alpha2", qa);
    check_min("tensor", "beta2", qb);

    FamilyInstance inst;
    inst.family = "tensor";
    inst.params = params;
    auto w1 = make_family("jacobi_sym", {{"alpha", pa}, {"beta", pb}});
    auto w2 = make_family("jacobi_sym", {{"alpha", qa}, {"beta", qb}});
    inst.system = make_system(w1, w2, RhoFunction::make_linear(UniPoly::constant(rat(1))));
    inst.raw = raw_system(inst.system);

    BiPoly x = BiPoly::x(), y = BiPoly::y(), one = BiPoly::constant(1);
    inst.symmetrizer = {RatFun2(one), RatFun2(), RatFun2(), RatFun2(one)};
    inst.reference_pair = symmetrize_with(inst.symmetrizer, inst.raw, inst.system);

    BiPoly fx = one - x * x, fy = one - y * y;
    BiPoly F0 = (one + x) * (-pa) + (one - x) * pb;
    BiPoly H0 = (one + y) * (-qa) + (one - y) * qb;
    inst.decomposition =
        make_decomposition_input(fx * fy, F0 * fy, H0 * fx, one, fx, fy, one, BiPoly(), one);

    inst.operator_pair = inst.reference_pair;
    inst.eigenvalue_formulas.push_back(
        {"reference", "-((n - m)(n - m + alpha1 + beta1 + 1) + m(m + alpha2 + beta2 + 1))",
         [pa, pb, qa, qb](int n, int m) -> Rat {
             return -(rat(n - m) * (rat(n - m) + pa + pb + 1) + rat(m) * (rat(m) + qa + qb + 1));
         }});
    return inst;
}

}  // namespace

const std::vector<FamilyDescriptor>& family_catalog() { return kCatalog; }

bool family_registered(const std::string& name) {
    for (const auto& d : kCatalog)
        if (d.name == name) return true;
    return false;
}

const FamilyDescriptor& family_descriptor(const std::string& name) {
    for (const auto& d : kCatalog)
        if (d.name == name) return d;
    throw std::invalid_argument("unknown family " + name + " (run 'family list' for choices)");
}

FamilyInstance make_instance(const std::string& family, const ParamMap& params) {
    const FamilyDescriptor& d = family_descriptor(family);
    check_params(d, params);
    if (family == "ball") return make_ball(params);
    if (family == "biangle") return make_biangle(params);
    if (family == "triangle") return make_triangle(params);
    if (family == "laguerre_jacobi") return make_laguerre_jacobi(params);
    if (family == "laguerre_laguerre") return make_laguerre_laguerre(params);
    return make_tensor(params);
}

DiffOperator2 FamilyInstance::reference_operator() const {
    DiffOperator2 op = build_operator(operator_pair);
    if (operator_scale != 1) {
        op.c_xx = op.c_xx * operator_scale;
        op.c_xy = op.c_xy * operator_scale;
        op.c_yy = op.c_yy * operator_scale;
        op.c_x = op.c_x * operator_scale;
        op.c_y = op.c_y * operator_scale;
    }
    return op;
}

}  // namespace kwp
