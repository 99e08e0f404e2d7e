#include "kwp/pearson.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>

#include "kwp/weights.hpp"

namespace kwp {

namespace {

// rho^k as a polynomial, when representable: any k >= 0 in case I, even
// k >= 0 in case II, any integer k for a constant rho.
std::optional<BiPoly> rho_power(const RhoFunction& rho, int k) {
    if (rho.is_linear() && rho.linear.degree() == 0) {
        Rat c = rho.linear.coeff(0);
        Rat v = k >= 0 ? rat_pow(c, k) : rat_pow(Rat(1) / c, -k);
        return BiPoly::constant(v);
    }
    if (k < 0) return std::nullopt;
    if (rho.is_linear()) return BiPoly::from_uni(rho.linear, 0).pow(static_cast<unsigned>(k));
    if (k % 2 != 0) return std::nullopt;
    return BiPoly::from_uni(rho.square, 0).pow(static_cast<unsigned>(k / 2));
}

// rho^k * p(y/rho) when it is a polynomial.
std::optional<BiPoly> compose_scaled(const UniPoly& p, const RhoFunction& rho, int k) {
    BiPoly out;
    for (int j = 0; j <= p.degree(); ++j) {
        if (p.coeff(j) == 0) continue;
        auto rp = rho_power(rho, k - j);
        if (!rp) return std::nullopt;
        out = out + *rp * BiPoly::monomial(0, j, p.coeff(j));
    }
    return out;
}

Rat rat_gcd(const Rat& a, const Rat& b) {
    if (a == 0) return abs(b);
    if (b == 0) return abs(a);
    Int an = a.get_num(), ad = a.get_den(), bn = b.get_num(), bd = b.get_den();
    Int n, d;
    mpz_gcd(n.get_mpz_t(), an.get_mpz_t(), bn.get_mpz_t());
    mpz_lcm(d.get_mpz_t(), ad.get_mpz_t(), bd.get_mpz_t());
    return rat(n, d);
}

// Primitive integer multiple with positive leading coefficient; canonical
// representative of a factor up to rational scaling.
BiPoly canonical_factor(const BiPoly& p) {
    if (p.is_zero()) return p;
    Rat content;
    for (const auto& [m, c] : p.terms()) content = rat_gcd(content, c);
    BiPoly q = p * (Rat(1) / content);
    if (q.leading_coeff() < 0) q = -q;
    return q;
}

void add_factor(std::vector<BiPoly>& out, const BiPoly& f) {
    if (f.total_degree() < 1) return;
    BiPoly c = canonical_factor(f);
    for (const auto& e : out)
        if (e == c) return;
    out.push_back(c);
}

bool has_parity(const UniPoly& p) {
    bool even = true, odd = true;
    for (int i = 0; i <= p.degree(); ++i) {
        if (p.coeff(i) == 0) continue;
        (i % 2 == 0 ? odd : even) = false;
    }
    return even || odd;
}

UniPoly reflect_monic(const UniPoly& p) {
    std::vector<Rat> c(p.coeffs());
    for (std::size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
    return UniPoly(std::move(c)).monic();
}

// Irreducible bivariate factors of rho^k phi2(y/rho), up to scalars: each
// factor of phi2 lifts by its own degree; in case II factors without parity
// must be paired with their reflections first.
std::vector<BiPoly> lifted_factor_bases(const UniPoly& phi2, const RhoFunction& rho) {
    std::vector<BiPoly> out;
    auto facs = factor_over_q(phi2);
    if (rho.is_linear()) {
        for (const auto& f : facs) out.push_back(lift(f.base, rho, f.base.degree()));
        return out;
    }
    std::vector<UniPoly> rest;
    for (const auto& f : facs) {
        if (has_parity(f.base))
            out.push_back(lift(f.base, rho, f.base.degree()));
        else
            rest.push_back(f.base);
    }
    std::vector<bool> used(rest.size(), false);
    for (std::size_t i = 0; i < rest.size(); ++i) {
        if (used[i]) continue;
        UniPoly want = reflect_monic(rest[i]);
        bool matched = false;
        for (std::size_t l = i + 1; l < rest.size(); ++l) {
            if (used[l] || rest[l] != want) continue;
            used[i] = used[l] = true;
            UniPoly prod = rest[i] * rest[l];
            out.push_back(lift(prod, rho, prod.degree()));
            matched = true;
            break;
        }
        if (!matched)
            throw std::invalid_argument(
                "factor of the second weight cannot be paired into an even product");
    }
    return out;
}

}  // namespace

int PearsonPair::deg_phi() const {
    return std::max({phi11.total_degree(), phi12.total_degree(), phi22.total_degree()});
}

int PearsonPair::deg_psi() const {
    return std::max(psi1.total_degree(), psi2.total_degree());
}

PearsonPair make_pearson_pair(const BiPoly& phi11, const BiPoly& phi12, const BiPoly& phi22,
                              const BiPoly& psi1, const BiPoly& psi2, Provenance provenance) {
    PearsonPair p;
    p.phi11 = phi11;
    p.phi12 = phi12;
    p.phi22 = phi22;
    p.psi1 = psi1;
    p.psi2 = psi2;
    p.provenance = provenance;
    if (p.deg_psi() < 1) throw std::invalid_argument("Psi must have degree at least 1");
    p.s_value = std::max(p.deg_phi() - 2, p.deg_psi() - 1);
    return p;
}

std::string Verdict::summary() const {
    if (pass) return "identity holds";
    return "identity fails: residuals (" + residual1.str() + ", " + residual2.str() + ")";
}

RawSystem raw_system(const KoornwinderSystem& sys) {
    PearsonData1 p1 = pearson_tilde(sys.w1);
    PearsonData1 p2 = pearson_tilde(sys.w2);
    const RhoFunction& rho = sys.rho;

    // Row 1 is (phi1, eta y | psi~1) with eta = phi1 rho'/rho; if eta is not
    // a polynomial the row is multiplied by rho (case I) or rho^2 (case II).
    int j = 0;
    UniPoly r1_phi = p1.phi, r1_eta, r1_delta = p1.psi_tilde;
    if (rho.is_linear()) {
        UniPoly num = p1.phi * rho.linear.derivative();
        if (auto q = divide_exact(num, rho.linear)) {
            r1_eta = *q;
        } else {
            j = 1;
            r1_phi = p1.phi * rho.linear;
            r1_eta = num;
            r1_delta = r1_delta * rho.linear;
        }
    } else {
        UniPoly num = p1.phi * rho.square.derivative() * rat(1, 2);
        if (auto q = divide_exact(num, rho.square)) {
            r1_eta = *q;
        } else {
            j = 2;
            r1_phi = p1.phi * rho.square;
            r1_eta = num;
            r1_delta = r1_delta * rho.square;
        }
    }

    // Row 2 is (0, phi2(y/rho) | psi~2(y/rho)/rho); the minimal rho power
    // clearing both entries to polynomials gives (0, rho^k phi2(y/rho) |
    // rho^(k-1) psi~2(y/rho)).
    int k = -1;
    BiPoly r2_phi, r2_delta;
    int kmax = p2.phi.degree() + std::max(p2.psi_tilde.degree(), 0) + 4;
    for (int kk = 0; kk <= kmax; ++kk) {
        auto a = compose_scaled(p2.phi, rho, kk);
        auto b = compose_scaled(p2.psi_tilde, rho, kk - 1);
        if (a && b) {
            k = kk;
            r2_phi = *a;
            r2_delta = *b;
            break;
        }
    }
    if (k < 0)
        throw std::invalid_argument(
            "no power of rho clears the second row to polynomial form");
    if (r1_phi.is_zero() || r2_phi.is_zero())
        throw std::invalid_argument("degenerate first-order system: zero diagonal entry");

    RawSystem raw;
    raw.phi.m[0][0] = RatFun2(BiPoly::from_uni(r1_phi, 0));
    raw.phi.m[0][1] = RatFun2(BiPoly::from_uni(r1_eta, 0) * BiPoly::y());
    raw.phi.m[1][0] = RatFun2();
    raw.phi.m[1][1] = RatFun2(r2_phi);
    raw.delta.a = RatFun2(BiPoly::from_uni(r1_delta, 0));
    raw.delta.b = RatFun2(r2_delta);
    raw.row_scaling = {j, k};

    for (const auto& f : factor_over_q(r1_phi)) add_factor(raw.singular_factors, BiPoly::from_uni(f.base, 0));
    for (const auto& b : lifted_factor_bases(p2.phi, rho)) add_factor(raw.singular_factors, b);
    if (k > p2.phi.degree()) {
        const UniPoly& extra = rho.is_linear() ? rho.linear : rho.square;
        for (const auto& f : factor_over_q(extra)) add_factor(raw.singular_factors, BiPoly::from_uni(f.base, 0));
    }
    return raw;
}

Verdict verify_gradient_form(const Mat2RF& M, const Vec2RF& v, const KoornwinderSystem& sys) {
    Vec2RF g = grad_log_weight(sys);
    Verdict out;
    out.residual1 = v.a - (M.m[0][0] * g.a + M.m[0][1] * g.b);
    out.residual2 = v.b - (M.m[1][0] * g.a + M.m[1][1] * g.b);
    out.pass = out.residual1 == RatFun2() && out.residual2 == RatFun2();
    return out;
}

Verdict verify_divergence_form(PearsonPair& pair, const KoornwinderSystem& sys) {
    Vec2RF g = grad_log_weight(sys);
    Verdict out;
    out.residual1 = RatFun2(pair.psi1) -
                    (RatFun2(pair.phi11.partial(0) + pair.phi12.partial(1)) +
                     RatFun2(pair.phi11) * g.a + RatFun2(pair.phi12) * g.b);
    out.residual2 = RatFun2(pair.psi2) -
                    (RatFun2(pair.phi12.partial(0) + pair.phi22.partial(1)) +
                     RatFun2(pair.phi12) * g.a + RatFun2(pair.phi22) * g.b);
    out.pass = out.residual1 == RatFun2() && out.residual2 == RatFun2();
    pair.verified = out.pass;
    return out;
}

bool symmetrizer_constraint_holds(const Symmetrizer& s, const RawSystem& raw) {
    RatFun2 lhs = s.A * raw.phi.m[0][1] + s.B * raw.phi.m[1][1] - s.C * raw.phi.m[0][0];
    return lhs == RatFun2();
}

PearsonPair symmetrize_with(const Symmetrizer& s, const RawSystem& raw, const KoornwinderSystem& sys) {
    if (!symmetrizer_constraint_holds(s, raw))
        throw std::invalid_argument(
            "symmetrizer constraint A phi12 + B phi22 - C phi11 = 0 violated");
    if (s.A * s.D - s.B * s.C == RatFun2())
        throw std::invalid_argument("symmetrizer is singular: A D - B C = 0");

    Mat2RF S;
    S.m[0][0] = s.A;
    S.m[0][1] = s.B;
    S.m[1][0] = s.C;
    S.m[1][1] = s.D;
    Mat2RF Phi = S * raw.phi;
    Vec2RF sd = S * raw.delta;

    std::string bad;
    auto check = [&bad](const RatFun2& e, const char* name) {
        if (e.is_polynomial()) return;
        if (!bad.empty()) bad += ", ";
        bad += name;
    };
    check(Phi.m[0][0], "Phi11");
    check(Phi.m[0][1], "Phi12");
    check(Phi.m[1][1], "Phi22");
    check(sd.a, "Psi1");
    check(sd.b, "Psi2");
    if (!bad.empty())
        throw std::invalid_argument("symmetrized system has non-polynomial entries: " + bad);

    BiPoly phi11 = Phi.m[0][0].as_polynomial();
    BiPoly phi12 = Phi.m[0][1].as_polynomial();
    BiPoly phi22 = Phi.m[1][1].as_polynomial();
    BiPoly psi1 = sd.a.as_polynomial() + phi11.partial(0) + phi12.partial(1);
    BiPoly psi2 = sd.b.as_polynomial() + phi12.partial(0) + phi22.partial(1);
    PearsonPair pair = make_pearson_pair(phi11, phi12, phi22, psi1, psi2, Provenance::RawSymmetrizer);
    Verdict v = verify_divergence_form(pair, sys);
    if (!v.pass)
        throw std::logic_error("symmetrized pair failed verification: " + v.summary());
    return pair;
}

namespace {

std::vector<Mono> monomials_up_to(int d) {
    std::vector<Mono> out;
    for (int t = 0; t <= d; ++t)
        for (int j = 0; j <= t; ++j) out.push_back({t - j, j});
    return out;
}

// Basis of the right nullspace; M is consumed.
std::vector<std::vector<Rat>> nullspace(std::vector<std::vector<Rat>>& M, std::size_t N) {
    const std::size_t rows = M.size();
    std::vector<std::size_t> pivot_cols;
    std::vector<bool> is_pivot(N, false);
    std::size_t r = 0;
    for (std::size_t c = 0; c < N && r < rows; ++c) {
        std::size_t sel = r;
        while (sel < rows && M[sel][c] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(M[sel], M[r]);
        Rat inv = M[r][c];
        for (std::size_t cc = c; cc < N; ++cc) M[r][cc] /= inv;
        for (std::size_t rr = 0; rr < rows; ++rr) {
            if (rr == r || M[rr][c] == 0) continue;
            Rat f = M[rr][c];
            for (std::size_t cc = c; cc < N; ++cc) M[rr][cc] -= f * M[r][cc];
        }
        is_pivot[c] = true;
        pivot_cols.push_back(c);
        ++r;
    }
    std::vector<std::vector<Rat>> basis;
    for (std::size_t f = 0; f < N; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rat> v(N, Rat(0));
        v[f] = 1;
        for (std::size_t rr = 0; rr < pivot_cols.size(); ++rr) v[pivot_cols[rr]] = -M[rr][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

// Numerator vectors (n_A, n_B, n_C, n_D) of degree <= cap over the shared
// denominator `den` such that S phi is symmetric and S phi, S delta are
// polynomial.  All conditions are linear: the symmetry constraint directly,
// and the divisibility conditions through division remainders.
std::vector<std::vector<Rat>> solution_space(const BiPoly& den, int cap, const BiPoly& f11,
                                             const BiPoly& f12, const BiPoly& f22,
                                             const BiPoly& g1, const BiPoly& g2,
                                             const std::vector<Mono>& monos) {
    const std::size_t T = monos.size(), N = 4 * T;
    std::map<std::array<int, 3>, std::size_t> row_of;
    std::vector<std::vector<Rat>> M;
    auto scatter = [&](int cond, std::size_t col, const BiPoly& contrib) {
        for (const auto& [mo, c] : contrib.terms()) {
            std::array<int, 3> key{cond, mo.i, mo.j};
            auto it = row_of.find(key);
            if (it == row_of.end()) {
                it = row_of.emplace(key, M.size()).first;
                M.emplace_back(N, Rat(0));
            }
            M[it->second][col] += c;
        }
    };
    const bool trivial = den.total_degree() < 1;
    for (std::size_t t = 0; t < T; ++t) {
        BiPoly mono = BiPoly::monomial(monos[t].i, monos[t].j);
        scatter(0, 0 * T + t, mono * f12);
        scatter(0, 1 * T + t, mono * f22);
        scatter(0, 2 * T + t, -(mono * f11));
        if (trivial) continue;
        auto rem = [&](const BiPoly& p) { return div_rem(p, den).rem; };
        BiPoly r_f11 = rem(mono * f11);
        scatter(1, 0 * T + t, r_f11);
        scatter(2, 2 * T + t, r_f11);
        scatter(3, 2 * T + t, rem(mono * f12));
        scatter(3, 3 * T + t, rem(mono * f22));
        BiPoly r_g1 = rem(mono * g1);
        BiPoly r_g2 = rem(mono * g2);
        scatter(4, 0 * T + t, r_g1);
        scatter(4, 1 * T + t, r_g2);
        scatter(5, 2 * T + t, r_g1);
        scatter(5, 3 * T + t, r_g2);
    }
    return nullspace(M, N);
}

struct Candidate {
    Symmetrizer s;
    PearsonPair pair;
    std::string key;
};

std::optional<Candidate> make_candidate(const std::vector<Rat>& w, const std::vector<Mono>& monos,
                                        const BiPoly& den, const RawSystem& raw,
                                        const KoornwinderSystem& sys) {
    const std::size_t T = monos.size();
    std::array<BiPoly, 4> num;
    for (int b = 0; b < 4; ++b) {
        BiPoly p;
        for (std::size_t t = 0; t < T; ++t) {
            const Rat& c = w[static_cast<std::size_t>(b) * T + t];
            if (c != 0) p.add_term(monos[t], c);
        }
        num[static_cast<std::size_t>(b)] = p;
    }
    // Normalize the joint positive rational scale: primitive coefficients,
    // first nonzero numerator with positive leading coefficient.
    Rat content;
    for (const auto& p : num)
        for (const auto& [m, c] : p.terms()) content = rat_gcd(content, c);
    if (content == 0) return std::nullopt;
    Rat scale = Rat(1) / content;
    for (const auto& p : num) {
        if (p.is_zero()) continue;
        if (p.leading_coeff() < 0) scale = -scale;
        break;
    }
    for (auto& p : num) p = p * scale;

    Candidate cand;
    cand.s = Symmetrizer{RatFun2(num[0], den), RatFun2(num[1], den), RatFun2(num[2], den),
                         RatFun2(num[3], den)};
    if (cand.s.A * cand.s.D - cand.s.B * cand.s.C == RatFun2()) return std::nullopt;
    cand.key = cand.s.A.str() + " | " + cand.s.B.str() + " | " + cand.s.C.str() + " | " +
               cand.s.D.str();
    try {
        cand.pair = symmetrize_with(cand.s, raw, sys);
    } catch (const std::exception&) {
        return std::nullopt;
    }
    return cand;
}

}  // namespace

std::vector<Symmetrizer> search_symmetrizer(const RawSystem& raw, const KoornwinderSystem& sys,
                                            int deg_bound) {
    if (deg_bound < 0) deg_bound = 0;
    const BiPoly f11 = raw.phi.m[0][0].as_polynomial();
    const BiPoly f12 = raw.phi.m[0][1].as_polynomial();
    const BiPoly f22 = raw.phi.m[1][1].as_polynomial();
    const BiPoly g1 = raw.delta.a.as_polynomial();
    const BiPoly g2 = raw.delta.b.as_polynomial();

    // A reduced-form entry denominator must divide phi11 (entries A, C via
    // A phi11, C phi11 polynomial) or phi11 * phi22 (entries B, D, solved from
    // the other two), so shared denominators range over divisors of
    // phi11 * phi22 with multiplicity at most 2 per irreducible factor.
    std::vector<std::pair<BiPoly, int>> fm;
    const BiPoly prod = f11 * f22;
    for (const auto& f : raw.singular_factors) {
        int mult = 0;
        BiPoly cur = prod;
        while (mult < 2) {
            auto q = divide_exact(cur, f);
            if (!q) break;
            cur = *q;
            ++mult;
        }
        if (mult > 0) fm.emplace_back(f, mult);
    }
    std::vector<BiPoly> dens{BiPoly::constant(1)};
    for (const auto& [f, mult] : fm) {
        std::vector<BiPoly> next;
        for (const auto& d : dens) {
            BiPoly cur = d;
            next.push_back(cur);
            for (int e = 1; e <= mult; ++e) {
                cur = cur * f;
                next.push_back(cur);
            }
        }
        dens = std::move(next);
    }
    std::sort(dens.begin(), dens.end(), [](const BiPoly& a, const BiPoly& b) {
        if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
        return a.str() < b.str();
    });

    std::map<std::string, Candidate> found;
    for (const auto& den : dens) {
        const int full = den.total_degree() + deg_bound;
        for (int cap = 0; cap <= full; ++cap) {
            auto monos = monomials_up_to(cap);
            auto basis = solution_space(den, cap, f11, f12, f22, g1, g2, monos);
            if (basis.empty()) continue;
            const std::size_t dim = basis.size(), n = 4 * monos.size();
            std::vector<std::vector<Rat>> combos;
            if (dim <= 6) {
                // Every {-1,0,1} combination of the basis.
                std::vector<int> c(dim, -1);
                while (true) {
                    bool all_zero = std::all_of(c.begin(), c.end(), [](int v) { return v == 0; });
                    if (!all_zero) {
                        std::vector<Rat> w(n, Rat(0));
                        for (std::size_t i = 0; i < dim; ++i) {
                            if (c[i] == 0) continue;
                            for (std::size_t l = 0; l < n; ++l) w[l] += Rat(c[i]) * basis[i][l];
                        }
                        combos.push_back(std::move(w));
                    }
                    std::size_t pos = 0;
                    while (pos < dim && c[pos] == 1) c[pos++] = -1;
                    if (pos == dim) break;
                    ++c[pos];
                }
            } else {
                for (const auto& b : basis) combos.push_back(b);
                for (std::size_t i = 0; i < dim; ++i)
                    for (std::size_t l = i + 1; l < dim; ++l) {
                        std::vector<Rat> wp(n), wm(n);
                        for (std::size_t t = 0; t < n; ++t) {
                            wp[t] = basis[i][t] + basis[l][t];
                            wm[t] = basis[i][t] - basis[l][t];
                        }
                        combos.push_back(std::move(wp));
                        combos.push_back(std::move(wm));
                    }
            }
            bool any = false;
            for (const auto& w : combos) {
                auto cand = make_candidate(w, monos, den, raw, sys);
                if (!cand) continue;
                any = true;
                found.emplace(cand->key, std::move(*cand));
            }
            if (any) break;  // minimal nondegenerate degree reached for this denominator
        }
    }

    std::vector<const Candidate*> order;
    order.reserve(found.size());
    for (const auto& [key, c] : found) order.push_back(&c);
    std::sort(order.begin(), order.end(), [](const Candidate* a, const Candidate* b) {
        int pa = a->pair.deg_phi(), pb = b->pair.deg_phi();
        if (pa != pb) return pa < pb;
        int qa = a->pair.deg_psi(), qb = b->pair.deg_psi();
        if (qa != qb) return qa < qb;
        return a->key < b->key;
    });
    std::vector<Symmetrizer> out;
    out.reserve(order.size());
    for (const Candidate* c : order) out.push_back(c->s);
    return out;
}

DecompositionInput make_decomposition_input(const BiPoly& E, const BiPoly& F, const BiPoly& H,
                                            const BiPoly& a0, const BiPoly& a1, const BiPoly& c1,
                                            const BiPoly& a2, const BiPoly& b1, const BiPoly& c2) {
    DecompositionInput in;
    in.E = E;
    in.F = F;
    in.H = H;
    in.a0 = a0;
    in.a1 = a1;
    in.c1 = c1;
    in.a2 = a2;
    in.b1 = b1;
    in.c2 = c2;
    if (E.is_zero()) throw std::invalid_argument("E must be nonzero");
    if (a0 * a1 * c1 != E) throw std::invalid_argument("decomposition split invalid: E != a0 a1 c1");
    auto f0 = divide_exact(F, c1);
    if (!f0) throw std::invalid_argument("decomposition split invalid: c1 does not divide F");
    auto h0 = divide_exact(H, a1);
    if (!h0) throw std::invalid_argument("decomposition split invalid: a1 does not divide H");
    in.F0 = *f0;
    in.H0 = *h0;
    if (a2 * c2 - a1 * b1 * b1 * c1 != a0)
        throw std::invalid_argument("decomposition identity violated: a2 c2 - a1 b1^2 c1 != a0");
    return in;
}

PearsonPair decomposition_method(const DecompositionInput& in, const KoornwinderSystem& sys) {
    Vec2RF g = grad_log_weight(sys);
    RatFun2 E(in.E);
    if (RatFun2(in.F) != E * g.a || RatFun2(in.H) != E * g.b)
        throw std::invalid_argument("decomposition inputs inconsistent: (F, H) != E grad(ln w)");
    for (const auto& [px, py] : interior_points(sys, 10))
        if (in.E.eval(px, py) == 0)
            throw std::invalid_argument("E vanishes at an interior point of the domain");

    RatFun2 a0(in.a0), a1(in.a1), c1(in.c1);
    RatFun2 a = RatFun2(in.a2) / (a0 * c1);
    RatFun2 b = RatFun2(in.b1) / a0;
    RatFun2 c = RatFun2(in.c2) / (a0 * a1);
    if ((a * c - b * b) * E != RatFun2(Rat(1)))
        throw std::logic_error("decomposition identity violated: (a c - b^2) E != 1");

    BiPoly phi11 = (a * E).as_polynomial();
    BiPoly phi12 = (b * E).as_polynomial();
    BiPoly phi22 = (c * E).as_polynomial();
    RatFun2 psit1 = a * RatFun2(in.F) + b * RatFun2(in.H);
    RatFun2 psit2 = b * RatFun2(in.F) + c * RatFun2(in.H);
    if (!psit1.is_polynomial() || !psit2.is_polynomial())
        throw std::invalid_argument("gradient vector (a F + b H, b F + c H) is not polynomial");
    BiPoly psi1 = psit1.as_polynomial() + phi11.partial(0) + phi12.partial(1);
    BiPoly psi2 = psit2.as_polynomial() + phi12.partial(0) + phi22.partial(1);
    PearsonPair pair = make_pearson_pair(phi11, phi12, phi22, psi1, psi2, Provenance::Decomposition);
    Verdict v = verify_divergence_form(pair, sys);
    if (!v.pass)
        throw std::logic_error("decomposition pair failed verification: " + v.summary());
    return pair;
}

std::vector<std::pair<Rat, Rat>> interior_points(const KoornwinderSystem& sys, int count) {
    std::vector<std::pair<Rat, Rat>> out;
    const Bound& xlo = sys.domain.x_lo;
    const Bound& xhi = sys.domain.x_hi;
    for (int i = 1; i <= count; ++i) {
        Rat x;
        if (xlo.is_finite() && xhi.is_finite())
            x = xlo.value + (xhi.value - xlo.value) * Rat(i, count + 1);
        else if (xlo.is_finite())
            x = xlo.value + Rat(i);
        else if (xhi.is_finite())
            x = xhi.value - Rat(i);
        else
            x = Rat(2 * i - count - 1) + rat(1, 2);
        if (!sys.rho.is_linear()) {
            // |y| < d sqrt(q(x)): take y = d t min(q(x), 1) with |t| < 1/2.
            Rat t = Rat(2 * i - count - 1, 2 * (count + 1));
            if (t == 0) t = rat(1, 3);
            Rat q = sys.rho.square.eval(x);
            Rat m = q < 1 ? q : Rat(1);
            out.emplace_back(x, sys.domain.y_hi.value * t * m);
        } else {
            const Bound& ylo = sys.domain.y_lo;
            const Bound& yhi = sys.domain.y_hi;
            Rat u;
            if (ylo.is_finite() && yhi.is_finite())
                u = ylo.value + (yhi.value - ylo.value) * Rat(i, count + 1);
            else if (ylo.is_finite())
                u = ylo.value + Rat(i);
            else if (yhi.is_finite())
                u = yhi.value - Rat(i);
            else
                u = Rat(2 * i - count - 1) + rat(1, 2);
            out.emplace_back(x, sys.rho.linear.eval(x) * u);
        }
    }
    return out;
}

}  // namespace kwp
