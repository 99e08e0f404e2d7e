#pragma once
// Second-order partial differential operators attached to a matrix Pearson
// pair: exact application to polynomials, expansion of images in the monic
// Koornwinder basis, and eigenstructure classification.

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kwp/bipoly.hpp"
#include "kwp/koornwinder.hpp"
#include "kwp/pearson.hpp"

namespace kwp {

// L = c_xx dxx + 2 c_xy dxy + c_yy dyy + c_x dx + c_y dy.
struct DiffOperator2 {
    BiPoly c_xx, c_xy, c_yy, c_x, c_y;
};

// Copies (phi11, phi12, phi22, psi1, psi2) of a verified pair; the mixed
// coefficient is stored once and applied with factor 2.
DiffOperator2 build_operator(const PearsonPair& pair);

BiPoly apply(const DiffOperator2& op, const BiPoly& p);

// Exact coefficients of q in the monic basis {P_{n,m}} by leading-term
// elimination in the graded order (the basis is unitriangular); empty map
// for q = 0.
std::map<std::pair<int, int>, Rat> expand_in_basis(const BasisTable& table, const BiPoly& q);
std::map<std::pair<int, int>, Rat> expand_in_basis(const KoornwinderSystem& sys, const BiPoly& q,
                                                   int nmax);

enum class OperatorClass { Eigenfunction, Classical, KrallSheffer, Semiclassical };

// True when images stay inside the span of polynomials of the same total
// degree (eigenfunction, Krall-Sheffer, classical).
bool preserves_degree(OperatorClass c);

// "eigenfunction", "classical", "krall_sheffer", or "semiclassical(s)".
std::string class_name(OperatorClass c, int s = 0);

struct ExpansionReport {
    int n = 0, m = 0;
    std::map<std::pair<int, int>, Rat> coefficients;  // (n', m') -> coefficient
    std::set<int> band;                               // degrees n' carrying a nonzero coefficient
    OperatorClass classification = OperatorClass::Eigenfunction;
    int s_local = 0;                                  // max |n' - n| over the band
};

// Expands L[P_{n,m}] for every 0 <= m <= n <= nmax.  Per-report
// classification: eigenfunction (single term at (n, m), or zero image),
// classical (all terms of degree n), otherwise semiclassical with s_local.
std::vector<ExpansionReport> classify(const KoornwinderSystem& sys, const DiffOperator2& op,
                                      int nmax);

struct ClassificationSummary {
    OperatorClass overall = OperatorClass::Eigenfunction;
    int band_s = 0;                                  // empirical band half-width
    std::map<std::pair<int, int>, Rat> eigenvalues;  // filled when every image is diagonal
    std::vector<Rat> lambda_by_degree;               // filled for the Krall-Sheffer case
};

// Family-level verdict: Krall-Sheffer when every P_{n,m} is an eigenfunction
// and the eigenvalue depends only on n; plain eigenfunction when it also
// depends on m; classical when images preserve total degree without being
// diagonal; semiclassical (with the largest local band) otherwise.
ClassificationSummary summarize(const std::vector<ExpansionReport>& reports);

}  // namespace kwp
