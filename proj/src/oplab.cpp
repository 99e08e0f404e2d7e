#include "kwp/oplab.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace kwp {

DiffOperator2 build_operator(const PearsonPair& pair) {
    if (!pair.verified)
        throw std::invalid_argument("build_operator requires a verified Pearson pair");
    return DiffOperator2{pair.phi11, pair.phi12, pair.phi22, pair.psi1, pair.psi2};
}

BiPoly apply(const DiffOperator2& op, const BiPoly& p) {
    BiPoly px = p.partial(0);
    BiPoly py = p.partial(1);
    return op.c_xx * px.partial(0) + op.c_xy * px.partial(1) * Rat(2) + op.c_yy * py.partial(1) +
           op.c_x * px + op.c_y * py;
}

std::map<std::pair<int, int>, Rat> expand_in_basis(const BasisTable& table, const BiPoly& q) {
    std::map<std::pair<int, int>, Rat> out;
    BiPoly rest = q;
    while (!rest.is_zero()) {
        Mono lead = rest.leading_mono();
        int n = lead.i + lead.j;
        int m = lead.j;
        if (n > table.nmax())
            throw std::invalid_argument("expansion needs basis degree " + std::to_string(n) +
                                        " but the table stops at " + std::to_string(table.nmax()));
        Rat c = rest.leading_coeff();
        out[{n, m}] += c;
        rest = rest - table.at(n, m) * c;
    }
    for (auto it = out.begin(); it != out.end();) {
        if (it->second == 0)
            it = out.erase(it);
        else
            ++it;
    }
    return out;
}

std::map<std::pair<int, int>, Rat> expand_in_basis(const KoornwinderSystem& sys, const BiPoly& q,
                                                   int nmax) {
    BasisTable table(sys, nmax);
    return expand_in_basis(table, q);
}

bool preserves_degree(OperatorClass c) {
    return c == OperatorClass::Eigenfunction || c == OperatorClass::Classical ||
           c == OperatorClass::KrallSheffer;
}

std::string class_name(OperatorClass c, int s) {
    switch (c) {
        case OperatorClass::Eigenfunction: return "eigenfunction";
        case OperatorClass::Classical: return "classical";
        case OperatorClass::KrallSheffer: return "krall_sheffer";
        case OperatorClass::Semiclassical: return "semiclassical(" + std::to_string(s) + ")";
    }
    return "unknown";
}

namespace {

// Extra degree headroom the image of a degree-n polynomial can pick up.
int degree_growth(const DiffOperator2& op) {
    int g = 0;
    g = std::max(g, op.c_xx.total_degree() - 2);
    g = std::max(g, op.c_xy.total_degree() - 2);
    g = std::max(g, op.c_yy.total_degree() - 2);
    g = std::max(g, op.c_x.total_degree() - 1);
    g = std::max(g, op.c_y.total_degree() - 1);
    return g;
}

}  // namespace

std::vector<ExpansionReport> classify(const KoornwinderSystem& sys, const DiffOperator2& op,
                                      int nmax) {
    if (nmax < 0) throw std::invalid_argument("classify requires nmax >= 0");
    BasisTable table(sys, nmax + degree_growth(op));
    std::vector<ExpansionReport> reports;
    for (int n = 0; n <= nmax; ++n) {
        for (int m = 0; m <= n; ++m) {
            ExpansionReport rep;
            rep.n = n;
            rep.m = m;
            rep.coefficients = expand_in_basis(table, apply(op, table.at(n, m)));
            for (const auto& [pos, c] : rep.coefficients) rep.band.insert(pos.first);
            bool diagonal = rep.coefficients.empty() ||
                            (rep.coefficients.size() == 1 &&
                             rep.coefficients.begin()->first == std::pair<int, int>{n, m});
            bool same_degree = true;
            for (int d : rep.band) {
                rep.s_local = std::max(rep.s_local, std::abs(d - n));
                if (d != n) same_degree = false;
            }
            rep.classification = diagonal         ? OperatorClass::Eigenfunction
                                 : same_degree    ? OperatorClass::Classical
                                                  : OperatorClass::Semiclassical;
            reports.push_back(rep);
        }
    }
    return reports;
}

ClassificationSummary summarize(const std::vector<ExpansionReport>& reports) {
    if (reports.empty()) throw std::invalid_argument("summarize requires at least one report");
    ClassificationSummary out;
    bool all_eigen = true;
    bool all_degree_preserving = true;
    int max_degree = 0;
    for (const auto& rep : reports) {
        out.band_s = std::max(out.band_s, rep.s_local);
        max_degree = std::max(max_degree, rep.n);
        if (rep.classification != OperatorClass::Eigenfunction) all_eigen = false;
        if (!preserves_degree(rep.classification)) all_degree_preserving = false;
    }
    if (!all_degree_preserving) {
        out.overall = OperatorClass::Semiclassical;
        return out;
    }
    if (!all_eigen) {
        out.overall = OperatorClass::Classical;
        return out;
    }
    for (const auto& rep : reports) {
        auto it = rep.coefficients.find({rep.n, rep.m});
        out.eigenvalues[{rep.n, rep.m}] = it == rep.coefficients.end() ? Rat(0) : it->second;
    }
    // Krall-Sheffer when the eigenvalue is a function of the degree alone.
    std::vector<Rat> by_degree(static_cast<size_t>(max_degree) + 1, Rat(0));
    std::vector<bool> seen(static_cast<size_t>(max_degree) + 1, false);
    bool degree_function = true;
    for (const auto& [pos, lambda] : out.eigenvalues) {
        size_t n = static_cast<size_t>(pos.first);
        if (!seen[n]) {
            seen[n] = true;
            by_degree[n] = lambda;
        } else if (by_degree[n] != lambda) {
            degree_function = false;
        }
    }
    if (degree_function) {
        out.overall = OperatorClass::KrallSheffer;
        out.lambda_by_degree = std::move(by_degree);
    } else {
        out.overall = OperatorClass::Eigenfunction;
    }
    return out;
}

}  // namespace kwp
