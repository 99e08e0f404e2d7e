#include "kwp/report.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace kwp {

namespace {

std::string provenance_name(Provenance p) {
    switch (p) {
        case Provenance::RawSymmetrizer: return "symmetrizer";
        case Provenance::Decomposition: return "decomposition";
        case Provenance::Manual: return "manual";
    }
    return "unknown";
}

std::string real_str(const Real& r) { return Real(r).str(3, std::ios_base::scientific); }

Json vec_to_json(const Vec2RF& v) { return Json::array({rf_to_json(v.a), rf_to_json(v.b)}); }

Json mat_to_json(const Mat2RF& m) {
    return Json::array({Json::array({rf_to_json(m.m[0][0]), rf_to_json(m.m[0][1])}),
                        Json::array({rf_to_json(m.m[1][0]), rf_to_json(m.m[1][1])})});
}

Json pair_to_json(const PearsonPair& p) {
    Json j;
    j["phi11"] = poly_to_json(p.phi11);
    j["phi12"] = poly_to_json(p.phi12);
    j["phi22"] = poly_to_json(p.phi22);
    j["psi1"] = poly_to_json(p.psi1);
    j["psi2"] = poly_to_json(p.psi2);
    j["deg_phi"] = p.deg_phi();
    j["deg_psi"] = p.deg_psi();
    j["s_value"] = p.s_value;
    j["provenance"] = provenance_name(p.provenance);
    j["verdict"] = p.verified ? "pass" : "fail";
    return j;
}

Json metadata(const RunConfig& cfg) {
    const FamilyDescriptor& d = family_descriptor(cfg.family);
    Json m;
    m["tool"] = kToolName;
    m["version"] = kToolVersion;
    m["family"] = cfg.family;
    Json params = Json::object();
    for (const auto& [k, v] : cfg.params) params[k] = rat_str(v);
    m["params"] = params;
    m["weight"] = d.weight;
    m["domain"] = d.domain;
    m["rho"] = d.rho;
    m["nmax"] = cfg.nmax;
    m["precision"] = cfg.digits;
    m["tol"] = cfg.tol;
    return m;
}

Json polynomials_section(const FamilyInstance& inst, int nmax) {
    BasisTable table(inst.system, nmax);
    Json items = Json::array();
    for (int n = 0; n <= nmax; ++n)
        for (int m = 0; m <= n; ++m) {
            Json item;
            item["n"] = n;
            item["m"] = m;
            item["terms"] = poly_to_json(table.at(n, m));
            items.push_back(std::move(item));
        }
    Json sec;
    sec["count"] = items.size();
    sec["items"] = std::move(items);
    return sec;
}

Json raw_section(const FamilyInstance& inst) {
    Json sec;
    sec["phi"] = mat_to_json(inst.raw.phi);
    sec["delta"] = vec_to_json(inst.raw.delta);
    sec["row_scaling"] = Json::array({inst.raw.row_scaling.first, inst.raw.row_scaling.second});
    Json factors = Json::array();
    for (const auto& f : inst.raw.singular_factors) factors.push_back(poly_to_json(f));
    sec["singular_factors"] = std::move(factors);
    sec["verdict"] =
        verify_gradient_form(inst.raw.phi, inst.raw.delta, inst.system).pass ? "pass" : "fail";
    return sec;
}

Json candidates_section(const FamilyInstance& inst) {
    Json cands = Json::array();
    {
        Json c;
        c["name"] = "symmetrizer";
        c["symmetrizer"] = Json::array(
            {Json::array({rf_to_json(inst.symmetrizer.A), rf_to_json(inst.symmetrizer.B)}),
             Json::array({rf_to_json(inst.symmetrizer.C), rf_to_json(inst.symmetrizer.D)})});
        c["pair"] = pair_to_json(inst.reference_pair);
        cands.push_back(std::move(c));
    }
    if (inst.decomposition) {
        Json c;
        c["name"] = "decomposition";
        auto dp = decomposition_method(*inst.decomposition, inst.system);
        c["pair"] = pair_to_json(dp);
        cands.push_back(std::move(c));
    }
    for (const auto& rp : inst.recorded_pairs) {
        Json c;
        c["name"] = rp.name;
        c["pair"] = pair_to_json(rp.pair);
        if (!rp.note.empty()) c["note"] = rp.note;
        cands.push_back(std::move(c));
    }
    return cands;
}

Json gradient_claims_section(const FamilyInstance& inst) {
    Json claims = Json::array();
    for (const auto& gc : inst.gradient_claims) {
        Json c;
        c["name"] = gc.name;
        c["matrix"] = mat_to_json(gc.matrix);
        c["vector"] = vec_to_json(gc.vector);
        auto v = verify_gradient_form(gc.matrix, gc.vector, inst.system);
        c["verdict"] = v.pass ? "pass" : "fail";
        if (!v.pass)
            c["residuals"] = Json::array({v.residual1.str(), v.residual2.str()});
        if (!gc.note.empty()) c["note"] = gc.note;
        claims.push_back(std::move(c));
    }
    return claims;
}

// Name of the first recorded formula matching every diagonal coefficient,
// or "empirical" when none does.
std::pair<std::string, std::string> matched_formula(const FamilyInstance& inst,
                                                    const std::vector<ExpansionReport>& reports) {
    for (const auto& f : inst.eigenvalue_formulas) {
        bool all = true;
        for (const auto& rep : reports) {
            auto it = rep.coefficients.find({rep.n, rep.m});
            Rat got = it == rep.coefficients.end() ? Rat(0) : it->second;
            if (got != f.value(rep.n, rep.m)) {
                all = false;
                break;
            }
        }
        if (all) return {f.name, f.display};
    }
    return {"empirical", ""};
}

Json operator_section(const FamilyInstance& inst) {
    DiffOperator2 op = inst.reference_operator();
    Json sec;
    sec["c_xx"] = poly_to_json(op.c_xx);
    sec["c_xy"] = poly_to_json(op.c_xy);
    sec["c_yy"] = poly_to_json(op.c_yy);
    sec["c_x"] = poly_to_json(op.c_x);
    sec["c_y"] = poly_to_json(op.c_y);
    sec["scale"] = rat_str(inst.operator_scale);
    sec["source"] = inst.operator_source;
    return sec;
}

Json classification_section(const FamilyInstance& inst,
                            const std::vector<ExpansionReport>& reports,
                            const ClassificationSummary& sum) {
    Json sec;
    sec["overall"] = class_name(sum.overall, sum.band_s);
    sec["band_s"] = sum.band_s;
    sec["s_value"] = inst.operator_pair.s_value;
    sec["degree_preserving"] = preserves_degree(sum.overall);
    auto [name, display] = matched_formula(inst, reports);
    sec["matched_formula"] = name;
    if (!display.empty()) sec["formula"] = display;
    Json eigen = Json::array();
    for (const auto& rep : reports) {
        auto it = rep.coefficients.find({rep.n, rep.m});
        Json e;
        e["n"] = rep.n;
        e["m"] = rep.m;
        e["lambda"] = rat_str(it == rep.coefficients.end() ? Rat(0) : it->second);
        eigen.push_back(std::move(e));
    }
    sec["eigenvalues"] = std::move(eigen);
    return sec;
}

Json expansions_section(const std::vector<ExpansionReport>& reports) {
    Json out = Json::array();
    for (const auto& rep : reports) {
        Json e;
        e["n"] = rep.n;
        e["m"] = rep.m;
        e["class"] = class_name(rep.classification, rep.s_local);
        Json coeffs = Json::array();
        for (const auto& [pos, c] : rep.coefficients)
            coeffs.push_back(Json::array({pos.first, pos.second, rat_str(c)}));
        e["coefficients"] = std::move(coeffs);
        out.push_back(std::move(e));
    }
    return out;
}

Json orthocheck_section(const FamilyInstance& inst, const RunConfig& cfg) {
    auto rep = orthocheck(inst.system, cfg.nmax, cfg.digits, cfg.tol);
    Json sec;
    sec["pass"] = rep.pass;
    sec["nmax"] = rep.nmax;
    sec["precision"] = rep.digits;
    sec["tol"] = rep.tol;
    sec["max_residual"] = real_str(rep.max_residual);
    sec["worst"] = Json::array({rep.worst[0], rep.worst[1], rep.worst[2], rep.worst[3]});
    sec["norms_positive"] = rep.norms_positive;
    if (!rep.norms_positive)
        sec["offending"] = Json::array({rep.offending.first, rep.offending.second});
    return sec;
}

// Discrepancy entries visible from the derivation fixtures alone.
void derive_discrepancies(const FamilyInstance& inst, Json& out) {
    for (const auto& gc : inst.gradient_claims)
        if (!gc.expect_pass) {
            Json d;
            d["kind"] = "gradient_claim";
            d["name"] = gc.name;
            d["note"] = gc.note;
            out.push_back(std::move(d));
        }
    for (const auto& rp : inst.recorded_pairs)
        if (!rp.expect_verified) {
            Json d;
            d["kind"] = "pair";
            d["name"] = rp.name;
            d["note"] = rp.note;
            out.push_back(std::move(d));
        }
    for (const auto& sr : inst.recorded_symmetrizers)
        if (!sr.expect_valid) {
            Json d;
            d["kind"] = "symmetrizer";
            d["name"] = sr.name;
            d["note"] = sr.note;
            out.push_back(std::move(d));
        }
}

// Discrepancy entries that require the classification result.
void classify_discrepancies(const FamilyInstance& inst,
                            const std::vector<ExpansionReport>& reports,
                            const ClassificationSummary& sum, Json& out) {
    if (!inst.eigenvalue_formulas.empty()) {
        auto [name, display] = matched_formula(inst, reports);
        if (name != inst.eigenvalue_formulas.front().name) {
            Json d;
            d["kind"] = "eigenvalue_formula";
            d["reference"] = inst.eigenvalue_formulas.front().display;
            d["matched"] = name;
            if (!display.empty()) d["matched_display"] = display;
            d["note"] = "the reference formula does not reproduce the derived eigenvalues";
            out.push_back(std::move(d));
        }
    }
    if (sum.band_s > inst.operator_pair.s_value) {
        Json d;
        d["kind"] = "band";
        d["s_value"] = inst.operator_pair.s_value;
        d["band_s"] = sum.band_s;
        d["note"] = "the expansion band exceeds the class bound of the pair";
        out.push_back(std::move(d));
    }
}

}  // namespace

void validate_config(const RunConfig& cfg) {
    family_descriptor(cfg.family);  // throws for unknown families
    if (cfg.nmax < 0 || cfg.nmax > kMaxNmax)
        throw std::invalid_argument("nmax must be between 0 and " + std::to_string(kMaxNmax) +
                                    ", got " + std::to_string(cfg.nmax));
    if (cfg.digits < kMinDigits)
        throw std::invalid_argument("precision must be at least " + std::to_string(kMinDigits) +
                                    " digits, got " + std::to_string(cfg.digits));
    if (!(cfg.tol > 0)) throw std::invalid_argument("tol must be positive");
    if (cfg.format != "json" && cfg.format != "markdown")
        throw std::invalid_argument("format must be json or markdown, got " + cfg.format);
}

FamilyInstance instance_for(const RunConfig& cfg) {
    validate_config(cfg);
    return make_instance(cfg.family, cfg.params);
}

RunConfig config_from_json(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    RunConfig cfg;
    for (const auto& [key, value] : j.items()) {
        if (key == "family") {
            cfg.family = value.get<std::string>();
        } else if (key == "params") {
            if (!value.is_object())
                throw std::invalid_argument("config params must be an object of rationals");
            for (const auto& [k, v] : value.items())
                cfg.params[k] = v.is_string() ? rat_parse(v.get<std::string>())
                                              : rat_parse(v.dump());
        } else if (key == "nmax") {
            cfg.nmax = value.get<int>();
        } else if (key == "precision") {
            cfg.digits = value.get<int>();
        } else if (key == "tol") {
            cfg.tol = value.get<double>();
        } else if (key == "out") {
            cfg.out = value.get<std::string>();
        } else if (key == "format") {
            cfg.format = value.get<std::string>();
        } else {
            throw std::invalid_argument("unknown config key " + key);
        }
    }
    return cfg;
}

Json poly_to_json(const BiPoly& p) {
    Json terms = Json::array();
    for (const auto& [mono, c] : p.terms())
        terms.push_back(Json::array({mono.i, mono.j, rat_str(c)}));
    return terms;
}

BiPoly poly_from_json(const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("polynomial must be an array of term triples");
    BiPoly out;
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 3)
            throw std::invalid_argument("polynomial term must be [i, j, coefficient]");
        int i = t[0].get<int>();
        int k = t[1].get<int>();
        if (i < 0 || k < 0) throw std::invalid_argument("polynomial exponents must be nonnegative");
        Rat c = t[2].is_string() ? rat_parse(t[2].get<std::string>()) : rat_parse(t[2].dump());
        out = out + BiPoly::monomial(i, k, c);
    }
    return out;
}

Json rf_to_json(const RatFun2& f) {
    Json j;
    j["num"] = poly_to_json(f.num());
    j["den"] = poly_to_json(f.den());
    return j;
}

RatFun2 rf_from_json(const Json& j) {
    if (j.is_array()) return RatFun2(poly_from_json(j));  // plain polynomial
    if (!j.is_object() || !j.contains("num"))
        throw std::invalid_argument("rational function must be {num, den} or a polynomial array");
    BiPoly den = j.contains("den") ? poly_from_json(j.at("den")) : BiPoly::constant(1);
    return RatFun2(poly_from_json(j.at("num")), den);
}

Json cmd_build(const RunConfig& cfg) {
    auto inst = instance_for(cfg);
    Json rep;
    rep["metadata"] = metadata(cfg);
    rep["polynomials"] = polynomials_section(inst, cfg.nmax);
    return rep;
}

Json cmd_pearson_derive(const RunConfig& cfg) {
    auto inst = instance_for(cfg);
    Json rep;
    rep["metadata"] = metadata(cfg);
    rep["raw_system"] = raw_section(inst);
    rep["candidates"] = candidates_section(inst);
    if (!inst.gradient_claims.empty()) rep["gradient_claims"] = gradient_claims_section(inst);
    Json disc = Json::array();
    derive_discrepancies(inst, disc);
    rep["discrepancies"] = std::move(disc);
    return rep;
}

Json cmd_pearson_verify(const RunConfig& cfg, const Json& claim) {
    auto inst = instance_for(cfg);
    if (!claim.is_object()) throw std::invalid_argument("claim file must be a JSON object");
    std::string form = claim.value("form", "divergence");
    Json rep;
    rep["metadata"] = metadata(cfg);
    Json v;
    v["form"] = form;
    bool discrepancy = false;
    if (form == "divergence") {
        for (const char* key : {"phi11", "phi12", "phi22", "psi1", "psi2"})
            if (!claim.contains(key))
                throw std::invalid_argument(std::string("claim file missing key ") + key);
        PearsonPair pair = make_pearson_pair(
            poly_from_json(claim.at("phi11")), poly_from_json(claim.at("phi12")),
            poly_from_json(claim.at("phi22")), poly_from_json(claim.at("psi1")),
            poly_from_json(claim.at("psi2")), Provenance::Manual);
        auto verdict = verify_divergence_form(pair, inst.system);
        v["verdict"] = verdict.pass ? "pass" : "fail";
        if (!verdict.pass)
            v["residuals"] = Json::array({verdict.residual1.str(), verdict.residual2.str()});
        v["pair"] = pair_to_json(pair);
        for (const auto& rp : inst.recorded_pairs)
            if (pair.phi11 == rp.pair.phi11 && pair.phi12 == rp.pair.phi12 &&
                pair.phi22 == rp.pair.phi22 && pair.psi1 == rp.pair.psi1 &&
                pair.psi2 == rp.pair.psi2) {
                v["matches_recorded"] = rp.name;
                discrepancy = !rp.expect_verified;
            }
    } else if (form == "gradient") {
        if (!claim.contains("matrix") || !claim.contains("vector"))
            throw std::invalid_argument("gradient claim file needs matrix and vector keys");
        const Json& mj = claim.at("matrix");
        const Json& vj = claim.at("vector");
        if (!mj.is_array() || mj.size() != 2 || !mj[0].is_array() || mj[0].size() != 2 ||
            !mj[1].is_array() || mj[1].size() != 2 || !vj.is_array() || vj.size() != 2)
            throw std::invalid_argument("gradient claim needs a 2x2 matrix and a 2-vector");
        Mat2RF M;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) M.m[r][c] = rf_from_json(mj[r][c]);
        Vec2RF vec{rf_from_json(vj[0]), rf_from_json(vj[1])};
        auto verdict = verify_gradient_form(M, vec, inst.system);
        v["verdict"] = verdict.pass ? "pass" : "fail";
        if (!verdict.pass)
            v["residuals"] = Json::array({verdict.residual1.str(), verdict.residual2.str()});
        for (const auto& gc : inst.gradient_claims) {
            bool same = vec.a == gc.vector.a && vec.b == gc.vector.b;
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) same = same && M.m[r][c] == gc.matrix.m[r][c];
            if (same) {
                v["matches_recorded"] = gc.name;
                discrepancy = !gc.expect_pass;
            }
        }
    } else {
        throw std::invalid_argument("claim form must be divergence or gradient, got " + form);
    }
    v["discrepancy"] = discrepancy;
    rep["verify"] = std::move(v);
    return rep;
}

Json cmd_classify(const RunConfig& cfg) {
    auto inst = instance_for(cfg);
    auto reports = classify(inst.system, inst.reference_operator(), cfg.nmax);
    auto sum = summarize(reports);
    Json rep;
    rep["metadata"] = metadata(cfg);
    rep["operator"] = operator_section(inst);
    rep["classification"] = classification_section(inst, reports, sum);
    rep["expansions"] = expansions_section(reports);
    Json disc = Json::array();
    classify_discrepancies(inst, reports, sum, disc);
    rep["discrepancies"] = std::move(disc);
    return rep;
}

Json cmd_orthocheck(const RunConfig& cfg) {
    auto inst = instance_for(cfg);
    Json rep;
    rep["metadata"] = metadata(cfg);
    rep["orthocheck"] = orthocheck_section(inst, cfg);
    return rep;
}

Json cmd_report_all(const RunConfig& cfg) {
    auto inst = instance_for(cfg);
    auto reports = classify(inst.system, inst.reference_operator(), cfg.nmax);
    auto sum = summarize(reports);
    Json rep;
    rep["metadata"] = metadata(cfg);
    rep["polynomials"] = polynomials_section(inst, cfg.nmax);
    rep["raw_system"] = raw_section(inst);
    rep["candidates"] = candidates_section(inst);
    if (!inst.gradient_claims.empty()) rep["gradient_claims"] = gradient_claims_section(inst);
    rep["operator"] = operator_section(inst);
    rep["classification"] = classification_section(inst, reports, sum);
    rep["expansions"] = expansions_section(reports);
    rep["orthocheck"] = orthocheck_section(inst, cfg);
    Json disc = Json::array();
    derive_discrepancies(inst, disc);
    classify_discrepancies(inst, reports, sum, disc);
    rep["discrepancies"] = std::move(disc);
    return rep;
}

namespace {

std::string md_poly(const Json& terms) { return poly_from_json(terms).str(); }

std::string md_rf(const Json& j) { return rf_from_json(j).str(); }

void md_metadata(const Json& m, std::string& out) {
    out += "# " + m.at("tool").get<std::string>() + " report\n\n";
    out += "## Configuration\n\n";
    out += "- family: " + m.at("family").get<std::string>() + "\n";
    std::string params;
    for (const auto& [k, v] : m.at("params").items()) {
        if (!params.empty()) params += ", ";
        params += k + " = " + v.get<std::string>();
    }
    out += "- params: " + (params.empty() ? "(none)" : params) + "\n";
    out += "- nmax: " + m.at("nmax").dump() + "\n";
    out += "- precision: " + m.at("precision").dump() + " digits, tol " + m.at("tol").dump() +
           "\n\n";
    out += "## Weight\n\n";
    out += "- w(x, y) = " + m.at("weight").get<std::string>() + " on " +
           m.at("domain").get<std::string>() + "\n";
    out += "- rho(x) = " + m.at("rho").get<std::string>() + "\n\n";
}

void md_polynomials(const Json& sec, std::string& out) {
    out += "## Polynomials (" + sec.at("count").dump() + ")\n\n";
    for (const auto& item : sec.at("items"))
        out += "- P[" + item.at("n").dump() + "," + item.at("m").dump() + "] = " +
               md_poly(item.at("terms")) + "\n";
    out += "\n";
}

void md_raw(const Json& sec, std::string& out) {
    out += "## Raw system\n\n";
    const Json& phi = sec.at("phi");
    out += "- phi = [[" + md_rf(phi[0][0]) + ", " + md_rf(phi[0][1]) + "], [" +
           md_rf(phi[1][0]) + ", " + md_rf(phi[1][1]) + "]]\n";
    const Json& delta = sec.at("delta");
    out += "- delta = (" + md_rf(delta[0]) + ", " + md_rf(delta[1]) + ")\n";
    out += "- row scaling: rho^" + sec.at("row_scaling")[0].dump() + ", rho^" +
           sec.at("row_scaling")[1].dump() + "\n";
    std::string factors;
    for (const auto& f : sec.at("singular_factors")) {
        if (!factors.empty()) factors += ", ";
        factors += md_poly(f);
    }
    out += "- singular factors: " + (factors.empty() ? "(none)" : factors) + "\n";
    out += "- verdict: " + sec.at("verdict").get<std::string>() + "\n\n";
}

void md_pair(const Json& p, std::string& out) {
    out += "  - Phi = [[" + md_poly(p.at("phi11")) + ", " + md_poly(p.at("phi12")) + "], [" +
           md_poly(p.at("phi12")) + ", " + md_poly(p.at("phi22")) + "]]\n";
    out += "  - Psi = (" + md_poly(p.at("psi1")) + ", " + md_poly(p.at("psi2")) + ")\n";
    out += "  - deg Phi = " + p.at("deg_phi").dump() + ", deg Psi = " + p.at("deg_psi").dump() +
           ", s = " + p.at("s_value").dump() + ", provenance " +
           p.at("provenance").get<std::string>() + "\n";
}

void md_candidates(const Json& cands, std::string& out) {
    out += "## Pearson pairs\n\n";
    for (const auto& c : cands) {
        out += "- " + c.at("name").get<std::string>() + " (verdict " +
               c.at("pair").at("verdict").get<std::string>() + ")\n";
        if (c.contains("symmetrizer")) {
            const Json& s = c.at("symmetrizer");
            out += "  - S = [[" + md_rf(s[0][0]) + ", " + md_rf(s[0][1]) + "], [" +
                   md_rf(s[1][0]) + ", " + md_rf(s[1][1]) + "]]\n";
        }
        md_pair(c.at("pair"), out);
        if (c.contains("note")) out += "  - note: " + c.at("note").get<std::string>() + "\n";
    }
    out += "\n";
}

void md_gradient_claims(const Json& claims, std::string& out) {
    out += "## Recorded first-order claims\n\n";
    for (const auto& c : claims) {
        const Json& m = c.at("matrix");
        const Json& v = c.at("vector");
        out += "- " + c.at("name").get<std::string>() + " (" +
               c.at("verdict").get<std::string>() + "): M = [[" + md_rf(m[0][0]) + ", " +
               md_rf(m[0][1]) + "], [" + md_rf(m[1][0]) + ", " + md_rf(m[1][1]) + "]], v = (" +
               md_rf(v[0]) + ", " + md_rf(v[1]) + ")\n";
        if (c.contains("note")) out += "  - note: " + c.at("note").get<std::string>() + "\n";
    }
    out += "\n";
}

void md_operator(const Json& sec, std::string& out) {
    out += "## Operator\n\n";
    out += "L = (" + md_poly(sec.at("c_xx")) + ") d_xx + 2 (" + md_poly(sec.at("c_xy")) +
           ") d_xy + (" + md_poly(sec.at("c_yy")) + ") d_yy + (" + md_poly(sec.at("c_x")) +
           ") d_x + (" + md_poly(sec.at("c_y")) + ") d_y\n";
    out += "- scale " + sec.at("scale").get<std::string>() + " of the " +
           sec.at("source").get<std::string>() + " pair\n\n";
}

void md_classification(const Json& sec, std::string& out) {
    out += "## Eigenvalues\n\n";
    out += "- classification: " + sec.at("overall").get<std::string>() + " (band_s " +
           sec.at("band_s").dump() + ", s_value " + sec.at("s_value").dump() + ")\n";
    out += "- matched formula: " + sec.at("matched_formula").get<std::string>();
    if (sec.contains("formula")) out += " = " + sec.at("formula").get<std::string>();
    out += "\n\n";
    out += "| n | m | lambda |\n|---|---|--------|\n";
    for (const auto& e : sec.at("eigenvalues"))
        out += "| " + e.at("n").dump() + " | " + e.at("m").dump() + " | " +
               e.at("lambda").get<std::string>() + " |\n";
    out += "\n";
}

void md_orthocheck(const Json& sec, std::string& out) {
    out += "## Orthogonality check\n\n";
    out += std::string("- verdict: ") + (sec.at("pass").get<bool>() ? "pass" : "fail") + "\n";
    out += "- max residual " + sec.at("max_residual").get<std::string>() + " at pair (" +
           sec.at("worst")[0].dump() + "," + sec.at("worst")[1].dump() + ") x (" +
           sec.at("worst")[2].dump() + "," + sec.at("worst")[3].dump() + ")\n";
    out += "- nmax " + sec.at("nmax").dump() + ", precision " + sec.at("precision").dump() +
           " digits, tol " + sec.at("tol").dump() + "\n\n";
}

void md_discrepancies(const Json& disc, std::string& out) {
    out += "## Discrepancies\n\n";
    if (disc.empty()) {
        out += "- none\n";
        return;
    }
    for (const auto& d : disc) {
        out += "- [" + d.at("kind").get<std::string>() + "]";
        if (d.contains("name")) out += " " + d.at("name").get<std::string>();
        if (d.contains("reference"))
            out += " reference " + d.at("reference").get<std::string>() + " -> matched " +
                   d.at("matched").get<std::string>();
        if (d.contains("note")) out += ": " + d.at("note").get<std::string>();
        out += "\n";
    }
}

}  // namespace

std::string render_markdown(const Json& report) {
    std::string out;
    if (report.contains("metadata")) md_metadata(report.at("metadata"), out);
    if (report.contains("polynomials")) md_polynomials(report.at("polynomials"), out);
    if (report.contains("raw_system")) md_raw(report.at("raw_system"), out);
    if (report.contains("candidates")) md_candidates(report.at("candidates"), out);
    if (report.contains("gradient_claims")) md_gradient_claims(report.at("gradient_claims"), out);
    if (report.contains("verify")) {
        out += "## Verification\n\n";
        const Json& v = report.at("verify");
        out += "- form: " + v.at("form").get<std::string>() + "\n";
        out += "- verdict: " + v.at("verdict").get<std::string>() + "\n";
        if (v.contains("residuals"))
            out += "- residuals: " + v.at("residuals")[0].get<std::string>() + ", " +
                   v.at("residuals")[1].get<std::string>() + "\n";
        if (v.contains("matches_recorded"))
            out += "- matches recorded claim: " + v.at("matches_recorded").get<std::string>() +
                   "\n";
        out += std::string("- discrepancy flag: ") +
               (v.at("discrepancy").get<bool>() ? "set" : "clear") + "\n\n";
    }
    if (report.contains("operator")) md_operator(report.at("operator"), out);
    if (report.contains("classification")) md_classification(report.at("classification"), out);
    if (report.contains("orthocheck")) md_orthocheck(report.at("orthocheck"), out);
    if (report.contains("discrepancies")) md_discrepancies(report.at("discrepancies"), out);
    return out;
}

std::string report_text(const Json& report, const std::string& format) {
    if (format == "markdown") return render_markdown(report);
    return report.dump(2) + "\n";
}

}  // namespace kwp
