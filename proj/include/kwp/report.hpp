#pragma once
// Report assembly for the command surface.  Every verb produces a JSON
// document with stable key order and canonical "p/q" rational strings, so
// identical configurations yield byte-identical output; the markdown
// renderer mirrors the same content section by section (weight, raw system,
// symmetrizer, Pearson pairs, operator, eigenvalues, orthogonality check,
// discrepancies).

#include <string>

#include "json.hpp"
#include "kwp/quadrature.hpp"
#include "kwp/registry.hpp"

namespace kwp {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "koornwinder-pearson";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kMaxNmax = 12;  // guard against coefficient blowup

struct RunConfig {
    std::string family;
    ParamMap params;
    int nmax = 4;
    int digits = 34;
    double tol = 1e-10;
    std::string out;              // output path; empty writes to stdout
    std::string format = "json";  // "json" or "markdown"
};

// Throws std::invalid_argument with a one-line reason on any violation.
void validate_config(const RunConfig& cfg);
FamilyInstance instance_for(const RunConfig& cfg);

// Config file uses the same keys as the CLI flags: family, params (object of
// name -> rational string), nmax, precision, tol, out, format.
RunConfig config_from_json(const Json& j);

// Polynomials cross the JSON boundary as arrays of [i, j, "p/q"] term
// triples in ascending graded order; rational functions as {num, den}.
Json poly_to_json(const BiPoly& p);
BiPoly poly_from_json(const Json& j);
Json rf_to_json(const RatFun2& f);
RatFun2 rf_from_json(const Json& j);

// One report object per verb; report_all contains every section.
Json cmd_build(const RunConfig& cfg);
Json cmd_pearson_derive(const RunConfig& cfg);
Json cmd_pearson_verify(const RunConfig& cfg, const Json& claim);
Json cmd_classify(const RunConfig& cfg);
Json cmd_orthocheck(const RunConfig& cfg);
Json cmd_report_all(const RunConfig& cfg);

// Renders any report produced above.
std::string render_markdown(const Json& report);

// Final serialized form (trailing newline included) for the chosen format.
std::string report_text(const Json& report, const std::string& format);

}  // namespace kwp
