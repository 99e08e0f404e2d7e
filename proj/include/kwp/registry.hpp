#pragma once
// Named catalog of the built-in bivariate families.  Each entry validates
// its parameters, builds the Koornwinder system, and carries reference
// fixtures: the symmetrizer, the Pearson pairs produced by both derivation
// routes, the operator the eigenvalue claims refer to, closed-form
// eigenvalue formulas, and recorded variants whose verification outcome is
// pinned (including variants expected to fail).  Reports compare derived
// results against these fixtures and flag disagreements.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kwp/koornwinder.hpp"
#include "kwp/oplab.hpp"
#include "kwp/pearson.hpp"

namespace kwp {

using ParamMap = std::map<std::string, Rat>;

struct FamilyDescriptor {
    std::string name;
    std::vector<std::string> params;  // required parameter names, in order
    std::string constraints;          // human-readable validity conditions
    std::string weight;               // display form of w(x, y)
    std::string domain;               // display form of the region
    std::string rho;                  // display form of rho(x)
};

// A named closed form for the diagonal expansion coefficient lambda(n, m).
// The first formula of a family is the reference claim; later entries are
// corrected variants recorded where derivation disagrees with the reference.
struct EigenvalueFormula {
    std::string name;
    std::string display;
    std::function<Rat(int, int)> value;
};

// A first-order claim  matrix * grad(w) = vector * w  recorded with its
// expected verification outcome.
struct GradientClaim {
    std::string name;
    Mat2RF matrix;
    Vec2RF vector;
    bool expect_pass = true;
    std::string note;
};

// A divergence-form pair recorded alongside the two main candidates.
struct PairRecord {
    std::string name;
    PearsonPair pair;  // verified flag reflects the actual identity check
    bool expect_verified = true;
    std::string note;
};

// A symmetrizer variant; invalid ones are expected to be rejected by
// symmetrize_with.
struct SymmetrizerRecord {
    std::string name;
    Symmetrizer s;
    bool expect_valid = true;
    std::string note;
};

struct FamilyInstance {
    std::string family;
    ParamMap params;
    KoornwinderSystem system;
    RawSystem raw;

    Symmetrizer symmetrizer;           // reference symmetrizer (valid)
    PearsonPair reference_pair;        // symmetrize_with(symmetrizer, raw, system)
    std::optional<DecompositionInput> decomposition;
    PearsonPair operator_pair;         // pair the reference operator is built from
    std::string operator_source = "reference";  // which pair: "reference" or a record name
    Rat operator_scale = 1;            // reference operator = scale * pair operator

    std::vector<EigenvalueFormula> eigenvalue_formulas;
    std::vector<GradientClaim> gradient_claims;
    std::vector<PairRecord> recorded_pairs;
    std::vector<SymmetrizerRecord> recorded_symmetrizers;

    DiffOperator2 reference_operator() const;
};

const std::vector<FamilyDescriptor>& family_catalog();
bool family_registered(const std::string& name);
const FamilyDescriptor& family_descriptor(const std::string& name);

// Validates the name and parameter map (exact rational comparisons) and
// assembles the instance with all reference data.  Throws
// std::invalid_argument with a one-line reason on any violation.
FamilyInstance make_instance(const std::string& family, const ParamMap& params);

}  // namespace kwp
