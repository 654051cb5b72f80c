#ifndef LATSPEC_SERIALIZE_HPP
#define LATSPEC_SERIALIZE_HPP

#include <iosfwd>

#include <nlohmann/json.hpp>

#include "latspec/floquet.hpp"
#include "latspec/oracle.hpp"
#include "latspec/operator.hpp"
#include "latspec/threebody.hpp"

namespace latspec {

using json = nlohmann::json;

// Spectrum sets travel as sorted arrays of [lo, hi] pairs.
json spectrum_to_json(const SpectrumSet& s);
SpectrumSet spectrum_from_json(const json& j);

// Coefficient descriptors: an object with a "category" tag and the
// category's parameters. Unknown fields are rejected.
Coefficient coefficient_from_json(const json& j);

// Operator description { "dim": N, "terms": [ { "shift": [...],
// "coef": {...} } ] }.
LatticeOperator operator_from_json(const json& j);

// Validates a description and re-emits it with defaults filled in; the
// canonical form re-parses to a pointwise-identical operator.
json canonical_description(const json& j);

json coverage_to_json(const CoverageReport& r);

ThreeBodyProblem three_body_from_json(const json& j);

// One CSV row per grid point: theta coordinates then the sorted bands.
void write_band_csv(std::ostream& os, const BandSample& bands);

// Rejects keys of `j` outside `allowed`; `where` names the object in the
// error message.
void require_keys(const json& j, const std::vector<std::string>& allowed,
                  const std::string& where);

}  // namespace latspec

#endif  // LATSPEC_SERIALIZE_HPP
