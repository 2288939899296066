#pragma once

#include <filesystem>
#include <json.hpp>

#include "koenigs/centralizer.hpp"
#include "koenigs/classify.hpp"
#include "koenigs/geometry.hpp"
#include "koenigs/maps.hpp"
#include "koenigs/semiflow.hpp"

namespace koenigs {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Complex numbers are [re, im] or a bare real number.
cplx complex_from_json(const json& j);
json to_json(cplx z);

// Reals accept "inf" and "-inf".
double real_from_json(const json& j);
json real_to_json(double x);

// {"base": {...}, "blockers": [...]}, or a named domain such as "ex-non-non",
// or {"reciprocal": {"points": [...], "rays": [...]}}.
KoenigsDomain domain_from_json(const json& j);
json to_json(const KoenigsDomain& omega);

// {"mobius": [a, b, c, d]}, {"atom": name, "params": [...]}, {"compose": [outer, inner]},
// {"model": {"h": map, "image": domain, "shift": c}}, {"inverse": map},
// {"add" | "sub" | "mul": [lhs, rhs]}, {"scale": [s, map]}, "identity",
// {"example": id, "shift": c}. An optional "domain" names the region of mobius and atom maps.
HoloMap map_from_json(const json& j);
json to_json(const HoloMap& m);  // closed-form nodes only

// {"generator": map, "region": name, "koenigs": map?} or {"koenigs": map}
// or {"herglotz": p} for the half-plane lift of -z p(z); optional "relTol", "absTol", "maxStep".
SemigroupSpec semigroup_from_json(const json& j);

json to_json(const Classification& c);
json to_json(const CentralizerConstant& c);
json to_json(const EmbeddabilityVerdict& v);
json to_json(const Extrapolated& e, std::string_view method);

// Reads and parses a JSON file; failures raise ParseError.
json read_json_file(const std::filesystem::path& path);

}  // namespace koenigs
