#pragma once

// JSON forms of specs, base parameters, densities and reports.
//
//   IhatSpec     {"m", "n", "upper": [{"a", "e", "A"}...], "lower": [{"b", "f", "B"}...]}
//   BaseParams   {"spec", "z", "sigma", "s1"}
//   IhatDensity  {"spec", "Z", "P", "r", "C", "validated"}
//   report       {"kind", "statistic", "threshold", "passed", "seed", "n"}
//
// Doubles are written in the shortest form that reads back to the same
// value, so a density survives a round trip bit for bit.

#include <json.hpp>
#include <string>

#include "ihat/dist.hpp"
#include "ihat/spec.hpp"
#include "ihat/verify.hpp"

namespace ihat {

using Json = nlohmann::json;

Json spec_to_json(const IhatSpec& spec);
Json base_to_json(const BaseParams& base);
Json density_to_json(const IhatDensity& d);
Json report_to_json(const VerificationReport& r);

// SpecError on missing keys, wrong types or an invalid spec.
IhatSpec spec_from_json(const Json& j);
BaseParams base_from_json(const Json& j);
IhatDensity density_from_json(const Json& j);

// Parses text; SpecError on malformed JSON.
Json parse_json(const std::string& text);

}  // namespace ihat
