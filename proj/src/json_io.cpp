#include "ihat/json_io.hpp"

#include "ihat/errors.hpp"

namespace ihat {
namespace {

Json factor_json(const GammaFactor& g, const char* p, const char* c, const char* e) {
  return Json{{p, g.param}, {c, g.coeff}, {e, g.expo}};
}

// Reads a key with the given type; SpecError names the key when it is
// missing or mistyped.
template <class T>
T field(const Json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key)) {
    throw SpecError(std::string(where) + ": missing \"" + key + "\"");
  }
  const Json& v = j.at(key);
  if constexpr (std::is_same_v<T, bool>) {
    if (!v.is_boolean()) throw SpecError(std::string(where) + ": \"" + key + "\" must be a boolean");
  } else if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_integer()) {
      throw SpecError(std::string(where) + ": \"" + key + "\" must be an integer");
    }
  } else {
    if (!v.is_number()) throw SpecError(std::string(where) + ": \"" + key + "\" must be a number");
  }
  return v.get<T>();
}

std::vector<GammaFactor> factors(const Json& j, const char* key, const char* p, const char* c,
                                 const char* e) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw SpecError(std::string("spec: \"") + key + "\" must be an array");
  }
  std::vector<GammaFactor> out;
  for (const Json& f : j.at(key)) {
    out.push_back({field<double>(f, p, key), field<double>(f, c, key), field<double>(f, e, key)});
  }
  return out;
}

}  // namespace

Json spec_to_json(const IhatSpec& spec) {
  Json upper = Json::array();
  Json lower = Json::array();
  for (const auto& g : spec.upper) upper.push_back(factor_json(g, "a", "e", "A"));
  for (const auto& g : spec.lower) lower.push_back(factor_json(g, "b", "f", "B"));
  return Json{{"m", spec.m}, {"n", spec.n}, {"upper", upper}, {"lower", lower}};
}

Json base_to_json(const BaseParams& base) {
  return Json{{"spec", spec_to_json(base.spec)},
              {"z", base.z},
              {"sigma", base.sigma},
              {"s1", base.s1}};
}

Json density_to_json(const IhatDensity& d) {
  return Json{{"spec", spec_to_json(d.spec)}, {"Z", d.Z}, {"P", d.P}, {"r", d.r},
              {"C", d.C},                     {"validated", d.validated}};
}

Json report_to_json(const VerificationReport& r) {
  return Json{{"kind", to_string(r.kind)}, {"statistic", r.statistic()},
              {"threshold", r.threshold},  {"passed", r.passed},
              {"seed", r.seed},            {"n", r.n}};
}

IhatSpec spec_from_json(const Json& j) {
  if (!j.is_object()) throw SpecError("spec must be a JSON object");
  IhatSpec s;
  s.m = field<int>(j, "m", "spec");
  s.n = field<int>(j, "n", "spec");
  s.upper = factors(j, "upper", "a", "e", "A");
  s.lower = factors(j, "lower", "b", "f", "B");
  validate(s);
  return s;
}

BaseParams base_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("spec")) throw SpecError("base parameters need \"spec\"");
  BaseParams b;
  b.spec = spec_from_json(j.at("spec"));
  b.z = field<double>(j, "z", "base");
  b.sigma = field<double>(j, "sigma", "base");
  b.s1 = field<double>(j, "s1", "base");
  return b;
}

IhatDensity density_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("spec")) throw SpecError("density needs \"spec\"");
  IhatDensity d;
  d.spec = spec_from_json(j.at("spec"));
  d.Z = field<double>(j, "Z", "density");
  d.P = field<double>(j, "P", "density");
  d.r = field<double>(j, "r", "density");
  d.C = field<double>(j, "C", "density");
  d.validated = j.contains("validated") ? field<bool>(j, "validated", "density") : false;
  return d;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SpecError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace ihat
