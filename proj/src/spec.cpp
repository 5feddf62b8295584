#include "ihat/spec.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ihat/errors.hpp"

namespace ihat {
namespace {

bool is_integer(double x) { return x == std::round(x); }

void check_factor(const GammaFactor& g, const char* side, int index, bool head) {
  const std::string where = std::string(side) + "[" + std::to_string(index) + "]";
  if (!std::isfinite(g.param)) throw SpecError(where + ": parameter is not finite");
  if (!(g.coeff > 0.0) || !std::isfinite(g.coeff)) {
    throw SpecError(where + ": coefficient must be positive");
  }
  if (!(g.expo > 0.0) || !std::isfinite(g.expo)) {
    throw SpecError(where + ": exponent must be positive");
  }
  if (head && g.expo != 1.0) {
    throw SpecError(where + ": leading factors must carry exponent 1");
  }
}

}  // namespace

double Strip::midpoint() const {
  const bool flo = std::isfinite(lo);
  const bool fhi = std::isfinite(hi);
  if (flo && fhi) return 0.5 * (lo + hi);
  if (flo) return lo + 1.0;
  if (fhi) return hi - 1.0;
  return 0.0;
}

void validate(const IhatSpec& spec) {
  if (spec.m < 0 || spec.m > spec.q()) {
    throw SpecError("m = " + std::to_string(spec.m) + " outside [0, q = " +
                    std::to_string(spec.q()) + "]");
  }
  if (spec.n < 0 || spec.n > spec.p()) {
    throw SpecError("n = " + std::to_string(spec.n) + " outside [0, p = " +
                    std::to_string(spec.p()) + "]");
  }
  for (int j = 0; j < spec.p(); ++j) check_factor(spec.upper[j], "upper", j, j < spec.n);
  for (int j = 0; j < spec.q(); ++j) check_factor(spec.lower[j], "lower", j, j < spec.m);
  const Strip strip = pole_strip(spec);
  if (strip.empty()) {
    throw SpecError("empty pole strip: lower-head poles reach " + std::to_string(strip.lo) +
                    ", upper-head poles start at " + std::to_string(strip.hi));
  }
}

Strip pole_strip(const IhatSpec& spec) {
  Strip s;
  for (int j = 0; j < spec.m; ++j) {
    s.lo = std::max(s.lo, -spec.lower[j].param / spec.lower[j].coeff);
  }
  for (int j = 0; j < spec.n; ++j) {
    s.hi = std::min(s.hi, (1.0 - spec.upper[j].param) / spec.upper[j].coeff);
  }
  return s;
}

Strip admissible_strip(const IhatSpec& spec) {
  Strip s = pole_strip(spec);
  for (int j = spec.m; j < spec.q(); ++j) {
    const auto& g = spec.lower[j];
    if (!is_integer(g.expo)) s.hi = std::min(s.hi, (1.0 - g.param) / g.coeff);
  }
  for (int j = spec.n; j < spec.p(); ++j) {
    const auto& g = spec.upper[j];
    if (!is_integer(g.expo)) s.lo = std::max(s.lo, -g.param / g.coeff);
  }
  return s;
}

double delta1(const IhatSpec& spec) {
  double d = 0.0;
  for (int j = 0; j < spec.q(); ++j) {
    const auto& g = spec.lower[j];
    d += j < spec.m ? g.coeff : -g.expo * g.coeff;
  }
  for (int j = 0; j < spec.p(); ++j) {
    const auto& g = spec.upper[j];
    d += j < spec.n ? g.coeff : -g.expo * g.coeff;
  }
  return d;
}

double mu_index(const IhatSpec& spec) {
  double mu = 0.0;
  for (const auto& g : spec.lower) mu += g.expo * g.coeff;
  for (const auto& g : spec.upper) mu -= g.expo * g.coeff;
  return mu;
}

double convergence_radius(const IhatSpec& spec) {
  double log_r = 0.0;
  for (const auto& g : spec.lower) log_r += g.expo * g.coeff * std::log(g.coeff);
  for (const auto& g : spec.upper) log_r -= g.expo * g.coeff * std::log(g.coeff);
  return std::exp(log_r);
}

AsymptoticExponents asymptotic_exponents(const IhatSpec& spec) {
  AsymptoticExponents out;
  for (int j = 0; j < spec.m; ++j) {
    out.c = std::min(out.c, spec.lower[j].param / spec.lower[j].coeff);
  }
  for (int j = 0; j < spec.n; ++j) {
    out.d = std::max(out.d, (spec.upper[j].param - 1.0) / spec.upper[j].coeff);
  }
  return out;
}

PowerIdentity apply_power_identity(const IhatSpec& spec, double sigma) {
  if (!(sigma > 0.0)) throw DomainError("power identity needs sigma > 0");
  PowerIdentity out{spec, 1.0 / sigma};
  for (auto& g : out.spec.upper) g.coeff /= sigma;
  for (auto& g : out.spec.lower) g.coeff /= sigma;
  return out;
}

IhatSpec apply_shift_identity(const IhatSpec& spec, double sigma) {
  IhatSpec out = spec;
  for (auto& g : out.upper) g.param += sigma * g.coeff;
  for (auto& g : out.lower) g.param += sigma * g.coeff;
  return out;
}

bool is_h_function(const IhatSpec& spec) {
  auto unit = [](const GammaFactor& g) { return g.expo == 1.0; };
  return std::all_of(spec.upper.begin(), spec.upper.end(), unit) &&
         std::all_of(spec.lower.begin(), spec.lower.end(), unit);
}

IhatSpec gamma_spec() { return IhatSpec{1, 0, {}, {{0.0, 1.0, 1.0}}}; }

IhatSpec beta_kernel_spec(double beta) {
  if (!(beta > 0.0)) throw DomainError("beta kernel needs beta > 0");
  return IhatSpec{1, 0, {{beta, 1.0, 1.0}}, {{0.0, 1.0, 1.0}}};
}

}  // namespace ihat
