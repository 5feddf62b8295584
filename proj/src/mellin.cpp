#include "ihat/mellin.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ihat/errors.hpp"

namespace ihat {
namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

void require_real(Complex s, const char* what) {
  if (s.imag() != 0.0) {
    throw DomainError(std::string(what) + ": merged parameters need real s, got Im(s) = " +
                      fmt(s.imag()));
  }
}

// Delta1 of a single factor list, with the same relative slack as the
// evaluator uses.
bool positive_delta1(const IhatSpec& spec) {
  double scale = 0.0;
  for (const auto& g : spec.lower) scale += g.expo * g.coeff;
  for (const auto& g : spec.upper) scale += g.expo * g.coeff;
  return delta1(spec) > 1e-12 * std::max(1.0, scale);
}

}  // namespace

void validate(const ScaledIhat& f) {
  if (!(f.z > 0.0) || !std::isfinite(f.z)) throw DomainError("scaled Ihat needs z > 0");
  if (!(f.power > 0.0) || !std::isfinite(f.power)) {
    throw DomainError("scaled Ihat needs power > 0");
  }
  validate(f.spec);
}

Strip mellin_strip(const ScaledIhat& f) {
  const Strip a = admissible_strip(f.spec);
  return {a.lo * f.power, a.hi * f.power};
}

Complex mellin_ihat(const ScaledIhat& f, Complex s) {
  validate(f);
  if (!positive_delta1(f.spec)) {
    throw ConvergenceError("Mellin transform needs Delta1 > 0, got " + fmt(delta1(f.spec)));
  }
  const Strip strip = mellin_strip(f);
  if (!strip.contains(s.real())) {
    throw StripError("Re(s) = " + fmt(s.real()) + " outside the Mellin strip (" +
                     fmt(strip.lo) + ", " + fmt(strip.hi) + ")");
  }
  const Complex u = s / f.power;
  const Complex lt = log_theta_eval(f.spec, u);
  if (std::isinf(lt.real())) return 0.0;
  return std::exp(lt - u * std::log(f.z)) / f.power;
}

MergedMellin merge_mellin_product(const ScaledIhat& f1, const ScaledIhat& f2, Complex s) {
  validate(f1);
  validate(f2);
  require_real(s, "merge_mellin_product");
  const double sr = s.real();
  const double sigma = f1.power;
  const double ratio = f2.power / sigma;
  const IhatSpec& a = f1.spec;
  const IhatSpec& b = f2.spec;

  // Expanding the second factor as a contour integral in w turns each gamma
  // of chi1((s - mu w)/sigma) into a gamma in w with the roles of the two
  // sides exchanged.
  MergedMellin out;
  IhatSpec& m = out.spec;
  m.m = b.m + a.n;
  m.n = b.n + a.m;
  for (int j = 0; j < b.n; ++j) m.upper.push_back(b.upper[j]);
  for (int j = 0; j < a.m; ++j) {
    const auto& g = a.lower[j];
    m.upper.push_back({1.0 - g.param - sr / sigma * g.coeff, ratio * g.coeff, 1.0});
  }
  for (int j = b.n; j < b.p(); ++j) m.upper.push_back(b.upper[j]);
  for (int j = a.m; j < a.q(); ++j) {
    const auto& g = a.lower[j];
    m.upper.push_back({1.0 - g.param - sr / sigma * g.coeff, ratio * g.coeff, g.expo});
  }

  for (int j = 0; j < b.m; ++j) m.lower.push_back(b.lower[j]);
  for (int j = 0; j < a.n; ++j) {
    const auto& g = a.upper[j];
    m.lower.push_back({1.0 - g.param - sr / sigma * g.coeff, ratio * g.coeff, 1.0});
  }
  for (int j = b.m; j < b.q(); ++j) m.lower.push_back(b.lower[j]);
  for (int j = a.n; j < a.p(); ++j) {
    const auto& g = a.upper[j];
    m.lower.push_back({1.0 - g.param - sr / sigma * g.coeff, ratio * g.coeff, g.expo});
  }

  out.argument = f2.z * std::pow(f1.z, -ratio);
  out.prefactor = 1.0 / (sigma * std::pow(f1.z, sr / sigma));
  return out;
}

double mellin_ihat_product(const ScaledIhat& f1, const ScaledIhat& f2, Complex s) {
  const MergedMellin merged = merge_mellin_product(f1, f2, s);
  if (delta1(f1.spec) < 0.0 || delta1(f2.spec) < 0.0 || !positive_delta1(merged.spec)) {
    throw ConvergenceError("product Mellin transform needs Delta1 >= 0 for both factors and > 0 "
                           "for the merged function");
  }
  const Strip poles = pole_strip(merged.spec);
  const Strip admissible = admissible_strip(merged.spec);
  if (poles.empty() || admissible.empty()) {
    throw StripError("s = " + fmt(s.real()) + " outside the joint Mellin strip of the product");
  }
  return merged.prefactor * ihat_eval(merged.spec, merged.argument);
}

double pdf_from_mellin(const std::function<Complex(Complex)>& mellin, double y,
                       const Contour& contour, double slope) {
  if (!(y > 0.0) || !std::isfinite(y)) throw DomainError("pdf_from_mellin needs y > 0");
  if (!(contour.abs_tol > 0.0)) throw DomainError("contour abs_tol must be positive");
  const double log_y = std::log(y);
  const Complex ds(slope, 1.0);
  auto full = [&](double t) {
    const Complex s(contour.shift + slope * t, t);
    return mellin(s) * std::exp(-s * log_y) * ds;
  };
  auto integrand = [&](double t) { return full(t).imag() / kPi; };
  auto envelope = [&](double t) { return std::abs(full(t)) / kPi; };
  auto noise = [&](double t) {
    const double r = std::abs(Complex(contour.shift + slope * t, t)) + 1.0;
    return std::max(quad::kRoundoffFloor,
                    16 * 2.220446049250313e-16 * (1.0 + std::abs(log_y)) * r * std::log(r + 1.0));
  };
  try {
    return quad::half_line(integrand, envelope, noise, contour.initial_halfwidth,
                           contour.abs_tol, contour.max_nodes)
        .value;
  } catch (const NodeBudgetExceeded&) {
    throw;
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(std::string("inverse Mellin integral: ") + e.what());
  }
}

quad::Result mellin_quadrature(const ScaledIhat& f, double s, double rel_tol) {
  validate(f);
  const double x1 = std::pow(f.z, -1.0 / f.power);
  auto g = [&](double x) {
    return std::pow(x, s - 1.0) * ihat_value(f.spec, f.z * std::pow(x, f.power));
  };
  return quad::positive_axis(g, 0.5 * x1, 2.0 * x1, rel_tol);
}

quad::Result mellin_product_quadrature(const ScaledIhat& f1, const ScaledIhat& f2, double s,
                                       double rel_tol) {
  validate(f1);
  validate(f2);
  const double x1 = std::pow(f1.z, -1.0 / f1.power);
  const double x2 = std::pow(f2.z, -1.0 / f2.power);
  auto g = [&](double x) {
    const double v1 = ihat_value(f1.spec, f1.z * std::pow(x, f1.power));
    if (v1 == 0.0) return 0.0;
    return std::pow(x, s - 1.0) * v1 * ihat_value(f2.spec, f2.z * std::pow(x, f2.power));
  };
  return quad::positive_axis(g, 0.5 * std::min(x1, x2), 2.0 * std::max(x1, x2), rel_tol);
}

}  // namespace ihat
