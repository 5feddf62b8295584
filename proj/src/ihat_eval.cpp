#include "ihat/ihat_eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ihat/errors.hpp"
#include "ihat/quadrature.hpp"

namespace ihat {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRelTarget = 1e-12;

bool is_integer(double x) { return x == std::round(x); }

std::string factor_name(const char* side, int j) {
  return std::string(side) + "[" + std::to_string(j) + "]";
}

// log Gamma(w)^expo. Returns -inf real part when w is a pole and the factor
// sits in the denominator (the caller negates it into an exact zero).
Complex factor_log(Complex w, double expo, bool denominator, const char* side, int j) {
  const bool on_axis = w.real() <= 0.0 && std::abs(w.imag()) <= kDefaultCutEpsilon;
  if (!on_axis) return powered_gamma_log(w, expo);

  const double x = w.real();
  if (is_integer(x)) {
    if (denominator) return Complex(kInf, 0.0);
    throw PoleError("gamma factor " + factor_name(side, j) + " at a pole (argument " +
                    std::to_string(x) + ")");
  }
  if (!is_integer(expo)) {
    throw BranchCutError("gamma factor " + factor_name(side, j) +
                         " with non-integer exponent has negative argument " +
                         std::to_string(x));
  }
  // Real negative argument with integer exponent: any branch gives the same
  // power, so use log|Gamma(x)| + i pi [Gamma(x) < 0].
  const double frac = x - std::round(x);
  const double log_abs = std::log(kPi) - std::log(std::abs(std::sin(kPi * frac))) -
                         log_gamma(1.0 - x).real();
  const bool negative = static_cast<long long>(std::floor(-x)) % 2 == 0;
  return expo * Complex(log_abs, negative ? kPi : 0.0);
}

struct Direction {
  double slope = 0.0;  // d Re(s) / dt for t >= 0
};

double index_epsilon(const IhatSpec& spec) {
  double scale = 0.0;
  for (const auto& g : spec.lower) scale += g.expo * g.coeff;
  for (const auto& g : spec.upper) scale += g.expo * g.coeff;
  return 1e-12 * std::max(1.0, scale);
}

constexpr double kRadiusGap = 1e-9;
constexpr double kRadiusWindow = 1e-5;

Direction contour_direction(const IhatSpec& spec, double z, double bend) {
  const double eps = index_epsilon(spec);
  const double d1 = delta1(spec);
  if (d1 < -eps) {
    throw ConvergenceError("Delta1 = " + std::to_string(d1) +
                           " < 0: the contour integral diverges");
  }
  if (d1 > eps) return {};
  if (!(bend > 0.0)) {
    throw ConvergenceError("Delta1 = 0 requires a bent contour (bend > 0)");
  }
  const double mu = mu_index(spec);
  if (mu > eps) return {-bend};
  if (mu < -eps) return {bend};
  const double radius = convergence_radius(spec);
  const double gap = std::log(z / radius);
  if (std::abs(gap) < kRadiusGap) {
    throw ConvergenceError("Delta1 = 0 and z = " + std::to_string(z) +
                           " sits on the convergence radius " + std::to_string(radius));
  }
  return {gap < 0.0 ? -bend : bend};
}

void check_contour(const IhatSpec& spec, const Contour& c) {
  if (!(c.abs_tol > 0.0)) throw DomainError("contour abs_tol must be positive");
  if (c.max_nodes < 64) throw DomainError("contour max_nodes must be >= 64");
  if (!(c.initial_halfwidth > 0.0)) throw DomainError("contour initial_halfwidth must be positive");
  const Strip strip = admissible_strip(spec);
  if (!strip.contains(c.shift)) {
    throw StripError("contour shift " + std::to_string(c.shift) +
                     " outside the admissible strip (" + std::to_string(strip.lo) + ", " +
                     std::to_string(strip.hi) + ")");
  }
}

// Real-axis objective Re log chi(sigma) - sigma log z.
double saddle_objective(const IhatSpec& spec, double sigma, double log_z) {
  try {
    const Complex lt = log_theta_eval(spec, sigma);
    if (!std::isfinite(lt.real())) return kInf;
    return lt.real() - sigma * log_z;
  } catch (const Error&) {
    return kInf;
  }
}

}  // namespace

Complex log_theta_eval(const IhatSpec& spec, Complex s) {
  Complex sum = 0.0;
  for (int j = 0; j < spec.q(); ++j) {
    const auto& g = spec.lower[j];
    if (j < spec.m) {
      sum += factor_log(g.param + g.coeff * s, 1.0, false, "lower", j);
    } else {
      const Complex lg = factor_log(1.0 - g.param - g.coeff * s, g.expo, true, "lower", j);
      if (std::isinf(lg.real())) return Complex(-kInf, 0.0);
      sum -= lg;
    }
  }
  for (int j = 0; j < spec.p(); ++j) {
    const auto& g = spec.upper[j];
    if (j < spec.n) {
      sum += factor_log(1.0 - g.param - g.coeff * s, 1.0, false, "upper", j);
    } else {
      const Complex lg = factor_log(g.param + g.coeff * s, g.expo, true, "upper", j);
      if (std::isinf(lg.real())) return Complex(-kInf, 0.0);
      sum -= lg;
    }
  }
  return sum;
}

Complex theta_eval(const IhatSpec& spec, Complex s) {
  const Complex lt = log_theta_eval(spec, s);
  if (std::isinf(lt.real()) && lt.real() < 0.0) return 0.0;
  const Complex value = std::exp(lt);
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    throw DomainError("theta_eval: chi(s) overflows at s = (" + std::to_string(s.real()) +
                      ", " + std::to_string(s.imag()) + ")");
  }
  return value;
}

Contour default_contour(const IhatSpec& spec) {
  validate(spec);
  const Strip strip = admissible_strip(spec);
  if (strip.empty()) {
    throw BranchCutError("no admissible contour: non-integer exponent tails close the strip");
  }
  Contour c;
  c.shift = strip.midpoint();
  return c;
}

Contour contour_for(const IhatSpec& spec, double z) {
  if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("Ihat argument must be positive");
  validate(spec);
  const Strip strip = admissible_strip(spec);
  if (strip.empty()) {
    throw BranchCutError("no admissible contour: non-integer exponent tails close the strip");
  }
  const Strip poles = pole_strip(spec);
  double lo = strip.lo;
  double hi = strip.hi;
  if (!std::isfinite(lo) && !std::isfinite(hi)) {
    lo = -30.0;
    hi = 30.0;
  } else if (!std::isfinite(lo)) {
    lo = hi - 60.0;
  } else if (!std::isfinite(hi)) {
    hi = lo + 60.0;
  }
  // Pole boundaries repel the minimiser by themselves; branch boundaries of
  // non-integer tails attract it, so those keep a wider margin.
  const double width = hi - lo;
  const double pad_lo = (std::isfinite(strip.lo) && strip.lo > poles.lo) ? 0.1 : 0.01;
  const double pad_hi = (std::isfinite(strip.hi) && strip.hi < poles.hi) ? 0.1 : 0.01;
  lo += (std::isfinite(strip.lo) ? pad_lo : 0.0) * width;
  hi -= (std::isfinite(strip.hi) ? pad_hi : 0.0) * width;

  const double log_z = std::log(z);
  constexpr int kScan = 96;
  double best = kInf;
  int best_i = kScan / 2;
  for (int i = 0; i <= kScan; ++i) {
    const double sigma = lo + (hi - lo) * i / kScan;
    const double v = saddle_objective(spec, sigma, log_z);
    if (v < best) {
      best = v;
      best_i = i;
    }
  }
  // Golden-section refinement between the scan neighbours.
  double a = lo + (hi - lo) * std::max(0, best_i - 1) / kScan;
  double b = lo + (hi - lo) * std::min(kScan, best_i + 1) / kScan;
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 40; ++it) {
    const double x1 = b - ratio * (b - a);
    const double x2 = a + ratio * (b - a);
    if (saddle_objective(spec, x1, log_z) < saddle_objective(spec, x2, log_z)) {
      b = x2;
    } else {
      a = x1;
    }
  }
  Contour c;
  c.shift = 0.5 * (a + b);
  if (!strip.contains(c.shift)) c.shift = strip.midpoint();
  const double level = saddle_objective(spec, c.shift, log_z);
  if (std::isfinite(level)) {
    c.abs_tol = std::max(kRelTarget * std::exp(level) / kPi, 1e-300);
  }
  return c;
}

Evaluation ihat_evaluate(const IhatSpec& spec, double z, const Contour& contour) {
  if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("Ihat argument must be positive");
  validate(spec);
  check_contour(spec, contour);
  const Direction dir = contour_direction(spec, z, contour.bend);
  const double log_z = std::log(z);
  const double shift = contour.shift;
  const Complex ds(dir.slope, 1.0);

  // Full complex integrand chi(s) z^{-s} s'(t) on the upper branch t >= 0.
  auto full = [&](double t) -> Complex {
    const Complex s(shift + dir.slope * t, t);
    const Complex lt = log_theta_eval(spec, s);
    if (std::isinf(lt.real())) return 0.0;
    return std::exp(lt - s * log_z) * ds;
  };
  // Conjugate symmetry folds the two branches into (1/pi) Im[...].
  auto integrand = [&](double t) { return full(t).imag() / kPi; };

  // log chi at |s| carries an absolute error of roughly eps * |s| log|s| per
  // unit of coefficient mass, which becomes relative noise in the integrand.
  double mass = std::abs(log_z);
  for (const auto& g : spec.lower) mass += g.expo * g.coeff;
  for (const auto& g : spec.upper) mass += g.expo * g.coeff;
  auto noise_at = [&](double t) {
    const double r = std::abs(Complex(shift + dir.slope * t, t)) + 1.0;
    return std::max(quad::kRoundoffFloor, 16 * 2.220446049250313e-16 * mass * r * std::log(r + 1.0));
  };

  Evaluation out;
  try {
    const quad::Result r =
        quad::half_line(integrand, [&](double t) { return std::abs(full(t)) / kPi; }, noise_at,
                        contour.initial_halfwidth, contour.abs_tol, contour.max_nodes);
    out.value = r.value;
    out.error = r.error;
    out.nodes = r.evaluations;
  } catch (const NodeBudgetExceeded&) {
    throw NodeBudgetExceeded("Ihat evaluation exceeded " + std::to_string(contour.max_nodes) +
                             " nodes");
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(std::string("Ihat contour integral: ") + e.what());
  }

  // Diagnostic: the two-sided first panel must be real.
  const auto& gl = quad::gauss_legendre();
  const double half = 0.5 * contour.initial_halfwidth;
  const Complex ds_neg(dir.slope, -1.0);
  Complex two_sided = 0.0;
  for (int k = 0; k < quad::kOrder; ++k) {
    const double t = half + half * gl.nodes[k];
    const Complex s_neg(shift + dir.slope * t, -t);
    const Complex lt = log_theta_eval(spec, s_neg);
    const Complex lower = std::isinf(lt.real()) ? Complex(0.0) : std::exp(lt - s_neg * log_z) * -ds_neg;
    two_sided += gl.weights[k] * (full(t) + lower);
  }
  two_sided *= half / Complex(0.0, 2.0 * kPi);
  out.imag_residual = std::abs(two_sided.imag());
  return out;
}

double ihat_eval(const IhatSpec& spec, double z, const Contour& contour) {
  return ihat_evaluate(spec, z, contour).value;
}

double ihat_eval(const IhatSpec& spec, double z) {
  return ihat_evaluate(spec, z, contour_for(spec, z)).value;
}

bool on_convergence_radius(const IhatSpec& spec, double z) {
  const double eps = index_epsilon(spec);
  if (std::abs(delta1(spec)) > eps || std::abs(mu_index(spec)) > eps) return false;
  return std::abs(std::log(z / convergence_radius(spec))) < kRadiusWindow;
}

double ihat_value(const IhatSpec& spec, double z) {
  if (!on_convergence_radius(spec, z)) return ihat_eval(spec, z);
  const double r = convergence_radius(spec);
  const double g = std::log(z / r);
  const double h = kRadiusWindow;
  auto side = [&](double sign) {
    const double v1 = ihat_eval(spec, r * std::exp(sign * h));
    const double v2 = ihat_eval(spec, r * std::exp(sign * 2.0 * h));
    return v1 + (v1 - v2) * (sign * h - g) / (sign * h);
  };
  if (g < 0.0) return side(-1.0);
  if (g > 0.0) return side(1.0);
  return 0.5 * (side(-1.0) + side(1.0));
}

}  // namespace ihat
