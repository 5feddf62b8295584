#pragma once

// Gauss-Legendre panel quadrature shared by the contour evaluator, the Mellin
// oracles and the distribution checks.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>

#include "ihat/errors.hpp"

namespace ihat::quad {

inline constexpr int kOrder = 16;

struct GaussLegendre {
  std::array<double, kOrder> nodes;    // on [-1, 1], ascending
  std::array<double, kOrder> weights;
};

// 16-point rule, computed once by Newton iteration on P_16.
const GaussLegendre& gauss_legendre();

struct Result {
  double value = 0.0;
  double error = 0.0;
  double mass = 0.0;  // integral of |f| at the accepted panels
  std::size_t evaluations = 0;
};

template <class F>
double panel(F& f, double a, double b, double* abs_mass = nullptr) {
  const auto& gl = gauss_legendre();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  double mass = 0.0;
  for (int k = 0; k < kOrder; ++k) {
    const double v = gl.weights[k] * f(mid + half * gl.nodes[k]);
    sum += v;
    mass += std::abs(v);
  }
  if (abs_mass) *abs_mass = std::abs(half) * mass;
  return half * sum;
}

// Panels whose halves agree to this fraction of the integral of |f| are at
// the rounding floor; refining them further only burns evaluations. Callers
// whose integrand is noisier than a few ulps pass a larger fraction.
inline constexpr double kRoundoffFloor = 256 * 2.220446049250313e-16;

namespace detail {

template <class F>
double bisect(F& f, double a, double b, double whole, double tol, double noise, int depth,
              std::size_t max_evaluations, Result& out) {
  const double mid = 0.5 * (a + b);
  double mass_l = 0.0;
  double mass_r = 0.0;
  const double left = panel(f, a, mid, &mass_l);
  const double right = panel(f, mid, b, &mass_r);
  out.evaluations += 2 * kOrder;
  if (out.evaluations > max_evaluations) {
    throw NodeBudgetExceeded("quadrature node budget of " +
                             std::to_string(max_evaluations) + " exceeded");
  }
  const double refined = left + right;
  const double diff = std::abs(refined - whole);
  const double floor = noise * (mass_l + mass_r);
  if (diff <= tol || diff <= floor || depth <= 0 || !(mid > a && mid < b)) {
    out.error += diff;
    out.mass += mass_l + mass_r;
    return refined;
  }
  return bisect(f, a, mid, left, 0.5 * tol, noise, depth - 1, max_evaluations, out) +
         bisect(f, mid, b, right, 0.5 * tol, noise, depth - 1, max_evaluations, out);
}

}  // namespace detail

// Adaptive bisection on [a, b] until each panel agrees with its two halves to
// within its share of tol = abs_tol + rel_tol * |coarse estimate|.
template <class F>
Result adaptive(F&& f, double a, double b, double abs_tol, double rel_tol = 0.0,
                std::size_t max_evaluations = std::size_t{1} << 22,
                double noise = kRoundoffFloor, int max_depth = 40) {
  Result out;
  if (a == b) return out;
  const double whole = panel(f, a, b);
  out.evaluations = kOrder;
  const double tol = abs_tol + rel_tol * std::abs(whole);
  out.value = detail::bisect(f, a, b, whole, tol, noise, max_depth, max_evaluations, out);
  return out;
}

// Integral of f over [0, inf) by panels of doubling width. The first panel
// gets half the tolerance and each later one half of the previous share.
// Integration stops once a panel contributes less than a tenth of abs_tol
// and envelope(b) * width, a bound on what lies beyond b for a monotonically
// decaying integrand, does too (or both sit below the rounding level of the
// accumulated integral of |f|). noise(b) is the relative rounding level of
// f near b (see kRoundoffFloor).
template <class F, class Envelope, class Noise>
Result half_line(F&& f, Envelope&& envelope, Noise&& noise, double first_width, double abs_tol,
                 std::size_t max_evaluations, double max_t = 1e7) {
  Result out;
  auto run = [&](double a, double b, double tol) {
    if (out.evaluations >= max_evaluations) {
      throw NodeBudgetExceeded("quadrature node budget of " +
                               std::to_string(max_evaluations) + " exceeded");
    }
    const Result r = adaptive(f, a, b, tol, 0.0, max_evaluations - out.evaluations, noise(b));
    out.value += r.value;
    out.error += r.error;
    out.mass += r.mass;
    out.evaluations += r.evaluations;
    return r;
  };
  double a = first_width;
  double width = first_width;
  double tol = 0.5 * abs_tol;
  run(0.0, a, tol);
  for (int k = 0;; ++k) {
    tol *= 0.5;
    const double b = a + width;
    const Result r = run(a, b, tol);
    const double env = envelope(b);
    ++out.evaluations;
    // A target below the rounding level of what has been summed so far is
    // unreachable; the tail then only has to drop under that level.
    const double stop = std::max(0.1 * abs_tol, noise(b) * out.mass);
    if (std::abs(r.value) < stop && env * width < stop) {
      out.error += env * width;
      return out;
    }
    if (b > max_t || k > 60) {
      throw ConvergenceError("integrand tail failed to decay (t = " + std::to_string(b) +
                             ", envelope " + std::to_string(env) + ")");
    }
    a = b;
    width *= 2.0;
  }
}

// Integral of g over [lo, hi] (0 < lo < hi) in the variable u = log x, split
// into panels of at most unit width in u. rel_tol refers to the whole
// integral (estimated from one panel per piece), so pieces that carry almost
// nothing are not refined down to their own rounding noise.
template <class F>
Result log_axis(F&& g, double lo, double hi, double abs_tol, double rel_tol = 0.0,
                std::size_t max_evaluations = std::size_t{1} << 22) {
  Result total;
  if (!(lo > 0.0) || !(hi > lo)) return total;
  const double ulo = std::log(lo);
  const double uhi = std::log(hi);
  const int pieces = std::max(1, static_cast<int>(std::ceil(uhi - ulo)));
  const double width = (uhi - ulo) / pieces;
  auto integrand = [&g](double u) {
    const double x = std::exp(u);
    return g(x) * x;
  };
  auto ends = [&](int i) {
    const double a = ulo + i * width;
    return std::pair{a, (i + 1 == pieces) ? uhi : a + width};
  };
  double tol = abs_tol;
  if (rel_tol > 0.0) {
    double coarse = 0.0;
    for (int i = 0; i < pieces; ++i) {
      const auto [a, b] = ends(i);
      coarse += panel(integrand, a, b);
    }
    total.evaluations += pieces * kOrder;
    tol += rel_tol * std::abs(coarse);
  }
  for (int i = 0; i < pieces; ++i) {
    const auto [a, b] = ends(i);
    const Result r = adaptive(integrand, a, b, tol / pieces, 0.0,
                              max_evaluations - total.evaluations);
    total.value += r.value;
    total.error += r.error;
    total.mass += r.mass;
    total.evaluations += r.evaluations;
  }
  return total;
}

// Truncation points for integrals of g over (0, inf). Beyond a candidate
// point x the integrand is modelled as g(x) (t/x)^k with k the local log-log
// slope, so the discarded mass is g(x) x / |k + 1|. Points move outward
// geometrically until that mass, or the change in it implied by the drift
// of k since the previous point, drops below mass_tol. The modelled mass is
// returned so callers can add it back.
struct Cutoff {
  double x = 0.0;
  double tail = 0.0;
};

namespace detail {

template <class F>
Cutoff cutoff(F& g, double start, double mass_tol, double step, int max_steps) {
  const double probe = step > 1.0 ? 1.05 : 1.0 / 1.05;
  // Integrability needs k < -1 going outward and k > -1 going inward; the
  // sign below makes both read "excess > 0".
  const double orient = step > 1.0 ? -1.0 : 1.0;
  double x = start;
  double prev_k = std::numeric_limits<double>::quiet_NaN();
  for (int i = 0; i < max_steps; ++i, x *= step) {
    const double gx = g(x);
    if (gx == 0.0) return {x, 0.0};
    const double gy = g(x * probe);
    if (gy == 0.0 || (gy > 0.0) != (gx > 0.0)) {
      prev_k = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    const double k = std::log(gy / gx) / std::log(probe);
    const double excess = orient * (k + 1.0);
    const double drift = std::abs(k - prev_k);
    prev_k = k;
    if (!(excess > 1e-3)) continue;
    const double tail = gx * x / excess;
    if (std::abs(tail) < mass_tol) return {x, tail};
    if (drift < 1.0 && std::abs(tail) * drift / excess < mass_tol) return {x, tail};
  }
  throw ConvergenceError(step > 1.0
                             ? "upper cutoff: integrand does not decay fast enough at infinity"
                             : "lower cutoff: integrand does not vanish fast enough near 0");
}

}  // namespace detail

template <class F>
Cutoff lower_cutoff(F&& g, double start, double mass_tol, int max_steps = 80) {
  return detail::cutoff(g, start, mass_tol, 0.1, max_steps);
}

template <class F>
Cutoff upper_cutoff(F&& g, double start, double mass_tol, int max_steps = 80) {
  return detail::cutoff(g, start, mass_tol, 4.0, max_steps);
}

// Integral of g over (0, inf). A first pass over [lo, hi] sets the scale;
// the range then widens until each discarded tail holds less than tail_rel
// of it (power-law tails are added back), and the final pass runs at rel_tol
// on log-spaced panels.
template <class F>
Result positive_axis(F&& g, double lo, double hi, double rel_tol, double tail_rel = 1e-12,
                     std::size_t max_evaluations = std::size_t{1} << 22) {
  const Result rough = log_axis(g, lo, hi, 0.0, 1e-6, max_evaluations);
  const double scale = std::max(std::abs(rough.value), 1e-300);
  const Cutoff a = lower_cutoff(g, lo, tail_rel * scale);
  const Cutoff b = upper_cutoff(g, hi, tail_rel * scale);
  Result out = log_axis(g, a.x, b.x, rel_tol * scale, 0.0, max_evaluations);
  out.value += a.tail + b.tail;
  out.error += 2.0 * tail_rel * scale;
  out.evaluations += rough.evaluations;
  return out;
}

}  // namespace ihat::quad
