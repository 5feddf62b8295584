#pragma once

#include <cstddef>

#include "ihat/gamma_kernel.hpp"
#include "ihat/spec.hpp"

namespace ihat {

// Integration path s(t) = shift + bend_dir * bend * |t| + i t.
//
// For Delta1 > 0 the path is the vertical line Re(s) = shift and `bend` is
// ignored. For Delta1 = 0 the vertical line only decays algebraically, so the
// path becomes a wedge opening to the left or right of `shift` (the direction
// is fixed by mu_index and the convergence radius); the integrand then decays
// exponentially through z^{-s}. The wedge meets the real axis only at the
// vertex, so it is equivalent to the vertical line by Cauchy's theorem.
struct Contour {
  double shift = 0.0;
  double abs_tol = 1e-10;
  std::size_t max_nodes = std::size_t{1} << 16;
  double initial_halfwidth = 4.0;
  double bend = 2.0;
};

// Vertical line through the midpoint of the admissible strip with the
// default tolerances.
Contour default_contour(const IhatSpec& spec);

// Contour tuned for one argument: the vertex sits at the real-axis minimum
// of |chi(sigma) z^{-sigma}| inside the admissible strip and abs_tol is set
// relative to that magnitude, so small function values keep their relative
// accuracy.
Contour contour_for(const IhatSpec& spec, double z);

// chi(s), or its logarithm. An exact zero (a denominator gamma at a pole)
// is reported as a log with real part -infinity. Real negative gamma
// arguments are accepted for integer exponents; non-integer exponents there
// raise BranchCutError naming the factor.
Complex theta_eval(const IhatSpec& spec, Complex s);
Complex log_theta_eval(const IhatSpec& spec, Complex s);

struct Evaluation {
  double value = 0.0;
  double error = 0.0;           // accumulated panel disagreement + tail bound
  std::size_t nodes = 0;
  double imag_residual = 0.0;   // |Im| of the two-sided first panel
};

Evaluation ihat_evaluate(const IhatSpec& spec, double z, const Contour& contour);
double ihat_eval(const IhatSpec& spec, double z, const Contour& contour);

// Uses contour_for(spec, z).
double ihat_eval(const IhatSpec& spec, double z);

// True when Delta1 = mu = 0 and |log(z / radius)| < 1e-5. The contour
// integral decays like exp(-t |log(z / radius)|) there, too slowly to reach
// full accuracy, and Ihat typically has a kink or a jump at the radius.
bool on_convergence_radius(const IhatSpec& spec, double z);

// ihat_eval(spec, z) away from the radius. Inside the window it extrapolates
// linearly in log z from the two points h and 2h out on the same side
// (h = 1e-5); exactly on the radius it returns the mean of the two one-sided
// limits, the value the inverse Mellin transform assigns to a jump.
double ihat_value(const IhatSpec& spec, double z);

}  // namespace ihat
