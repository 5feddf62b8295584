#pragma once

// Ihat-function probability densities and their products and quotients.

#include <span>
#include <string>
#include <variant>

#include "ihat/ihat_eval.hpp"
#include "ihat/spec.hpp"

namespace ihat {

// f(y) = C y^r Ihat[Z y^P | spec] on y > 0.
struct IhatDensity {
  IhatSpec spec;
  double Z = 1.0;
  double P = 1.0;
  double r = 0.0;
  double C = 1.0;
  bool validated = false;
};

// The variate with density sigma z^{s1/sigma} phi x^{s1-1} Ihat[z x^sigma].
struct BaseParams {
  IhatSpec spec;
  double z = 1.0;
  double sigma = 1.0;
  double s1 = 1.0;
};

// DomainError for nonpositive z, sigma or s1; StripError when s1/sigma is
// outside the admissible strip of the spec.
void validate(const BaseParams& base);

// 1 / chi(s1/sigma): the constant that normalizes the base density.
double phi(const BaseParams& base);

struct DensityCheck {
  double integral = 0.0;
  double min_value = 0.0;  // smallest pdf value on the grid
  double y_lo = 0.0;       // grid and quadrature range
  double y_hi = 0.0;
  bool passed = false;
  std::string details;
};

// Integral over (0, inf) to 1e-6 and pdf >= -1e-10 on 200 log-spaced
// points spanning the range that carries all but 1e-12 of the mass.
DensityCheck check_density(const IhatDensity& d);

// The constructors run check_density and record the outcome in
// `validated`; a failed check does not throw.
IhatDensity make_base_dist(const BaseParams& base);
IhatDensity product_dist(const BaseParams& b1, const BaseParams& b2);
IhatDensity quotient_dist(const BaseParams& b1, const BaseParams& b2);

// Same parameter algebra without the numerical check (validated = false).
IhatDensity base_density(const BaseParams& base);
IhatDensity product_density(const BaseParams& b1, const BaseParams& b2);
IhatDensity quotient_density(const BaseParams& b1, const BaseParams& b2);

double pdf(const IhatDensity& d, double y);
double pdf(const IhatDensity& d, double y, const Contour& contour);

// E[X^{s-1}] = z^{(1-s)/sigma} phi chi((s1 - 1 + s)/sigma).
double moment(const BaseParams& base, double s);

// Integral y^{s-1} f(y) dy for any density, from its Mellin kernel:
// C chi((s + r)/P) / (P Z^{(s + r)/P}).
double density_moment(const IhatDensity& d, double s);

// True when every exponent is 1 (an H-function density).
bool reduce_to_h(const IhatDensity& d);

// The same density rewritten through the power identity with exponent
// sigma (argument Z^{1/sigma} y^{P/sigma}) or the shift identity by t
// (parameters moved by t * coeff, y-power lowered by t P).
IhatDensity density_power_identity(const IhatDensity& d, double sigma);
IhatDensity density_shift_identity(const IhatDensity& d, double t);

enum class Family { gamma, exponential, beta, beta_prime };

// gamma(k), exponential(), beta(a, b) give base parameters; beta_prime(a, b)
// is the quotient density gamma(a)/gamma(b). DomainError on bad shapes or
// parameter counts.
std::variant<BaseParams, IhatDensity> classical(Family family, std::span<const double> params);

BaseParams gamma_base(double k);
BaseParams beta_base(double a, double b);

}  // namespace ihat
