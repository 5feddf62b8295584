#pragma once

// Parameter model of the I-hat function
//
//   Ihat(z) = 1/(2 pi i) * Integral chi(s) z^{-s} ds,
//
//   chi(s) = prod_{j<=m} Gamma(b_j + f_j s) * prod_{j<=n} Gamma(1 - a_j - e_j s)
//          / ( prod_{j>m} Gamma^{B_j}(1 - b_j - f_j s)
//            * prod_{j>n} Gamma^{A_j}(a_j + e_j s) ),
//
// where (a_j, e_j, A_j) are the `upper` factors and (b_j, f_j, B_j) the
// `lower` factors. The first n upper and first m lower factors ("heads")
// carry exponent 1; the remaining ones ("tails") may carry any positive real
// exponent.

#include <limits>
#include <utility>
#include <vector>

namespace ihat {

struct GammaFactor {
  double param = 0.0;  // a_j or b_j
  double coeff = 1.0;  // e_j or f_j, > 0
  double expo = 1.0;   // A_j or B_j, > 0

  friend bool operator==(const GammaFactor&, const GammaFactor&) = default;
};

struct IhatSpec {
  int m = 0;
  int n = 0;
  std::vector<GammaFactor> upper;  // length p
  std::vector<GammaFactor> lower;  // length q

  int p() const { return static_cast<int>(upper.size()); }
  int q() const { return static_cast<int>(lower.size()); }

  friend bool operator==(const IhatSpec&, const IhatSpec&) = default;
};

// Open interval (lo, hi); either end may be infinite.
struct Strip {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool empty() const { return !(lo < hi); }
  bool contains(double s) const { return lo < s && s < hi; }
  double midpoint() const;
};

// Throws SpecError naming the offending index when an invariant fails:
// order bounds, positive coefficients/exponents, unit head exponents and a
// nonempty pole strip.
void validate(const IhatSpec& spec);

// Strip between the lower-head poles (left) and upper-head poles (right).
Strip pole_strip(const IhatSpec& spec);

// Pole strip further restricted so that every tail factor with a
// non-integer exponent has a positive gamma argument on the real axis; the
// integrand is continuous across the real axis only inside it.
Strip admissible_strip(const IhatSpec& spec);

double delta1(const IhatSpec& spec);

// Coefficient of s log s in log chi(s); controls the growth along
// horizontal directions and decides where a Delta1 = 0 contour may bend.
double mu_index(const IhatSpec& spec);

// prod_lower f^{B f} * prod_upper e^{-A e}: the radius separating the two
// asymptotic regimes when Delta1 = mu = 0.
double convergence_radius(const IhatSpec& spec);

struct AsymptoticExponents {
  double c = std::numeric_limits<double>::infinity();   // Ihat(z) ~ z^c, z -> 0
  double d = -std::numeric_limits<double>::infinity();  // Ihat(z) ~ z^d, z -> inf
};

AsymptoticExponents asymptotic_exponents(const IhatSpec& spec);

struct PowerIdentity {
  IhatSpec spec;
  double prefactor = 1.0;
};

// Ihat[z^sigma | coeffs] = (1/sigma) Ihat[z | coeffs / sigma].
PowerIdentity apply_power_identity(const IhatSpec& spec, double sigma);

// z^sigma Ihat[z | params] = Ihat[z | params + sigma * coeffs].
IhatSpec apply_shift_identity(const IhatSpec& spec, double sigma);

// True when every exponent is 1, i.e. the spec is a Fox H-function.
bool is_h_function(const IhatSpec& spec);

// Convenience constructors used throughout the tests and the CLI.
IhatSpec gamma_spec();                  // chi(s) = Gamma(s), Ihat(z) = e^{-z}
IhatSpec beta_kernel_spec(double beta); // chi(s) = Gamma(s)/Gamma(beta + s)

}  // namespace ihat
