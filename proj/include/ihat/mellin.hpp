#pragma once

#include <functional>

#include "ihat/gamma_kernel.hpp"
#include "ihat/ihat_eval.hpp"
#include "ihat/quadrature.hpp"
#include "ihat/spec.hpp"

namespace ihat {

// The function x -> Ihat[z x^power] on x > 0.
struct ScaledIhat {
  IhatSpec spec;
  double z = 1.0;
  double power = 1.0;
};

void validate(const ScaledIhat& f);

// Values of Re(s) for which the Mellin transform of f is chi(s/power)
// evaluated on its admissible strip.
Strip mellin_strip(const ScaledIhat& f);

// Integral_0^inf x^{s-1} Ihat[z x^power] dx = chi(s/power) / (power z^{s/power}).
Complex mellin_ihat(const ScaledIhat& f, Complex s);

// Integral_0^inf x^{s-1} Ihat[z1 x^sigma] Ihat[z2 x^mu] dx is
// prefactor * Ihat[argument | spec]. The merged parameters depend on s,
// which must be real.
struct MergedMellin {
  IhatSpec spec;
  double argument = 1.0;
  double prefactor = 1.0;
};

MergedMellin merge_mellin_product(const ScaledIhat& f1, const ScaledIhat& f2, Complex s);

double mellin_ihat_product(const ScaledIhat& f1, const ScaledIhat& f2, Complex s);

// Inverse Mellin transform (1/2 pi i) Integral M(s) y^{-s} ds along
// s(t) = contour.shift + slope |t| + i t. The transform must satisfy
// M(conj s) = conj M(s) and be analytic between the path and the vertical
// line through contour.shift. A nonzero slope turns algebraic decay into
// exponential decay: use slope < 0 when y < 1 and M decays to the left, and
// the reverse.
double pdf_from_mellin(const std::function<Complex(Complex)>& mellin, double y,
                       const Contour& contour, double slope = 0.0);

// Direct quadrature of the defining integrals, with tails beyond the
// cutoffs below 1e-12 of the integral. Independent of the closed forms.
quad::Result mellin_quadrature(const ScaledIhat& f, double s, double rel_tol = 1e-9);
quad::Result mellin_product_quadrature(const ScaledIhat& f1, const ScaledIhat& f2, double s,
                                       double rel_tol = 1e-7);

}  // namespace ihat
