#pragma once

#include <complex>

namespace ihat {

using Complex = std::complex<double>;

inline constexpr double kDefaultCutEpsilon = 1e-12;

// Principal branch of log Gamma(w): analytic on C minus (-inf, 0], real on
// the positive real axis. Lanczos for Re(w) >= 0.5 and |w| <= 20, Stirling
// series for larger |w|, reflection through an explicitly continuous branch
// of log sin(pi w) for Re(w) < 0.5.
//
// Throws PoleError at nonpositive integers and BranchCutError when w is within
// cut_epsilon of the negative real axis.
Complex log_gamma(Complex w, double cut_epsilon = kDefaultCutEpsilon);

// Gamma(w)^expo defined as exp(expo * log_gamma(w)); returns the exponent.
// This is the only meaning given to non-integer powers of a complex gamma.
Complex powered_gamma_log(Complex w, double expo,
                          double cut_epsilon = kDefaultCutEpsilon);

}  // namespace ihat
