#include "ihat/gamma_kernel.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ihat/errors.hpp"

namespace ihat {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfLog2Pi = 0.91893853320467274178032973640562;
constexpr double kStirlingRadius = 20.0;

// Lanczos approximation, g = 671/128, 14 terms.
constexpr double kLanczosG = 5.24218750000000000;
constexpr double kLanczosC0 = 0.999999999999997092;
constexpr std::array<double, 14> kLanczos = {
    57.1562356658629235,     -59.5979603554754912,
    14.1360979747417471,     -0.491913816097620199,
    .339946499848118887e-4,  .465236289270485756e-4,
    -.983744753048795646e-4, .158088703224912494e-3,
    -.210264441724104883e-3, .217439618115212643e-3,
    -.164318106536763890e-3, .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5};

// B_{2k} / (2k (2k-1)), k = 1..10.
constexpr std::array<double, 10> kStirling = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0};

Complex lanczos(Complex w) {
  Complex tmp = w + kLanczosG;
  tmp = (w + 0.5) * std::log(tmp) - tmp;
  double sr = kLanczosC0;
  double si = 0.0;
  double yr = w.real();
  const double yi = w.imag();
  for (double c : kLanczos) {
    yr += 1.0;
    const double scale = c / (yr * yr + yi * yi);
    sr += scale * yr;
    si -= scale * yi;
  }
  return tmp + std::log(2.5066282746310005 * Complex(sr, si) / w);
}

Complex stirling(Complex w) {
  const Complex inv = 1.0 / w;
  const Complex inv2 = inv * inv;
  Complex series = 0.0;
  Complex power = inv;
  for (double c : kStirling) {
    series += c * power;
    power *= inv2;
  }
  return (w - 0.5) * std::log(w) - w + kHalfLog2Pi + series;
}

Complex right_half(Complex w) {
  return std::abs(w) > kStirlingRadius ? stirling(w) : lanczos(w);
}

// log(1 - exp(2 pi i w)) for Im(w) >= 0, without cancellation near integers.
Complex log_one_minus_exp2piw(Complex w) {
  const double frac = w.real() - std::round(w.real());
  const double a = -2.0 * kPi * w.imag();
  const double b = 2.0 * kPi * frac;
  const double ea = std::exp(a);
  const double s = std::sin(0.5 * b);
  const double re = -std::expm1(a) * std::cos(b) + 2.0 * s * s;
  const double im = -ea * std::sin(b);
  return std::log(Complex(re, im));
}

// Upper half-plane (Im w >= 0) reflection. With
//   L(w) = -log 2 + i pi/2 - i pi w + log(1 - e^{2 pi i w}),
// an analytic log sin(pi w) that vanishes at w = 1/2, the combination
// log pi - L(w) - logGamma(1 - w) is the principal log Gamma(w) exactly.
Complex reflect_upper(Complex w) {
  const Complex i(0.0, 1.0);
  const Complex log_sin =
      -std::numbers::ln2 + i * (0.5 * kPi) - i * (kPi * w) +
      log_one_minus_exp2piw(w);
  return std::log(kPi) - log_sin - right_half(1.0 - w);
}

std::string describe(Complex w) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << w.real() << "," << w.imag() << ")";
  return os.str();
}

}  // namespace

Complex log_gamma(Complex w, double cut_epsilon) {
  if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
    throw DomainError("log_gamma: non-finite argument " + describe(w));
  }
  if (w.real() <= 0.0 && std::abs(w.imag()) <= cut_epsilon) {
    if (w.imag() == 0.0 && w.real() == std::round(w.real())) {
      throw PoleError("log_gamma: pole at " + describe(w));
    }
    throw BranchCutError("log_gamma: argument on the branch cut " +
                         describe(w));
  }

  Complex result;
  if (w.real() >= 0.5) {
    result = right_half(w);
  } else if (w.imag() >= 0.0) {
    result = reflect_upper(w);
  } else {
    result = std::conj(reflect_upper(std::conj(w)));
  }
  if (!std::isfinite(result.real()) || !std::isfinite(result.imag())) {
    throw DomainError("log_gamma: overflow at " + describe(w));
  }
  return result;
}

Complex powered_gamma_log(Complex w, double expo, double cut_epsilon) {
  if (!(expo > 0.0)) {
    throw DomainError("powered_gamma_log: exponent must be positive");
  }
  const Complex lg = log_gamma(w, cut_epsilon);
  return expo == 1.0 ? lg : expo * lg;
}

}  // namespace ihat
