#include "ihat/gamma_kernel.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "ihat/errors.hpp"

namespace ihat {
namespace {

using std::numbers::pi;

// Test-only reference: shift upward with the principal-log recurrence
// logGamma(w) = logGamma(w + N) - sum log(w + k) until Re >= 40, then a long
// Stirling series in long double. Shares no code with the Lanczos/reflection
// path under test.
std::complex<long double> reference_log_gamma(std::complex<double> w0) {
  using C = std::complex<long double>;
  C w(w0.real(), w0.imag());
  C shift = 0.0L;
  while (w.real() < 40.0L || std::abs(w) < 40.0L) {
    shift += std::log(w);
    w += 1.0L;
  }
  const long double b[] = {1.0L / 6,      -1.0L / 30,     1.0L / 42,
                           -1.0L / 30,    5.0L / 66,      -691.0L / 2730,
                           7.0L / 6,      -3617.0L / 510, 43867.0L / 798,
                           -174611.0L / 330};
  C series = 0.0L;
  C inv = 1.0L / w;
  C power = inv;
  for (int k = 1; k <= 10; ++k) {
    series += b[k - 1] / (2.0L * k * (2.0L * k - 1.0L)) * power;
    power *= inv * inv;
  }
  const long double half_log_2pi = 0.5L * std::log(2.0L * std::numbers::pi_v<long double>);
  return (w - 0.5L) * std::log(w) - w + half_log_2pi + series - shift;
}

void expect_close(Complex got, double re, double im, double rel) {
  const double scale = std::max(1.0, std::abs(Complex(re, im)));
  EXPECT_NEAR(got.real(), re, rel * scale) << "imag part " << got.imag();
  EXPECT_NEAR(got.imag(), im, rel * scale) << "real part " << got.real();
}

TEST(LogGamma, TrivialValues) {
  EXPECT_NEAR(std::abs(log_gamma(1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(log_gamma(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(log_gamma(0.5).real(), 0.5 * std::log(pi), 1e-15);
  EXPECT_EQ(log_gamma(0.5).imag(), 0.0);
}

// Frozen from a 40-digit mpmath.loggamma evaluation.
TEST(LogGamma, HighPrecisionValues) {
  struct Case {
    Complex w;
    double re, im;
  };
  const Case cases[] = {
      {{3, 4}, -1.7566267846037841105, 4.7426644380346579282},
      {{1.5, 2}, -1.4991963725850954884, 0.73328068169099787613},
      {{-2.5, 0.3}, -0.43208889261320192052, -9.0933454212897415073},
      {{-10.7, -3.2}, -24.537835979755762189, 27.411421294349443639},
      {{0.1, 0.01}, 2.2476658232303512977, -0.10390589166538166232},
      {{25, 40}, 29.849018814915747033, 138.94757254800082995},
      {{-50.5, 1e-3}, -149.29650386614301683, -160.21729349142826468},
      {{1e5, 1e5}, 1007405.0783746975228, 1164489.3291652665731},
      {{0.3, -25}, -38.994733598718012674, -55.158603080460563694},
      {{1e6, 0}, 12815504.56914761166, 0.0},
      {{-0.5, -0.5}, 0.45896083308959576723, 3.1069236923143956735},
      {{0.7, -0.5}, -0.042201952551005386772, 0.50386123860025509301},
      {{-120.25, 7.5}, -480.50185973090449539, -343.38955760310467921},
  };
  for (const auto& c : cases) {
    SCOPED_TRACE(testing::Message() << "w = " << c.w);
    expect_close(log_gamma(c.w), c.re, c.im, 1e-13);
  }
}

TEST(LogGamma, AgreesWithRecurrenceReference) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> re(-30.0, 30.0);
  std::uniform_real_distribution<double> im(-40.0, 40.0);
  for (int i = 0; i < 2000; ++i) {
    const Complex w(re(rng), im(rng));
    if (std::abs(w.imag()) < 1e-3) continue;
    const auto ref = reference_log_gamma(w);
    SCOPED_TRACE(testing::Message() << "w = " << w);
    expect_close(log_gamma(w), static_cast<double>(ref.real()),
                 static_cast<double>(ref.imag()), 1e-13);
  }
}

TEST(LogGamma, Recurrence) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> re(-10.0, 10.0);
  std::uniform_real_distribution<double> im(-15.0, 15.0);
  for (int i = 0; i < 2000; ++i) {
    const Complex w(re(rng), im(rng));
    if (std::abs(w.imag()) < 1e-6) continue;
    const Complex ratio = std::exp(log_gamma(w + 1.0) - log_gamma(w));
    EXPECT_LT(std::abs(ratio - w) / std::abs(w), 1e-12) << w;
  }
}

TEST(LogGamma, ConjugateSymmetry) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> re(-20.0, 20.0);
  std::uniform_real_distribution<double> im(0.01, 30.0);
  for (int i = 0; i < 500; ++i) {
    const Complex w(re(rng), im(rng));
    const Complex a = log_gamma(std::conj(w));
    const Complex b = std::conj(log_gamma(w));
    EXPECT_EQ(a.real(), b.real());
    EXPECT_EQ(a.imag(), b.imag());
  }
}

TEST(LogGamma, Reflection) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> re(-8.0, 8.0);
  std::uniform_real_distribution<double> im(0.05, 3.0);
  for (int i = 0; i < 1000; ++i) {
    Complex w(re(rng), im(rng));
    if (i % 2) w = std::conj(w);
    const Complex product = std::exp(log_gamma(w) + log_gamma(1.0 - w)) *
                            std::sin(pi * w) / pi;
    EXPECT_LT(std::abs(product - 1.0), 1e-10) << w;
  }
}

TEST(LogGamma, ContinuousAcrossTheRealAxisOffTheCut) {
  for (double x : {0.05, 0.3, 0.49, 0.51, 1.7, 9.5}) {
    const Complex above = log_gamma(Complex(x, 1e-9));
    const Complex below = log_gamma(Complex(x, -1e-9));
    EXPECT_NEAR(above.real(), below.real(), 1e-8);
    EXPECT_NEAR(above.imag(), below.imag(), 1e-7);
  }
}

TEST(LogGamma, PolesAndCut) {
  EXPECT_THROW(log_gamma(0.0), PoleError);
  EXPECT_THROW(log_gamma(-3.0), PoleError);
  EXPECT_THROW(log_gamma(Complex(-2.5, 0.0)), BranchCutError);
  EXPECT_THROW(log_gamma(Complex(-2.5, 1e-13)), BranchCutError);
  EXPECT_NO_THROW(log_gamma(Complex(-2.5, 1e-13), 1e-14));
  EXPECT_THROW(log_gamma(Complex(-2.0, 5e-13)), BranchCutError);
}

TEST(PoweredGammaLog, Values) {
  EXPECT_NEAR(std::abs(powered_gamma_log(2.0, 3.0)), 0.0, 1e-14);
  EXPECT_NEAR(powered_gamma_log(0.5, 2.0).real(), std::log(pi), 1e-14);
  const Complex w(1.5, 2.0);
  const Complex expected = 0.7 * Complex(-1.4991963725850954884, 0.73328068169099787613);
  EXPECT_LT(std::abs(powered_gamma_log(w, 0.7) - expected), 1e-13);
}

TEST(PoweredGammaLog, UnitExponentIsExact) {
  for (Complex w : {Complex(3, 4), Complex(-2.5, 0.3), Complex(0.2, -7)}) {
    EXPECT_EQ(powered_gamma_log(w, 1.0), log_gamma(w));
  }
}

TEST(PoweredGammaLog, RejectsNonpositiveExponent) {
  EXPECT_THROW(powered_gamma_log(2.0, 0.0), DomainError);
  EXPECT_THROW(powered_gamma_log(2.0, -1.0), DomainError);
}

}  // namespace
}  // namespace ihat
