#include "ihat/mellin.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ihat/errors.hpp"

namespace ihat {
namespace {

constexpr double kPi = std::numbers::pi;

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

// Non-integer exponents on both tail sides; strip (-1.25, 3.5) at power 2.5.
IhatSpec mixed_spec() {
  return IhatSpec{2, 0, {{1.2, 0.4, 2.3}}, {{0.5, 1.0, 1.0}, {1.0, 2.0, 1.0}, {0.3, 0.5, 1.7}}};
}

TEST(MellinIhat, GammaExamples) {
  EXPECT_NEAR(mellin_ihat({gamma_spec(), 1.0, 1.0}, 2.0).real(), 1.0, 1e-14);
  EXPECT_NEAR(mellin_ihat({gamma_spec(), 3.0, 1.0}, 2.0).real(), 1.0 / 9.0, 1e-15);
  const double want = std::sqrt(kPi) / 4.0;
  EXPECT_NEAR(mellin_ihat({gamma_spec(), 1.0, 2.0}, 3.0).real(), want, 1e-14);
  // Oracle: the defining integral with the elementary integrand.
  const auto direct =
      quad::adaptive([](double x) { return x * x * std::exp(-x * x); }, 0.0, 12.0, 1e-15);
  EXPECT_NEAR(direct.value, want, 1e-13);
}

TEST(MellinIhat, ComplexArgument) {
  // Gamma(s)/z^s for s = 1.5 + 2i, z = 2.
  const Complex s(1.5, 2.0);
  const Complex want = std::exp(log_gamma(s) - s * std::log(2.0));
  EXPECT_LT(std::abs(mellin_ihat({gamma_spec(), 2.0, 1.0}, s) - want), 1e-14);
}

TEST(MellinIhat, AgreesWithDirectQuadrature) {
  const ScaledIhat cases[] = {
      {gamma_spec(), 1.7, 1.0},
      {IhatSpec{1, 1, {{0.2, 1.0, 1.0}}, {{0.5, 1.0, 1.0}}}, 0.8, 1.5},
      {mixed_spec(), 1.0, 2.5},
  };
  for (const auto& f : cases) {
    for (double s : {1.0, 1.5, 2.0, 3.0}) {
      if (!mellin_strip(f).contains(s)) continue;
      const double closed = mellin_ihat(f, s).real();
      const double oracle = mellin_quadrature(f, s).value;
      EXPECT_LT(rel_err(closed, oracle), 1e-6) << "s = " << s << " z = " << f.z;
    }
  }
}

TEST(MellinIhat, StripAndConvergenceErrors) {
  EXPECT_THROW(mellin_ihat({gamma_spec(), 1.0, 1.0}, 0.0), StripError);
  EXPECT_THROW(mellin_ihat({gamma_spec(), 1.0, 1.0}, -1.0), StripError);
  EXPECT_THROW(mellin_ihat({mixed_spec(), 1.0, 2.5}, 3.5), StripError);
  EXPECT_THROW(mellin_ihat({beta_kernel_spec(2.0), 1.0, 1.0}, 1.0), ConvergenceError);
  EXPECT_THROW(mellin_ihat({gamma_spec(), -1.0, 1.0}, 1.0), DomainError);
  EXPECT_THROW(mellin_ihat({gamma_spec(), 1.0, 0.0}, 1.0), DomainError);
}

TEST(MergeMellinProduct, TwoGammas) {
  const ScaledIhat g{gamma_spec(), 1.0, 1.0};
  const MergedMellin m = merge_mellin_product(g, g, 1.0);
  EXPECT_EQ(m.spec, (IhatSpec{1, 1, {{0.0, 1.0, 1.0}}, {{0.0, 1.0, 1.0}}}));
  EXPECT_EQ(m.argument, 1.0);
  EXPECT_EQ(m.prefactor, 1.0);
}

TEST(MergeMellinProduct, OrderBookkeepingAndHeads) {
  const IhatSpec s1{1, 1, {{0.5, 1.0, 1.0}}, {{0.0, 1.0, 1.0}, {0.2, 0.5, 1.7}}};
  const IhatSpec s2{1, 1, {{0.1, 1.0, 1.0}, {0.3, 0.5, 2.0}, {0.4, 0.5, 1.3}}, {{0.0, 2.0, 1.0}}};
  const MergedMellin m = merge_mellin_product({s1, 1.0, 1.0}, {s2, 1.0, 2.0}, 0.25);
  EXPECT_EQ(m.spec.p(), s1.q() + s2.p());
  EXPECT_EQ(m.spec.q(), s1.p() + s2.q());
  EXPECT_EQ(m.spec.m, s2.m + s1.n);
  EXPECT_EQ(m.spec.n, s2.n + s1.m);
  for (int j = 0; j < m.spec.n; ++j) EXPECT_EQ(m.spec.upper[j].expo, 1.0);
  for (int j = 0; j < m.spec.m; ++j) EXPECT_EQ(m.spec.lower[j].expo, 1.0);
  EXPECT_NO_THROW(validate(m.spec));
  // The non-unit lower tail of the first function moves to the upper side.
  EXPECT_EQ(m.spec.upper.back().expo, 1.7);
  EXPECT_EQ(m.spec.upper.back().coeff, 1.0);
  EXPECT_EQ(m.spec.upper.back().param, 1.0 - 0.2 - 0.25 * 0.5);
}

TEST(MergeMellinProduct, RejectsComplexS) {
  const ScaledIhat g{gamma_spec(), 1.0, 1.0};
  EXPECT_THROW(merge_mellin_product(g, g, Complex(1.0, 0.5)), DomainError);
}

TEST(MellinIhatProduct, ElementaryIntegrals) {
  const ScaledIhat g{gamma_spec(), 1.0, 1.0};
  EXPECT_NEAR(mellin_ihat_product(g, g, 1.0), 0.5, 1e-10);

  // Integral_0^1 x e^{-x} (1 - x) dx = 3/e - 1.
  const ScaledIhat b{beta_kernel_spec(2.0), 1.0, 1.0};
  EXPECT_LT(rel_err(mellin_ihat_product(g, b, 2.0), 0.10363832351432696479), 1e-9);

  // Integral x^{1/2} e^{-2x} e^{-0.5x} dx = Gamma(1.5) / 2.5^1.5.
  const double want = std::tgamma(1.5) / std::pow(2.5, 1.5);
  EXPECT_LT(rel_err(mellin_ihat_product({gamma_spec(), 2.0, 1.0}, {gamma_spec(), 0.5, 1.0}, 1.5),
                    want),
            1e-9);
}

TEST(MellinIhatProduct, UnequalPowersAndScales) {
  // Integral e^{-2x^2 - 3x} dx = e^{9/8} sqrt(pi/2)/2 erfc(3/(2 sqrt 2)).
  const double want =
      std::exp(9.0 / 8.0) * std::sqrt(kPi / 2.0) / 2.0 * std::erfc(3.0 / (2.0 * std::sqrt(2.0)));
  const ScaledIhat f1{gamma_spec(), 2.0, 2.0};
  const ScaledIhat f2{gamma_spec(), 3.0, 1.0};
  EXPECT_LT(rel_err(mellin_ihat_product(f1, f2, 1.0), want), 1e-9);
  EXPECT_LT(rel_err(mellin_ihat_product(f2, f1, 1.0), want), 1e-9);
}

TEST(MellinIhatProduct, AgreesWithDirectQuadrature) {
  const ScaledIhat f1{mixed_spec(), 1.3, 2.5};
  const ScaledIhat f2{IhatSpec{1, 1, {{0.2, 1.0, 1.0}}, {{0.5, 1.0, 1.0}}}, 0.8, 1.5};
  for (double s : {1.0, 1.5}) {
    const double closed = mellin_ihat_product(f1, f2, s);
    const double oracle = mellin_product_quadrature(f1, f2, s).value;
    EXPECT_LT(rel_err(closed, oracle), 1e-4) << s;
  }
}

TEST(MellinIhatProduct, StripBoundary) {
  const ScaledIhat g{gamma_spec(), 1.0, 1.0};
  EXPECT_THROW(mellin_ihat_product(g, g, 0.0), StripError);
  EXPECT_THROW(mellin_ihat_product(g, g, -0.5), StripError);
  const ScaledIhat b{beta_kernel_spec(2.0), 1.0, 1.0};
  EXPECT_THROW(mellin_ihat_product(b, b, 1.0), ConvergenceError);
}

TEST(PdfFromMellin, Examples) {
  Contour c;
  c.shift = 1.0;
  auto gamma = [](Complex s) { return std::exp(log_gamma(s)); };
  EXPECT_NEAR(pdf_from_mellin(gamma, 1.0, c), 0.36787944117144232160, 1e-9);

  auto ratio = [](Complex s) { return std::exp(log_gamma(s) - log_gamma(s + 2.0)); };
  EXPECT_NEAR(pdf_from_mellin(ratio, 0.5, c, -2.0), 0.5, 1e-9);
  EXPECT_NEAR(pdf_from_mellin(ratio, 2.0, c, 2.0), 0.0, 1e-9);
}

TEST(PdfFromMellin, RoundTripThroughTheClosedForm) {
  const ScaledIhat f{IhatSpec{1, 1, {{0.2, 1.0, 1.0}}, {{0.5, 1.0, 1.0}}}, 0.8, 1.5};
  Contour c;
  c.shift = mellin_strip(f).midpoint();
  auto m = [&](Complex s) { return mellin_ihat(f, s); };
  for (double y : {0.1, 0.7, 1.0, 3.0}) {
    const double want = ihat_eval(f.spec, f.z * std::pow(y, f.power));
    EXPECT_LT(rel_err(pdf_from_mellin(m, y, c), want), 1e-6) << y;
  }
}

}  // namespace
}  // namespace ihat
