#include "ihat/spec.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "ihat/errors.hpp"

namespace ihat {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(Validate, AcceptsClassicalSpecs) {
  EXPECT_NO_THROW(validate(gamma_spec()));
  EXPECT_NO_THROW(validate(beta_kernel_spec(2.0)));
}

TEST(Validate, RejectsOrderViolations) {
  IhatSpec s = gamma_spec();
  s.m = 2;
  EXPECT_THROW(validate(s), SpecError);
  s.m = -1;
  EXPECT_THROW(validate(s), SpecError);
  s = gamma_spec();
  s.n = 1;
  EXPECT_THROW(validate(s), SpecError);
}

TEST(Validate, RejectsNonUnitHeadExponentNamingTheIndex) {
  IhatSpec s{1, 1, {{0.5, 1.0, 1.0}}, {{0.0, 1.0, 1.0}, {0.3, 0.5, 1.7}}};
  EXPECT_NO_THROW(validate(s));
  s.lower[0].expo = 2.0;
  try {
    validate(s);
    FAIL() << "expected SpecError";
  } catch (const SpecError& e) {
    EXPECT_NE(std::string(e.what()).find("lower[0]"), std::string::npos) << e.what();
  }
  s.lower[0].expo = 1.0;
  s.upper[0].expo = 0.5;
  try {
    validate(s);
    FAIL() << "expected SpecError";
  } catch (const SpecError& e) {
    EXPECT_NE(std::string(e.what()).find("upper[0]"), std::string::npos) << e.what();
  }
}

TEST(Validate, RejectsNonPositiveCoefficientsAndExponents) {
  IhatSpec s = gamma_spec();
  s.lower[0].coeff = 0.0;
  EXPECT_THROW(validate(s), SpecError);
  s = IhatSpec{1, 0, {}, {{0.0, 1.0, 1.0}, {0.0, 1.0, -1.0}}};
  EXPECT_THROW(validate(s), SpecError);
}

TEST(Validate, RejectsEmptyPoleStrip) {
  // Lower-head poles reach s = 1, upper-head poles start at s = 0.5.
  const IhatSpec s{1, 1, {{0.5, 1.0, 1.0}}, {{-1.0, 1.0, 1.0}}};
  EXPECT_THROW(validate(s), SpecError);
}

TEST(Strips, PoleStripAndMidpoint) {
  const Strip g = pole_strip(gamma_spec());
  EXPECT_EQ(g.lo, 0.0);
  EXPECT_EQ(g.hi, kInf);
  EXPECT_EQ(g.midpoint(), 1.0);

  const IhatSpec s{1, 1, {{-2.0, 1.0, 1.0}}, {{2.0, 1.0, 1.0}}};
  const Strip q = pole_strip(s);
  EXPECT_EQ(q.lo, -2.0);
  EXPECT_EQ(q.hi, 3.0);
  EXPECT_EQ(q.midpoint(), 0.5);
}

TEST(Strips, NonIntegerTailsNarrowTheAdmissibleStrip) {
  // Lower tail Gamma^{1.7}(1 - b - f s) needs s < (1 - b)/f = 4.
  // Upper tail Gamma^{2.3}(a + e s) needs s > -a/e = -5.
  const IhatSpec s{0, 0, {{0.5, 0.1, 2.3}}, {{0.2, 0.2, 1.7}}};
  const Strip a = admissible_strip(s);
  EXPECT_DOUBLE_EQ(a.lo, -5.0);
  EXPECT_DOUBLE_EQ(a.hi, 4.0);
  // Integer exponents are single valued and leave the strip alone.
  const IhatSpec t{0, 0, {{0.5, 0.1, 2.0}}, {{0.2, 0.2, 3.0}}};
  EXPECT_EQ(admissible_strip(t).lo, -kInf);
  EXPECT_EQ(admissible_strip(t).hi, kInf);
}

TEST(Delta1, Examples) {
  EXPECT_EQ(delta1(gamma_spec()), 1.0);
  EXPECT_EQ(delta1(beta_kernel_spec(2.5)), 0.0);
  const IhatSpec s{1, 1, {{0.0, 1.0, 1.0}, {0.0, 0.25, 4.0}}, {{0.0, 1.0, 1.0}, {0.0, 0.5, 2.0}}};
  EXPECT_EQ(delta1(s), 0.0);
}

TEST(MuAndRadius, BetaKernelSitsOnTheBoundaryCase) {
  EXPECT_EQ(mu_index(beta_kernel_spec(3.0)), 0.0);
  EXPECT_EQ(convergence_radius(beta_kernel_spec(3.0)), 1.0);
  EXPECT_EQ(mu_index(gamma_spec()), 1.0);
  const IhatSpec s{0, 0, {{0.0, 0.5, 2.0}}, {{0.0, 2.0, 1.0}}};
  EXPECT_DOUBLE_EQ(convergence_radius(s), std::pow(2.0, 2.0) * std::pow(0.5, -1.0));
}

TEST(AsymptoticExponents, Examples) {
  const auto g = asymptotic_exponents(gamma_spec());
  EXPECT_EQ(g.c, 0.0);
  EXPECT_EQ(g.d, -kInf);

  const IhatSpec two{2, 0, {}, {{2.0, 1.0, 1.0}, {3.0, 2.0, 1.0}}};
  EXPECT_EQ(asymptotic_exponents(two).c, 1.5);

  const IhatSpec up{0, 1, {{0.5, 1.0, 1.0}}, {}};
  EXPECT_EQ(asymptotic_exponents(up).d, -0.5);
  EXPECT_EQ(asymptotic_exponents(up).c, kInf);
}

TEST(PowerIdentity, Parameters) {
  const IhatSpec s{1, 1, {{0.5, 1.0, 1.0}, {0.2, 0.3, 2.3}}, {{0.0, 1.0, 1.0}}};
  const auto same = apply_power_identity(s, 1.0);
  EXPECT_EQ(same.spec, s);
  EXPECT_EQ(same.prefactor, 1.0);

  const auto g = apply_power_identity(gamma_spec(), 2.0);
  EXPECT_EQ(g.spec.lower[0], (GammaFactor{0.0, 0.5, 1.0}));
  EXPECT_EQ(g.prefactor, 0.5);

  EXPECT_THROW(apply_power_identity(s, 0.0), DomainError);
}

TEST(ShiftIdentity, Parameters) {
  EXPECT_EQ(apply_shift_identity(gamma_spec(), 0.0), gamma_spec());
  EXPECT_EQ(apply_shift_identity(gamma_spec(), 1.5).lower[0], (GammaFactor{1.5, 1.0, 1.0}));
  const IhatSpec s{1, 1, {{0.5, 2.0, 1.0}, {0.25, 0.5, 1.7}}, {{0.0, 1.0, 1.0}}};
  const IhatSpec t = apply_shift_identity(s, 0.25);
  EXPECT_EQ(t.upper[0].param, 1.0);
  EXPECT_EQ(t.upper[1].param, 0.375);
  EXPECT_EQ(t.upper[1].expo, 1.7);
  EXPECT_EQ(t.m, s.m);
  EXPECT_EQ(t.n, s.n);
}

TEST(ShiftIdentity, ComposesAdditively) {
  // Dyadic parameters keep the arithmetic exact.
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> num(-64, 64);
  auto dyadic = [&] { return num(rng) / 16.0; };
  for (int i = 0; i < 200; ++i) {
    const IhatSpec s{1, 1, {{dyadic(), 0.5, 1.0}, {dyadic(), 0.25, 1.5}},
                     {{dyadic(), 1.0, 1.0}, {dyadic(), 2.0, 3.0}}};
    const double a = dyadic();
    const double b = dyadic();
    EXPECT_EQ(apply_shift_identity(apply_shift_identity(s, a), b),
              apply_shift_identity(s, a + b));
  }
}

TEST(HFunction, UnitExponentsOnly) {
  EXPECT_TRUE(is_h_function(gamma_spec()));
  const IhatSpec s{1, 0, {}, {{0.0, 1.0, 1.0}, {0.3, 0.5, 1.7}}};
  EXPECT_FALSE(is_h_function(s));
}

}  // namespace
}  // namespace ihat
