#include "ihat/dist.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "ihat/errors.hpp"
#include "ihat/quadrature.hpp"

namespace ihat {
namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

void require_in_strip(const IhatSpec& spec, double u, const char* what) {
  const Strip strip = admissible_strip(spec);
  if (!strip.contains(u)) {
    throw StripError(std::string(what) + ": kernel argument " + fmt(u) +
                     " outside the admissible strip (" + fmt(strip.lo) + ", " + fmt(strip.hi) +
                     ")");
  }
}

// Real chi(u) for u inside the strip.
double chi_real(const IhatSpec& spec, double u) {
  const Complex lt = log_theta_eval(spec, u);
  if (std::isinf(lt.real()) && lt.real() < 0.0) return 0.0;
  const double v = std::exp(lt).real();
  if (!std::isfinite(v)) throw DomainError("chi overflows at " + fmt(u));
  return v;
}

// A factor (param + shift * coeff, scale * coeff, expo) of a merged spec.
GammaFactor moved(const GammaFactor& g, double shift, double scale) {
  return {g.param + shift * g.coeff, scale * g.coeff, g.expo};
}

// (1 - param - shift * coeff, scale * coeff, expo): the reflected factor.
GammaFactor reflected(const GammaFactor& g, double shift, double scale) {
  return {1.0 - g.param - shift * g.coeff, scale * g.coeff, g.expo};
}

constexpr int kGridPoints = 200;

}  // namespace

void validate(const BaseParams& base) {
  if (!(base.z > 0.0) || !std::isfinite(base.z)) throw DomainError("base needs z > 0");
  if (!(base.sigma > 0.0) || !std::isfinite(base.sigma)) {
    throw DomainError("base needs sigma > 0");
  }
  if (!(base.s1 > 0.0) || !std::isfinite(base.s1)) throw DomainError("base needs s1 > 0");
  validate(base.spec);
  require_in_strip(base.spec, base.s1 / base.sigma, "base s1/sigma");
}

double phi(const BaseParams& base) {
  validate(base);
  const double c = chi_real(base.spec, base.s1 / base.sigma);
  if (c == 0.0) throw StripError("chi(s1/sigma) vanishes: phi is infinite");
  return 1.0 / c;
}

IhatDensity base_density(const BaseParams& base) {
  IhatDensity d;
  d.spec = base.spec;
  d.Z = base.z;
  d.P = base.sigma;
  d.r = base.s1 - 1.0;
  d.C = base.sigma * std::pow(base.z, base.s1 / base.sigma) * phi(base);
  return d;
}

IhatDensity product_density(const BaseParams& b1, const BaseParams& b2) {
  const double sigma = b1.sigma;
  const double mu = b2.sigma;
  const double t1 = b1.s1 / sigma;
  const double t2 = b2.s1 / mu;
  const IhatSpec& x = b1.spec;
  const IhatSpec& w = b2.spec;

  IhatDensity d;
  d.C = sigma * mu * phi(b1) * phi(b2);
  d.r = -1.0;
  d.Z = std::pow(b1.z, mu) * std::pow(b2.z, sigma);
  d.P = mu * sigma;
  IhatSpec& s = d.spec;
  s.m = x.m + w.m;
  s.n = x.n + w.n;
  for (int j = 0; j < x.n; ++j) s.upper.push_back(moved(x.upper[j], t1, mu));
  for (int j = 0; j < w.n; ++j) s.upper.push_back(moved(w.upper[j], t2, sigma));
  for (int j = x.n; j < x.p(); ++j) s.upper.push_back(moved(x.upper[j], t1, mu));
  for (int j = w.n; j < w.p(); ++j) s.upper.push_back(moved(w.upper[j], t2, sigma));
  for (int j = 0; j < x.m; ++j) s.lower.push_back(moved(x.lower[j], t1, mu));
  for (int j = 0; j < w.m; ++j) s.lower.push_back(moved(w.lower[j], t2, sigma));
  for (int j = x.m; j < x.q(); ++j) s.lower.push_back(moved(x.lower[j], t1, mu));
  for (int j = w.m; j < w.q(); ++j) s.lower.push_back(moved(w.lower[j], t2, sigma));
  validate(s);
  return d;
}

IhatDensity quotient_density(const BaseParams& b1, const BaseParams& b2) {
  const double sigma = b1.sigma;
  const double mu = b2.sigma;
  const double t1 = b1.s1 / sigma;
  const double t2 = b2.s1 / mu;
  const IhatSpec& x = b1.spec;
  const IhatSpec& w = b2.spec;

  IhatDensity d;
  d.C = sigma * mu * phi(b1) * phi(b2);
  d.r = -1.0;
  d.Z = std::pow(b1.z, mu) * std::pow(b2.z, -sigma);
  d.P = mu * sigma;
  // The second variate enters through E[X2^{1-s}], which swaps its upper
  // and lower factor lists and reflects their parameters.
  IhatSpec& s = d.spec;
  s.m = x.m + w.n;
  s.n = x.n + w.m;
  for (int j = 0; j < x.n; ++j) s.upper.push_back(moved(x.upper[j], t1, mu));
  for (int j = 0; j < w.m; ++j) s.upper.push_back(reflected(w.lower[j], t2, sigma));
  for (int j = x.n; j < x.p(); ++j) s.upper.push_back(moved(x.upper[j], t1, mu));
  for (int j = w.m; j < w.q(); ++j) s.upper.push_back(reflected(w.lower[j], t2, sigma));
  for (int j = 0; j < x.m; ++j) s.lower.push_back(moved(x.lower[j], t1, mu));
  for (int j = 0; j < w.n; ++j) s.lower.push_back(reflected(w.upper[j], t2, sigma));
  for (int j = x.m; j < x.q(); ++j) s.lower.push_back(moved(x.lower[j], t1, mu));
  for (int j = w.n; j < w.p(); ++j) s.lower.push_back(reflected(w.upper[j], t2, sigma));
  validate(s);
  return d;
}

double pdf(const IhatDensity& d, double y, const Contour& contour) {
  if (!(y > 0.0) || !std::isfinite(y)) throw DomainError("pdf needs y > 0");
  const double v = d.C * std::pow(y, d.r) * ihat_eval(d.spec, d.Z * std::pow(y, d.P), contour);
  return (v < 0.0 && v > -1e-12) ? 0.0 : v;
}

double pdf(const IhatDensity& d, double y) {
  if (!(y > 0.0) || !std::isfinite(y)) throw DomainError("pdf needs y > 0");
  const double v = d.C * std::pow(y, d.r) * ihat_value(d.spec, d.Z * std::pow(y, d.P));
  return (v < 0.0 && v > -1e-12) ? 0.0 : v;
}

DensityCheck check_density(const IhatDensity& d) {
  DensityCheck out;
  auto f = [&](double y) { return pdf(d, y); };
  const double y0 = std::pow(d.Z, -1.0 / d.P);
  try {
    const quad::Result r = quad::positive_axis(f, 0.5 * y0, 2.0 * y0, 1e-9);
    out.integral = r.value;
    // Grid range: where the mass beyond each end drops below 1e-12.
    out.y_lo = quad::lower_cutoff(f, 0.5 * y0, 1e-12).x;
    out.y_hi = quad::upper_cutoff(f, 2.0 * y0, 1e-12).x;
  } catch (const Error& e) {
    out.details = std::string("normalization failed: ") + e.what();
    return out;
  }
  out.min_value = std::numeric_limits<double>::infinity();
  const double step = std::log(out.y_hi / out.y_lo) / (kGridPoints - 1);
  for (int i = 0; i < kGridPoints; ++i) {
    out.min_value = std::min(out.min_value, f(out.y_lo * std::exp(i * step)));
  }
  const bool normalized = std::abs(out.integral - 1.0) <= 1e-6;
  const bool nonnegative = out.min_value >= -1e-10;
  out.passed = normalized && nonnegative;
  if (!normalized) out.details = "integral " + fmt(out.integral) + " differs from 1";
  if (!nonnegative) {
    if (!out.details.empty()) out.details += "; ";
    out.details += "negative density " + fmt(out.min_value);
  }
  return out;
}

namespace {

IhatDensity checked(IhatDensity d) {
  d.validated = check_density(d).passed;
  return d;
}

}  // namespace

IhatDensity make_base_dist(const BaseParams& base) { return checked(base_density(base)); }

IhatDensity product_dist(const BaseParams& b1, const BaseParams& b2) {
  return checked(product_density(b1, b2));
}

IhatDensity quotient_dist(const BaseParams& b1, const BaseParams& b2) {
  return checked(quotient_density(b1, b2));
}

double moment(const BaseParams& base, double s) {
  validate(base);
  const double u = (base.s1 - 1.0 + s) / base.sigma;
  require_in_strip(base.spec, u, "moment");
  return std::pow(base.z, (1.0 - s) / base.sigma) * phi(base) * chi_real(base.spec, u);
}

double density_moment(const IhatDensity& d, double s) {
  const double u = (s + d.r) / d.P;
  require_in_strip(d.spec, u, "density moment");
  return d.C * chi_real(d.spec, u) / (d.P * std::pow(d.Z, u));
}

bool reduce_to_h(const IhatDensity& d) { return is_h_function(d.spec); }

IhatDensity density_power_identity(const IhatDensity& d, double sigma) {
  const PowerIdentity p = apply_power_identity(d.spec, sigma);
  IhatDensity out = d;
  out.spec = p.spec;
  out.Z = std::pow(d.Z, 1.0 / sigma);
  out.P = d.P / sigma;
  out.C = d.C * p.prefactor;
  out.validated = false;
  return out;
}

IhatDensity density_shift_identity(const IhatDensity& d, double t) {
  IhatDensity out = d;
  out.spec = apply_shift_identity(d.spec, t);
  out.r = d.r - t * d.P;
  out.C = d.C * std::pow(d.Z, -t);
  out.validated = false;
  return out;
}

BaseParams gamma_base(double k) {
  if (!(k > 0.0)) throw DomainError("gamma shape must be positive");
  return {gamma_spec(), 1.0, 1.0, k};
}

BaseParams beta_base(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("beta shapes must be positive");
  return {beta_kernel_spec(b), 1.0, 1.0, a};
}

std::variant<BaseParams, IhatDensity> classical(Family family, std::span<const double> params) {
  auto expect = [&](std::size_t n, const char* name) {
    if (params.size() != n) {
      throw DomainError(std::string(name) + " takes " + std::to_string(n) + " parameter(s)");
    }
  };
  switch (family) {
    case Family::gamma:
      expect(1, "gamma");
      return gamma_base(params[0]);
    case Family::exponential:
      expect(0, "exponential");
      return gamma_base(1.0);
    case Family::beta:
      expect(2, "beta");
      return beta_base(params[0], params[1]);
    case Family::beta_prime:
      expect(2, "beta_prime");
      return quotient_dist(gamma_base(params[0]), gamma_base(params[1]));
  }
  throw DomainError("unknown family");
}

}  // namespace ihat
