#include "ihat/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <boost/math/tools/roots.hpp>

#include "ihat/errors.hpp"
#include "ihat/quadrature.hpp"

namespace ihat {
namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

void require_validated(const IhatDensity& d, const char* what) {
  if (!d.validated) throw ValidationError(std::string(what) + ": density is not validated");
}

constexpr std::uint64_t kM0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kM1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kW0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kW1 = 0xBB67AE8584CAA73BULL;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  hi = static_cast<std::uint64_t>(p >> 64);
  lo = static_cast<std::uint64_t>(p);
}

constexpr double kTableTail = 1e-10;
constexpr double kTableEndTol = 1e-6;
constexpr double kCellGap = 1e-7;
constexpr double kCellTol = 1e-12;
constexpr double kOracleRel = 1e-7;

}  // namespace

PhiloxCounter philox4x64(PhiloxCounter ctr, PhiloxKey key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kW0;
      key[1] += kW1;
    }
    std::uint64_t hi0, lo0, hi1, lo1;
    mulhilo(kM0, ctr[0], hi0, lo0);
    mulhilo(kM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

std::vector<double> uniforms(std::uint64_t seed, std::uint64_t stream, std::size_t n,
                             std::size_t first) {
  std::vector<double> out(n);
  PhiloxCounter block{};
  std::uint64_t cached = ~std::uint64_t{0};
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = first + i;
    const std::uint64_t b = k / 4;
    if (b != cached) {
      block = philox4x64({b, stream, 0, 0}, {seed, 0});
      cached = b;
    }
    out[i] = to_unit(block[k % 4]);
  }
  return out;
}

CdfTable::CdfTable(std::vector<double> u, std::vector<double> F)
    : u_(std::move(u)),
      F_(std::move(F)),
      forward_(std::vector<double>(u_), std::vector<double>(F_)),
      inverse_([&] {
        // Flat stretches (no mass) have no inverse; keep the first point of
        // each run of equal values.
        std::vector<double> p, v;
        for (std::size_t i = 0; i < F_.size(); ++i) {
          if (p.empty() || F_[i] > p.back()) {
            p.push_back(F_[i]);
            v.push_back(u_[i]);
          }
        }
        if (p.size() < 4) throw ValidationError("CDF table has fewer than four distinct values");
        p_lo_ = p.front();
        p_hi_ = p.back();
        return boost::math::interpolators::pchip<std::vector<double>>(std::move(p), std::move(v));
      }()) {}

double CdfTable::cdf(double y) const {
  if (!(y > 0.0)) return 0.0;
  const double u = std::log(y);
  if (u <= u_.front()) return 0.0;
  if (u >= u_.back()) return 1.0;
  return std::clamp(forward_(u), 0.0, 1.0);
}

double CdfTable::quantile(double p) const {
  return std::exp(inverse_(std::clamp(p, p_lo_, p_hi_)));
}

double CdfTable::y_lo() const { return std::exp(u_.front()); }
double CdfTable::y_hi() const { return std::exp(u_.back()); }

CdfTable tabulate_cdf(const IhatDensity& d, int grid_size) {
  require_validated(d, "tabulate_cdf");
  if (grid_size < 4) throw DomainError("tabulate_cdf needs at least 4 grid points");
  auto f = [&](double y) { return pdf(d, y); };
  const double y0 = std::pow(d.Z, -1.0 / d.P);
  const quad::Cutoff lo = quad::lower_cutoff(f, 0.5 * y0, kTableTail);
  const quad::Cutoff hi = quad::upper_cutoff(f, 2.0 * y0, kTableTail);

  const int n = grid_size;
  const double ulo = std::log(lo.x);
  const double h = (std::log(hi.x) - ulo) / (n - 1);
  std::vector<double> u(n), F(n);
  auto g = [&](double uu) {
    const double y = std::exp(uu);
    return f(y) * y;
  };
  double left = g(ulo);
  u[0] = ulo;
  F[0] = std::max(lo.tail, 0.0);
  for (int i = 1; i < n; ++i) {
    u[i] = ulo + i * h;
    const double right = g(u[i]);
    double cell = h / 6.0 * (left + 4.0 * g(u[i] - 0.5 * h) + right);
    // Simpson and the trapezoid share their nodes; a large gap marks a kink
    // or edge inside the cell, which gets adaptive quadrature instead.
    if (std::abs(cell - 0.5 * h * (left + right)) > kCellGap) {
      cell = quad::adaptive(g, u[i - 1], u[i], kCellTol).value;
    }
    F[i] = F[i - 1] + std::max(cell, 0.0);
    left = right;
  }
  const double total = F.back() + std::max(hi.tail, 0.0);
  if (std::abs(total - 1.0) > kTableEndTol) {
    throw ConvergenceError("CDF table ends at " + fmt(total) + ", not within 1e-6 of 1");
  }
  for (double& v : F) v /= F.back();
  return CdfTable(std::move(u), std::move(F));
}

SampleBatch sample(const CdfTable& table, std::size_t n, std::uint64_t seed,
                   std::uint64_t stream) {
  SampleBatch out;
  out.seed = seed;
  out.n = n;
  out.values = uniforms(seed, stream, n);
  for (double& v : out.values) v = table.quantile(v);
  return out;
}

SampleBatch sample(const IhatDensity& d, std::size_t n, std::uint64_t seed,
                   std::uint64_t stream) {
  require_validated(d, "sample");
  if (n == 0) return SampleBatch{{}, seed, 0, true};
  return sample(tabulate_cdf(d), n, seed, stream);
}

const char* to_string(ReportKind kind) {
  switch (kind) {
    case ReportKind::pointwise:
      return "pointwise";
    case ReportKind::ks:
      return "ks";
    case ReportKind::moments:
      return "moments";
  }
  return "?";
}

double kolmogorov_critical(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  // Tail 2 sum (-1)^{k-1} exp(-2 k^2 c^2); the terms fall off so fast that
  // 100 of them are exact to rounding for c > 0.1.
  auto excess = [alpha](double c) {
    double s = 0.0;
    for (int k = 1; k <= 100; ++k) {
      s += ((k % 2) ? 2.0 : -2.0) * std::exp(-2.0 * k * k * c * c);
    }
    return s - alpha;
  };
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(
      excess, 0.2, 5.0, boost::math::tools::eps_tolerance<double>(52), iters);
  return 0.5 * (r.first + r.second);
}

VerificationReport ks_compare(const SampleBatch& batch, const CdfTable& table) {
  if (batch.values.empty()) throw DomainError("ks_compare needs a nonempty batch");
  std::vector<double> v = batch.values;
  if (!batch.sorted) std::sort(v.begin(), v.end());
  const double n = static_cast<double>(v.size());
  double d = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double F = table.cdf(v[i]);
    d = std::max({d, (i + 1) / n - F, F - i / n});
  }
  VerificationReport r;
  r.kind = ReportKind::ks;
  r.ks_stat = d;
  r.threshold = kolmogorov_critical(0.01) / std::sqrt(n);
  r.passed = d <= r.threshold;
  r.seed = batch.seed;
  r.n = v.size();
  r.details = "D = " + fmt(d) + ", threshold " + fmt(r.threshold);
  return r;
}

VerificationReport ks_compare(const SampleBatch& batch, const IhatDensity& d) {
  return ks_compare(batch, tabulate_cdf(d));
}

namespace {

// Range hint for an oracle integrand: the scale points of both factors.
quad::Result oracle_integral(const std::function<double(double)>& h, double x1, double x2) {
  return quad::positive_axis(h, 0.5 * std::min(x1, x2), 2.0 * std::max(x1, x2), kOracleRel);
}

double scale_point(const IhatDensity& d) { return std::pow(d.Z, -1.0 / d.P); }

}  // namespace

double convolution_oracle_product(const IhatDensity& f1, const IhatDensity& f2, double y) {
  require_validated(f1, "product oracle");
  require_validated(f2, "product oracle");
  if (!(y > 0.0)) throw DomainError("product oracle needs y > 0");
  auto h = [&](double x) {
    const double a = pdf(f1, x);
    if (a == 0.0) return 0.0;
    return a * pdf(f2, y / x) / x;
  };
  return oracle_integral(h, scale_point(f1), y / scale_point(f2)).value;
}

double quotient_oracle(const IhatDensity& f1, const IhatDensity& f2, double y) {
  require_validated(f1, "quotient oracle");
  require_validated(f2, "quotient oracle");
  if (!(y > 0.0)) throw DomainError("quotient oracle needs y > 0");
  auto h = [&](double x) {
    const double b = pdf(f2, x);
    if (b == 0.0) return 0.0;
    return pdf(f1, y * x) * b * x;
  };
  return oracle_integral(h, scale_point(f2), scale_point(f1) / y).value;
}

double convolution_oracle_product(const BaseParams& b1, const BaseParams& b2, double y) {
  return convolution_oracle_product(make_base_dist(b1), make_base_dist(b2), y);
}

double quotient_oracle(const BaseParams& b1, const BaseParams& b2, double y) {
  return quotient_oracle(make_base_dist(b1), make_base_dist(b2), y);
}

VerificationReport compare_pointwise(const std::function<double(double)>& closed,
                                     const std::function<double(double)>& oracle,
                                     std::span<const double> ys, double threshold) {
  VerificationReport r;
  r.kind = ReportKind::pointwise;
  r.threshold = threshold;
  r.n = ys.size();
  double worst_y = 0.0;
  for (double y : ys) {
    const double a = closed(y);
    const double b = oracle(y);
    const double e = std::abs(a - b) / std::abs(b);
    if (!(e <= r.max_rel_err)) {
      r.max_rel_err = std::isnan(e) ? INFINITY : e;
      worst_y = y;
    }
  }
  r.passed = r.max_rel_err <= threshold;
  r.details = "max relative error " + fmt(r.max_rel_err) + " at y = " + fmt(worst_y);
  return r;
}

namespace {

VerificationReport mc_check(const CdfTable& t1, const CdfTable& t2, const CdfTable& target,
                            std::size_t n, std::uint64_t seed, bool quotient) {
  SampleBatch x1 = sample(t1, n, seed, 0);
  const SampleBatch x2 = sample(t2, n, seed, 1);
  for (std::size_t i = 0; i < n; ++i) {
    x1.values[i] = quotient ? x1.values[i] / x2.values[i] : x1.values[i] * x2.values[i];
  }
  return ks_compare(x1, target);
}

}  // namespace

VerificationReport mc_product_check(const CdfTable& f1, const CdfTable& f2,
                                    const CdfTable& product, std::size_t n, std::uint64_t seed) {
  return mc_check(f1, f2, product, n, seed, false);
}

VerificationReport mc_quotient_check(const CdfTable& f1, const CdfTable& f2,
                                     const CdfTable& quotient, std::size_t n,
                                     std::uint64_t seed) {
  return mc_check(f1, f2, quotient, n, seed, true);
}

VerificationReport mc_product_check(const IhatDensity& f1, const IhatDensity& f2,
                                    const IhatDensity& product, std::size_t n,
                                    std::uint64_t seed) {
  return mc_check(tabulate_cdf(f1), tabulate_cdf(f2), tabulate_cdf(product), n, seed, false);
}

VerificationReport mc_quotient_check(const IhatDensity& f1, const IhatDensity& f2,
                                     const IhatDensity& quotient, std::size_t n,
                                     std::uint64_t seed) {
  return mc_check(tabulate_cdf(f1), tabulate_cdf(f2), tabulate_cdf(quotient), n, seed, true);
}

std::vector<double> log_grid(double a, double b, int n) {
  if (!(a > 0.0) || !(b >= a) || n < 1) throw DomainError("log_grid needs 0 < a <= b, n >= 1");
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = a;
    return out;
  }
  const double la = std::log(a);
  const double step = (std::log(b) - la) / (n - 1);
  for (int i = 0; i < n; ++i) out[i] = std::exp(la + i * step);
  out.front() = a;
  out.back() = b;
  return out;
}

}  // namespace ihat
