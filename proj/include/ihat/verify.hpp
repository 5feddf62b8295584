#pragma once

// Sampling from Ihat densities, KS checks and quadrature oracles for the
// product and quotient densities.

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

// Boost 1.74's pchip calls unqualified isnan; the C header supplies it.
#include <math.h>

#include <boost/math/interpolators/pchip.hpp>

#include "ihat/dist.hpp"

namespace ihat {

// Philox4x64-10 (Salmon et al., Random123): a keyed bijection on 256-bit
// counters. Draw i of stream k under seed s is lane i % 4 of the block for
// counter {i / 4, k, 0, 0} and key {s, 0}, so any chunk of a batch can be
// generated independently of the others.
using PhiloxCounter = std::array<std::uint64_t, 4>;
using PhiloxKey = std::array<std::uint64_t, 2>;

PhiloxCounter philox4x64(PhiloxCounter ctr, PhiloxKey key);

// Uniform on (0, 1): the top 53 bits, centred in their cell.
inline double to_unit(std::uint64_t x) { return (static_cast<double>(x >> 11) + 0.5) * 0x1p-53; }

// n uniforms of one stream, starting at draw `first`.
std::vector<double> uniforms(std::uint64_t seed, std::uint64_t stream, std::size_t n,
                             std::size_t first = 0);

// Tabulated CDF on a log grid [y_lo, y_hi]; monotone cubic interpolation in
// u = log y both ways.
class CdfTable {
 public:
  CdfTable(std::vector<double> u, std::vector<double> F);

  double cdf(double y) const;
  double quantile(double p) const;
  double y_lo() const;
  double y_hi() const;
  const std::vector<double>& log_grid() const { return u_; }
  const std::vector<double>& values() const { return F_; }

 private:
  std::vector<double> u_;
  std::vector<double> F_;
  double p_lo_ = 0.0;  // range of the strictly increasing part of F
  double p_hi_ = 1.0;
  boost::math::interpolators::pchip<std::vector<double>> forward_;
  boost::math::interpolators::pchip<std::vector<double>> inverse_;
};

// Grid ends where less than 1e-10 of the mass lies beyond each; Simpson's
// rule per cell in log y, with adaptive quadrature in cells where Simpson and
// the trapezoid rule disagree (kinks, support edges). The table is nondecreasing and divided by its last
// value so it ends at exactly 1. ValidationError for an unvalidated density,
// ConvergenceError when the raw table ends more than 1e-6 away from 1.
CdfTable tabulate_cdf(const IhatDensity& d, int grid_size = 2048);

struct SampleBatch {
  std::vector<double> values;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  bool sorted = false;
};

// Inverse-CDF draws through tabulate_cdf; stream selects an independent
// sequence under the same seed.
SampleBatch sample(const IhatDensity& d, std::size_t n, std::uint64_t seed,
                   std::uint64_t stream = 0);
SampleBatch sample(const CdfTable& table, std::size_t n, std::uint64_t seed,
                   std::uint64_t stream = 0);

enum class ReportKind { pointwise, ks, moments };

struct VerificationReport {
  ReportKind kind = ReportKind::pointwise;
  double max_rel_err = 0.0;
  double ks_stat = 0.0;
  double threshold = 0.0;
  bool passed = false;  // statistic() <= threshold
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::string details;

  double statistic() const { return kind == ReportKind::ks ? ks_stat : max_rel_err; }
};

const char* to_string(ReportKind kind);

// c with P(sup|B(t)| > c) = alpha for the Brownian bridge (the limiting
// Kolmogorov law); c(0.01) = 1.62762...
double kolmogorov_critical(double alpha);

// Two-sided one-sample KS statistic; threshold c(0.01)/sqrt(n).
VerificationReport ks_compare(const SampleBatch& batch, const CdfTable& table);
VerificationReport ks_compare(const SampleBatch& batch, const IhatDensity& d);

// Oracles that use only the pdfs of the two factors:
//   product:  integral f1(x) f2(y/x) dx/x
//   quotient: integral f1(y x) f2(x) x dx
// ValidationError unless both densities are validated.
double convolution_oracle_product(const IhatDensity& f1, const IhatDensity& f2, double y);
double quotient_oracle(const IhatDensity& f1, const IhatDensity& f2, double y);
double convolution_oracle_product(const BaseParams& b1, const BaseParams& b2, double y);
double quotient_oracle(const BaseParams& b1, const BaseParams& b2, double y);

// Largest relative difference between two functions over ys.
VerificationReport compare_pointwise(const std::function<double(double)>& closed,
                                     const std::function<double(double)>& oracle,
                                     std::span<const double> ys, double threshold);

// n draws from each factor (streams 0 and 1), multiplied or divided pairwise
// and tested against the constructed density.
VerificationReport mc_product_check(const IhatDensity& f1, const IhatDensity& f2,
                                    const IhatDensity& product, std::size_t n,
                                    std::uint64_t seed);
VerificationReport mc_quotient_check(const IhatDensity& f1, const IhatDensity& f2,
                                     const IhatDensity& quotient, std::size_t n,
                                     std::uint64_t seed);
// Same with the tables already built (repeated seeds reuse them).
VerificationReport mc_product_check(const CdfTable& f1, const CdfTable& f2,
                                    const CdfTable& product, std::size_t n, std::uint64_t seed);
VerificationReport mc_quotient_check(const CdfTable& f1, const CdfTable& f2,
                                     const CdfTable& quotient, std::size_t n,
                                     std::uint64_t seed);

// n log-spaced points from a to b inclusive.
std::vector<double> log_grid(double a, double b, int n);

}  // namespace ihat
