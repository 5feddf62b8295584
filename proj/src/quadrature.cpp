#include "ihat/quadrature.hpp"

#include <numbers>

namespace ihat::quad {
namespace {

GaussLegendre build() {
  GaussLegendre gl{};
  constexpr int n = kOrder;
  for (int i = 0; i < n / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      dp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    gl.nodes[i] = -x;
    gl.nodes[n - 1 - i] = x;
    gl.weights[i] = w;
    gl.weights[n - 1 - i] = w;
  }
  return gl;
}

}  // namespace

const GaussLegendre& gauss_legendre() {
  static const GaussLegendre rule = build();
  return rule;
}

}  // namespace ihat::quad
