#include "qes/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "qes/error.hpp"

namespace qes::quadrature {

Rule gauss_legendre(int points) {
  if (points < 1) throw InvalidArgument("gauss_legendre: need at least one point");
  Rule rule;
  rule.nodes.resize(points);
  rule.weights.resize(points);
  const int n = points;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

const Rule& gauss_legendre_20() {
  static const Rule rule = gauss_legendre(20);
  return rule;
}

std::vector<double> graded_breaks(double upper, double width) {
  if (!(upper > 0.5) || !(width > 0.0))
    throw InvalidArgument("graded_breaks: need upper > 1/2 and positive width");
  std::vector<double> breaks{0.0};
  for (int k = 24; k >= 1; --k) breaks.push_back(std::ldexp(1.0, -k));
  const int panels = static_cast<int>(std::ceil((upper - 0.5) / width));
  const double h = (upper - 0.5) / panels;
  for (int k = 1; k <= panels; ++k) breaks.push_back(0.5 + k * h);
  return breaks;
}

std::vector<double> bisect_panels(std::span<const double> breaks) {
  std::vector<double> out;
  out.reserve(2 * breaks.size());
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    out.push_back(breaks[k]);
    out.push_back(0.5 * (breaks[k] + breaks[k + 1]));
  }
  if (!breaks.empty()) out.push_back(breaks.back());
  return out;
}

}  // namespace qes::quadrature
