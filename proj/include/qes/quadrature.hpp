#pragma once

#include <span>
#include <vector>

namespace qes::quadrature {

/// Gauss-Legendre rule on [-1, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

Rule gauss_legendre(int points);

/// The 20-point rule, computed once.
const Rule& gauss_legendre_20();

/// Sum of the rule mapped onto each [breaks[k], breaks[k+1]].
template <class F>
double integrate_panels(F&& f, std::span<const double> breaks, const Rule& rule) {
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double lo = breaks[k];
    const double hi = breaks[k + 1];
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    double panel = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q)
      panel += rule.weights[q] * f(mid + half * rule.nodes[q]);
    total += half * panel;
  }
  return total;
}

/// Panels on (0, upper]: geometric towards the origin below 1/2, uniform of
/// width `width` above it.
std::vector<double> graded_breaks(double upper, double width);

/// Every panel split in two.
std::vector<double> bisect_panels(std::span<const double> breaks);

}  // namespace qes::quadrature
