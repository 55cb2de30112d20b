#pragma once

// CSV and SVG emission for root tables and sweeps. Numbers are written with
// 15 significant digits in the C locale so files are byte-stable.

#include <optional>
#include <string>
#include <vector>

#include "qes/frobenius.hpp"
#include "qes/sweep.hpp"

namespace qes {

std::string format_number(double x);

/// Comma-separated, LF-terminated; cells are written as given.
std::string csv_line(const std::vector<std::string>& cells);

/// i,root,W,nodes for one truncation family.
std::string roots_csv(const std::vector<TruncationSolution>& family);

/// grid_value, W_0..W_k, then mirror_W_0..mirror_W_k when present, then converged.
std::string sweep_csv(const SweepTable& table);

/// n,i,root,W,nodes for the overlay points.
std::string overlay_csv(const std::vector<TruncationSolution>& overlay);

struct FigureStyle {
  std::string title;
  std::optional<double> w_min, w_max;  ///< vertical window; derived from the overlay when unset
  int locus_order = -1;                ///< truncation order of the drawn locus, -1 for none
};

/// 800x600 SVG: blue solid direct curves, green dashed mirror curves, red
/// truncation points, and the truncation locus of order `locus_order`
/// (a horizontal line when the a coupling is varied, the parabola
/// 2(n+s+1) - x^2/4 when b is varied).
std::string sweep_svg(const SweepTable& table, const FigureStyle& style);

/// Tick positions covering [lo, hi] with spacing 1, 2 or 5 times a power of ten.
std::vector<double> nice_ticks(double lo, double hi, int target = 8);

}  // namespace qes
