#pragma once

// Eigenvalue curves over a one-parameter grid. sweep_parallel distributes
// grid points over OpenMP threads (OMP_NUM_THREADS bounds the pool);
// sweep_serial is the reference loop. Both produce identical tables.

#include <vector>

#include "qes/frobenius.hpp"
#include "qes/ritz.hpp"

namespace qes {

struct SweepSpec {
  SolveFor mode = SolveFor::a;  ///< which coupling the grid varies
  double fixed = 0.0;           ///< value of the other coupling
  std::vector<double> grid;     ///< strictly increasing
  int levels = 1;               ///< levels 0 .. levels-1
  double tol = 1e-10;
  bool mirror = true;  ///< also evaluate at the negated couplings (-x, -fixed)
};

struct SweepRow {
  double x = 0.0;
  std::vector<double> W;         ///< ascending
  std::vector<double> slope;     ///< dW/dx = <1/r> (a) or <r> (b) per level
  std::vector<double> mirror_W;  ///< levels at (-x, -fixed); empty without mirror
  std::vector<double> mirror_slope;
  bool converged = false;
  bool mirror_converged = false;
  int basis_size = 0;
};

struct SweepTable {
  SolveFor mode = SolveFor::a;
  double s = 0.0;
  double fixed = 0.0;
  std::vector<SweepRow> rows;
  std::vector<TruncationSolution> overlay;  ///< truncation points drawn on the curves

  bool all_converged() const;
};

/// Uniform grid of `points` values covering [lo, hi].
std::vector<double> linear_grid(double lo, double hi, int points);

/// Throws InvalidArgument on an empty, non-finite or non-increasing grid.
void validate_grid(const std::vector<double>& grid);

SweepTable sweep_serial(const RitzSolver& solver, const SweepSpec& spec);
SweepTable sweep_parallel(const RitzSolver& solver, const SweepSpec& spec);

/// Truncation solutions of orders 0..n_max in `mode` at fixed coupling `fixed`.
std::vector<TruncationSolution> truncation_overlay(int n_max, double s, SolveFor mode,
                                                   double fixed);

}  // namespace qes
