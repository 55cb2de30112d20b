#include "qes/sweep.hpp"

#include <cmath>
#include <exception>

#include <omp.h>

#include "qes/error.hpp"

namespace qes {

namespace {

SweepRow evaluate_row(const RitzSolver& solver, const SweepSpec& spec, double x) {
  SweepRow row;
  row.x = x;
  const bool vary_a = spec.mode == SolveFor::a;
  const double a = vary_a ? x : spec.fixed;
  const double b = vary_a ? spec.fixed : x;
  const auto direct = solver.spectrum(a, b, spec.levels, spec.tol);
  row.W = direct.eigenvalues;
  row.slope = vary_a ? direct.inverse_radius_expectation : direct.radius_expectation;
  row.converged = direct.converged;
  row.basis_size = direct.basis_size;
  if (spec.mirror) {
    const auto mirror = solver.spectrum(-a, -b, spec.levels, spec.tol);
    row.mirror_W = mirror.eigenvalues;
    row.mirror_slope = vary_a ? mirror.inverse_radius_expectation : mirror.radius_expectation;
    row.mirror_converged = mirror.converged;
  } else {
    row.mirror_converged = true;
  }
  return row;
}

SweepTable empty_table(const RitzSolver& solver, const SweepSpec& spec) {
  validate_grid(spec.grid);
  if (spec.levels < 1) throw InvalidArgument("sweep needs at least one level");
  SweepTable table;
  table.mode = spec.mode;
  table.s = solver.s();
  table.fixed = spec.fixed;
  table.rows.resize(spec.grid.size());
  return table;
}

}  // namespace

bool SweepTable::all_converged() const {
  for (const auto& row : rows)
    if (!row.converged || !row.mirror_converged) return false;
  return true;
}

std::vector<double> linear_grid(double lo, double hi, int points) {
  if (points < 2 || !(hi > lo)) throw InvalidArgument("grid needs hi > lo and >= 2 points");
  std::vector<double> grid(points);
  for (int k = 0; k < points; ++k) grid[k] = lo + (hi - lo) * k / (points - 1);
  grid.back() = hi;
  return grid;
}

void validate_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw InvalidArgument("empty grid");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!std::isfinite(grid[k])) throw InvalidArgument("grid values must be finite");
    if (k > 0 && !(grid[k] > grid[k - 1]))
      throw InvalidArgument("grid must be strictly increasing");
  }
}

SweepTable sweep_serial(const RitzSolver& solver, const SweepSpec& spec) {
  auto table = empty_table(solver, spec);
  for (std::size_t k = 0; k < spec.grid.size(); ++k)
    table.rows[k] = evaluate_row(solver, spec, spec.grid[k]);
  return table;
}

SweepTable sweep_parallel(const RitzSolver& solver, const SweepSpec& spec) {
  auto table = empty_table(solver, spec);
  const auto count = static_cast<long long>(spec.grid.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (long long k = 0; k < count; ++k) {
    try {
      table.rows[k] = evaluate_row(solver, spec, spec.grid[k]);
    } catch (...) {
#pragma omp critical(qes_sweep_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return table;
}

std::vector<TruncationSolution> truncation_overlay(int n_max, double s, SolveFor mode,
                                                   double fixed) {
  if (n_max < 0) throw InvalidArgument("n_max must be non-negative");
  std::vector<TruncationSolution> out;
  for (int n = 0; n <= n_max; ++n) {
    auto family = truncation_roots(n, s, mode, fixed);
    out.insert(out.end(), family.begin(), family.end());
  }
  return out;
}

}  // namespace qes
