#pragma once

// Executable checks tying the truncation solutions to the variational
// spectrum: intersections, mirror intersections, the parabola locus, the
// Hellmann-Feynman slopes and continuity of the curves.

#include <vector>

#include "qes/frobenius.hpp"
#include "qes/model.hpp"
#include "qes/ritz.hpp"
#include "qes/sweep.hpp"

namespace qes {

struct IntersectionReport {
  int n = 0;
  int i = 1;
  double s = 0.0;
  SolveFor mode = SolveFor::a;
  double fixed = 0.0;
  double root = 0.0;
  double W_truncation = 0.0;
  int level = 0;         ///< i - 1, evaluated at the root
  int mirror_level = 0;  ///< n + 1 - i, evaluated at the negated couplings
  double W_variational = 0.0;
  double mirror_W_variational = 0.0;
  double abs_deviation = 0.0;
  double mirror_abs_deviation = 0.0;
  double tolerance = 0.0;
  int basis_size = 0;
  int mirror_basis_size = 0;
  bool converged = false;  ///< both Ritz levels converged

  bool passed() const;
};

/// 1e-8 for the a-solved family, 1e-6 for the b-solved family.
double intersection_tolerance(SolveFor mode);

std::vector<IntersectionReport> check_intersections(const RitzSolver& solver, int n, SolveFor mode,
                                                    double fixed);

/// max_i |W_i - [2(n+s+1) - b_i^2/4]| over the b-solved family at a = a_fixed.
double check_parabola(int n, double s, double a_fixed = 0.0);

struct HellmannFeynmanReport {
  DimensionlessParams params;
  int nu = 0;
  double delta = 0.0;
  int basis_size = 0;
  double fd_a = 0.0;   ///< central difference in a
  double exp_a = 0.0;  ///< <1/r>
  double fd_b = 0.0;   ///< central difference in b
  double exp_b = 0.0;  ///< <r>
  bool converged = false;

  double relative_deviation_a() const;
  double relative_deviation_b() const;
  /// converged, all four quantities positive, both deviations <= rel_tol.
  bool passed(double rel_tol = 1e-4) const;
};

/// The five spectra are evaluated at one common basis size (the largest
/// needed to converge level nu at any of them), where the relations hold
/// exactly for the Ritz values.
HellmannFeynmanReport check_hellmann_feynman(const RitzSolver& solver,
                                             const DimensionlessParams& params, int nu,
                                             double delta = 1e-3);

struct ContinuityReport {
  SolveFor mode = SolveFor::a;
  double fixed = 0.0;
  int nu_max = 0;
  double max_ratio = 0.0;           ///< largest |secant| / slope bound
  double max_secant = 0.0;          ///< largest |W(x_{k+1}) - W(x_k)| / h
  double max_secant_deviation = 0.0;  ///< largest |secant - slope at x_k|
  int worst_level = 0;
  int worst_interval = 0;
  bool all_converged = false;

  /// No secant exceeds twice its bound and every spectrum converged.
  bool passed() const;
};

/// Levels 0..nu_max over a strictly increasing grid. The bound on each
/// interval is the larger Hellmann-Feynman slope at its ends.
ContinuityReport check_continuity(const RitzSolver& solver, SolveFor mode, double fixed,
                                  const std::vector<double>& grid, int nu_max,
                                  double tol = 0.0);

/// The same analysis on an existing sweep (levels 0..nu_max must be present).
ContinuityReport continuity_of(const SweepTable& table, int nu_max);

struct FolkloreDemo {
  int n = 0;
  int i = 1;
  double a_root = 0.0;
  double omega_folklore = 0.0;
  double energy_folklore = 0.0;
  std::vector<double> omega;                ///< ascending
  std::vector<std::vector<double>> energy;  ///< levels 0..nu_max per omega
  int level = 0;                            ///< i - 1
  double energy_at_folklore = 0.0;          ///< true level i-1 at omega_folklore
  ContinuityReport continuity;

  bool passed() const;
};

/// Sweeps omega over [omega_nl (1 - spread), omega_nl (1 + spread)] with the
/// other physical parameters of `base`, where omega_nl is the frequency
/// singled out by truncation root (n, i). Requires V_1 = 0 and `points` odd
/// so that omega_nl is a grid point.
FolkloreDemo folklore_demo(const PhysicalParams& base, int n, int i, double spread = 0.2,
                           int points = 41, int nu_max = 3, RitzOptions options = {});

}  // namespace qes
