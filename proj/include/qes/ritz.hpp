#pragma once

// Rayleigh-Ritz solution of the radial problem in the non-orthogonal
// Gaussian basis  phi_j(r) = r^{s+j} exp(-r^2/2),  j = 0 .. N-1.
//
// All matrix elements reduce to the moments
//   moment(s, p) = int_0^inf r^{2s+p+1} exp(-r^2) dr = Gamma(s + (p+2)/2) / 2.
//
// The Gram matrix of this basis is exponentially ill-conditioned (about
// 1e11 per ten functions), so two paths are provided:
//   * overlap_matrix / hamiltonian_matrix / generalized_eigensolve work in
//     double on an explicit (H, S) pair and are usable for small N;
//   * ReducedGaussianBasis performs the Cholesky reduction S = L L^T once per
//     s in 150-digit arithmetic and keeps the reduced operators in double.
//     Because L is triangular the reduced operators for N functions are the
//     leading N x N blocks, so a single reduction serves every basis size.
//     RitzSolver drives the convergence schedule on top of it.

#include <vector>

#include "qes/linalg.hpp"
#include "qes/model.hpp"

namespace qes {

/// int_0^inf r^{2s+p+1} e^{-r^2} dr. Requires 2s + p + 2 > 0.
double moment(double s, double p);

struct GaussianBasis {
  double s = 0.0;
  int size = 1;
  bool normalized = true;  ///< scale every function to unit self-overlap
};

/// Per-function factors 1/sqrt(S_jj) (all 1 when not normalized).
std::vector<double> basis_scales(const GaussianBasis& basis);

linalg::MatrixD overlap_matrix(const GaussianBasis& basis);
linalg::MatrixD hamiltonian_matrix(const GaussianBasis& basis, double a, double b);
/// Matrix of r^power (power = -1 or 1) in the basis.
linalg::MatrixD radial_power_matrix(const GaussianBasis& basis, int power);

struct MatrixPair {
  linalg::MatrixD H;
  linalg::MatrixD S;
};

struct Eigenpairs {
  std::vector<double> values;  ///< ascending
  linalg::MatrixD vectors;     ///< column k solves H v = values[k] S v, v^T S v = 1
};

/// H v = W S v via S = L L^T, L^{-1} H L^{-T}, Householder + implicit QL and
/// back-substitution. Returns the lowest `count` pairs. Throws
/// CholeskyBreakdown with the failing pivot if S is numerically singular.
Eigenpairs generalized_eigensolve(const MatrixPair& pair, int count);

/// Orthonormalized Gaussian basis for one value of s.
class ReducedGaussianBasis {
 public:
  static constexpr int kPrecisionDigits = 150;
  static constexpr int kMaxSupportedSize = 96;

  ReducedGaussianBasis(double s, int max_size);

  double s() const noexcept { return s_; }
  int max_size() const noexcept { return max_size_; }

  /// Reduced Hamiltonian K + a C + b R restricted to the first `size`
  /// orthonormal functions.
  linalg::MatrixD hamiltonian(double a, double b, int size) const;
  /// Reduced matrices of 1/r and r.
  const linalg::MatrixD& inverse_radius() const noexcept { return coulomb_; }
  const linalg::MatrixD& radius() const noexcept { return linear_; }

  /// Coefficients on r^{s+j} exp(-r^2/2) of the function whose reduced
  /// coordinates are `y` (y.size() <= max_size()).
  std::vector<double> monomial_coefficients(const std::vector<double>& y) const;

 private:
  double s_;
  int max_size_;
  linalg::MatrixD kinetic_;  // -(1/r) d/dr r d/dr + s^2/r^2 + r^2
  linalg::MatrixD coulomb_;
  linalg::MatrixD linear_;
  linalg::MatrixD inverse_cholesky_transposed_;  // L^{-T}, entries rounded
};

struct RitzOptions {
  std::vector<int> schedule{12, 16, 20, 24, 28, 32, 36, 40, 44, 48, 52, 56, 60, 64};
  double tol = 1e-10;
};

struct RitzSpectrum {
  DimensionlessParams params;
  int basis_size = 0;
  std::vector<double> eigenvalues;   ///< ascending, lowest `count`
  linalg::MatrixD eigenvectors;      ///< reduced-basis coordinates, one column per level
  std::vector<double> convergence;   ///< |W(N_last) - W(N_prev)| per level
  std::vector<double> inverse_radius_expectation;  ///< <1/r> per level
  std::vector<double> radius_expectation;          ///< <r> per level
  std::vector<int> schedule_used;
  std::vector<std::vector<double>> history;  ///< levels per schedule step, non-increasing
  double max_rounding_uptick = 0.0;          ///< largest raw increase absorbed as rounding
  bool converged = false;                    ///< every checked level moved by < tol
};

/// Runs the convergence schedule for the couplings (a, b) on a fixed s.
/// Immutable after construction; safe to share across threads.
class RitzSolver {
 public:
  explicit RitzSolver(double s, RitzOptions options = {});

  double s() const noexcept { return basis_.s(); }
  const RitzOptions& options() const noexcept { return options_; }
  const ReducedGaussianBasis& basis() const noexcept { return basis_; }

  /// Lowest `count` levels, growing N until every level moves by less than
  /// `tol` (options().tol when tol <= 0). Unconverged results are returned
  /// with converged == false.
  RitzSpectrum spectrum(double a, double b, int count, double tol = 0.0) const;

  /// Levels 0..nu, growing N until level `nu` alone moves by less than
  /// `tol`. Lower levels are computed but not required to converge.
  RitzSpectrum level(double a, double b, int nu, double tol = 0.0) const;

  /// Lowest `count` levels at one basis size.
  RitzSpectrum spectrum_at(double a, double b, int count, int size) const;

 private:
  RitzSpectrum run_schedule(double a, double b, int count, int first_checked, double tol) const;

  RitzOptions options_;
  ReducedGaussianBasis basis_;
};

/// One-shot convenience wrapper around RitzSolver.
RitzSpectrum converged_spectrum(const DimensionlessParams& params, int count, double tol,
                                const RitzOptions& options = {});

struct Expectations {
  double inverse_radius = 0.0;
  double radius = 0.0;
};

/// <1/r> and <r> of level `nu`, the Hellmann-Feynman slopes dW/da and dW/db.
Expectations expectation_values(const RitzSpectrum& spectrum, int nu);

}  // namespace qes
