#include "qes/ritz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "qes/error.hpp"

namespace qes {

namespace {

using Real = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<ReducedGaussianBasis::kPrecisionDigits>,
    boost::multiprecision::et_off>;

// Moments m(p) = Gamma(s + (p+2)/2) / 2 for p = -1 .. p_max, stored at p + 1,
// generated upward from Gamma(s + 1/2) and Gamma(s + 1).
template <class T>
std::vector<T> moment_table(const T& s, int p_max) {
  std::vector<T> m(p_max + 2);
  m[0] = boost::math::tgamma(s + T(1) / 2) / 2;
  if (p_max >= 0) m[1] = boost::math::tgamma(s + T(1)) / 2;
  for (int p = 1; p <= p_max; ++p) m[p + 1] = (s + T(p) / 2) * m[p - 1];
  return m;
}

// Unscaled operator matrices in the monomial-Gaussian basis, from a moment
// table indexed at p + 1.
template <class T>
struct OperatorMatrices {
  linalg::Matrix<T> overlap, kinetic, coulomb, linear;
};

template <class T>
OperatorMatrices<T> assemble(const T& s, int n, const std::vector<T>& m) {
  auto mom = [&](int p) -> const T& { return m[p + 1]; };
  OperatorMatrices<T> ops{linalg::Matrix<T>(n, n), linalg::Matrix<T>(n, n),
                          linalg::Matrix<T>(n, n), linalg::Matrix<T>(n, n)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ops.overlap(i, j) = mom(i + j);
      // (-(1/r) d/dr r d/dr + s^2/r^2 + r^2) phi_j
      //   = [-j(2s+j) r^{s+j-2} + (2s+2j+2) r^{s+j}] e^{-r^2/2};
      // the first term vanishes for j = 0 and is skipped so that the
      // divergent moment at p = -2 is never touched.
      T k = (2 * s + T(2 * j + 2)) * mom(i + j);
      if (j > 0) k -= T(j) * (2 * s + T(j)) * mom(i + j - 2);
      ops.kinetic(i, j) = k;
      ops.coulomb(i, j) = mom(i + j - 1);
      ops.linear(i, j) = mom(i + j + 1);
    }
  ops.kinetic = linalg::symmetrized(ops.kinetic);
  return ops;
}

linalg::MatrixD scaled(const linalg::MatrixD& m, const std::vector<double>& d) {
  linalg::MatrixD out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = d[i] * m(i, j) * d[j];
  return out;
}

OperatorMatrices<double> double_operators(const GaussianBasis& basis) {
  if (!(basis.s >= 0.0)) throw InvalidArgument("basis s must be non-negative");
  if (basis.size < 1) throw InvalidArgument("basis size must be at least 1");
  const auto m = moment_table<double>(basis.s, 2 * basis.size);
  for (double v : m)
    if (!std::isfinite(v)) throw NumericalError("basis moments overflow double range");
  return assemble<double>(basis.s, basis.size, m);
}

}  // namespace

double moment(double s, double p) {
  const double x = s + 0.5 * (p + 2.0);
  if (!(x > 0.0))
    throw InvalidArgument("moment diverges: need 2s + p + 2 > 0 (s=" + std::to_string(s) +
                          ", p=" + std::to_string(p) + ")");
  return 0.5 * std::tgamma(x);
}

std::vector<double> basis_scales(const GaussianBasis& basis) {
  std::vector<double> d(basis.size, 1.0);
  if (basis.normalized)
    for (int j = 0; j < basis.size; ++j) d[j] = 1.0 / std::sqrt(moment(basis.s, 2.0 * j));
  return d;
}

linalg::MatrixD overlap_matrix(const GaussianBasis& basis) {
  return scaled(double_operators(basis).overlap, basis_scales(basis));
}

linalg::MatrixD hamiltonian_matrix(const GaussianBasis& basis, double a, double b) {
  const auto ops = double_operators(basis);
  linalg::MatrixD h(basis.size, basis.size);
  for (int i = 0; i < basis.size; ++i)
    for (int j = 0; j < basis.size; ++j)
      h(i, j) = ops.kinetic(i, j) + a * ops.coulomb(i, j) + b * ops.linear(i, j);
  return scaled(linalg::symmetrized(h), basis_scales(basis));
}

linalg::MatrixD radial_power_matrix(const GaussianBasis& basis, int power) {
  const auto ops = double_operators(basis);
  if (power == -1) return scaled(ops.coulomb, basis_scales(basis));
  if (power == 1) return scaled(ops.linear, basis_scales(basis));
  throw InvalidArgument("radial_power_matrix: power must be -1 or 1");
}

Eigenpairs generalized_eigensolve(const MatrixPair& pair, int count) {
  const int n = pair.S.rows();
  if (pair.H.rows() != n || pair.H.cols() != n || pair.S.cols() != n)
    throw InvalidArgument("generalized_eigensolve: shape mismatch");
  if (count < 1 || count > n) throw InvalidArgument("generalized_eigensolve: bad count");

  const auto l = linalg::cholesky(pair.S, 64 * std::numeric_limits<double>::epsilon());
  const auto linv = linalg::lower_inverse(l);
  const auto reduced = linalg::lower_congruence(linv, linalg::symmetrized(pair.H));
  const auto eig = linalg::symmetric_eigen(reduced, true);

  Eigenpairs out;
  out.values.assign(eig.values.begin(), eig.values.begin() + count);
  out.vectors = linalg::MatrixD(n, count);
  for (int k = 0; k < count; ++k)
    for (int i = 0; i < n; ++i) {
      double v = 0.0;
      for (int r = i; r < n; ++r) v += linv(r, i) * eig.vectors(r, k);
      out.vectors(i, k) = v;
    }
  return out;
}

ReducedGaussianBasis::ReducedGaussianBasis(double s, int max_size) : s_(s), max_size_(max_size) {
  if (!(s >= 0.0)) throw InvalidArgument("s must be non-negative");
  if (max_size < 1 || max_size > kMaxSupportedSize)
    throw InvalidArgument("basis size must be in 1.." + std::to_string(kMaxSupportedSize));

  const Real sr(s);
  const auto m = moment_table<Real>(sr, 2 * max_size);
  auto ops = assemble<Real>(sr, max_size, m);

  // Pivots below this fraction of the diagonal would leave fewer than ~30
  // significant digits; the basis is capped there.
  const Real floor = boost::multiprecision::pow(Real(10), -(kPrecisionDigits - 30));
  linalg::Matrix<Real> l;
  try {
    l = linalg::cholesky(ops.overlap, floor);
  } catch (const CholeskyBreakdown& e) {
    if (e.pivot() == 0) throw;
    max_size_ = e.pivot();
    ops.overlap = ops.overlap.leading(max_size_);
    ops.kinetic = ops.kinetic.leading(max_size_);
    ops.coulomb = ops.coulomb.leading(max_size_);
    ops.linear = ops.linear.leading(max_size_);
    l = linalg::cholesky(ops.overlap, floor);
  }
  const auto linv = linalg::lower_inverse(l);
  kinetic_ = linalg::lower_congruence(linv, ops.kinetic).cast<double>();
  coulomb_ = linalg::lower_congruence(linv, ops.coulomb).cast<double>();
  linear_ = linalg::lower_congruence(linv, ops.linear).cast<double>();
  inverse_cholesky_transposed_ = linv.transposed().cast<double>();
}

linalg::MatrixD ReducedGaussianBasis::hamiltonian(double a, double b, int size) const {
  if (size < 1 || size > max_size_) throw InvalidArgument("reduced basis size out of range");
  linalg::MatrixD h(size, size);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j)
      h(i, j) = kinetic_(i, j) + a * coulomb_(i, j) + b * linear_(i, j);
  return h;
}

std::vector<double> ReducedGaussianBasis::monomial_coefficients(const std::vector<double>& y) const {
  const int n = static_cast<int>(y.size());
  if (n > max_size_) throw InvalidArgument("too many reduced coordinates");
  std::vector<double> c(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int r = i; r < n; ++r) c[i] += inverse_cholesky_transposed_(i, r) * y[r];
  return c;
}

RitzSolver::RitzSolver(double s, RitzOptions options)
    : options_(std::move(options)),
      basis_(s, options_.schedule.empty()
                    ? 1
                    : *std::max_element(options_.schedule.begin(), options_.schedule.end())) {
  if (options_.schedule.empty()) throw InvalidArgument("empty basis-size schedule");
  if (!std::is_sorted(options_.schedule.begin(), options_.schedule.end()))
    throw InvalidArgument("basis-size schedule must be increasing");
  if (!(options_.tol > 0.0)) throw InvalidArgument("tolerance must be positive");
}

namespace {

void fill_final(RitzSpectrum& out, const ReducedGaussianBasis& basis, const linalg::MatrixD& h,
                int count) {
  const int n = h.rows();
  const auto eig = linalg::symmetric_eigen(h, true);
  out.basis_size = n;
  out.eigenvectors = linalg::MatrixD(n, count);
  out.inverse_radius_expectation.assign(count, 0.0);
  out.radius_expectation.assign(count, 0.0);
  const auto& c = basis.inverse_radius();
  const auto& r = basis.radius();
  for (int k = 0; k < count; ++k) {
    std::vector<double> y(n);
    for (int i = 0; i < n; ++i) {
      y[i] = eig.vectors(i, k);
      out.eigenvectors(i, k) = y[i];
    }
    double inv = 0.0, lin = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        inv += y[i] * c(i, j) * y[j];
        lin += y[i] * r(i, j) * y[j];
      }
    out.inverse_radius_expectation[k] = inv;
    out.radius_expectation[k] = lin;
  }
}

}  // namespace

RitzSpectrum RitzSolver::spectrum(double a, double b, int count, double tol) const {
  return run_schedule(a, b, count, 0, tol);
}

RitzSpectrum RitzSolver::level(double a, double b, int nu, double tol) const {
  if (nu < 0) throw InvalidArgument("level index must be non-negative");
  return run_schedule(a, b, nu + 1, nu, tol);
}

RitzSpectrum RitzSolver::run_schedule(double a, double b, int count, int first_checked,
                                      double tol) const {
  if (count < 1) throw InvalidArgument("level count must be at least 1");
  if (!std::isfinite(a) || !std::isfinite(b)) throw InvalidArgument("couplings must be finite");
  if (tol <= 0.0) tol = options_.tol;

  std::vector<int> sizes;
  for (int n : options_.schedule)
    if (n >= count && n <= basis_.max_size()) sizes.push_back(n);
  if (sizes.empty())
    throw InvalidArgument("no basis size in the schedule can hold " + std::to_string(count) +
                          " levels");

  RitzSpectrum out;
  out.params = DimensionlessParams{basis_.s(), a, b, 0.0};
  linalg::MatrixD h;
  const double eps = std::numeric_limits<double>::epsilon();
  for (int n : sizes) {
    h = basis_.hamiltonian(a, b, n);
    const auto eig = linalg::symmetric_eigen(h, false);
    std::vector<double> levels(eig.values.begin(), eig.values.begin() + count);
    const double spread = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
    if (!out.history.empty()) {
      // Nested bases: exact Ritz values can only decrease. A raw increase is
      // pure rounding and must stay at that scale.
      const auto& prev = out.history.back();
      for (int k = 0; k < count; ++k) {
        const double up = levels[k] - prev[k];
        if (up > 0.0) {
          if (up > 1e3 * n * eps * std::max(1.0, spread))
            throw NumericalError("Ritz level " + std::to_string(k) + " increased by " +
                                 std::to_string(up) + " at N=" + std::to_string(n));
          out.max_rounding_uptick = std::max(out.max_rounding_uptick, up);
          levels[k] = prev[k];
        }
      }
    }
    out.schedule_used.push_back(n);
    out.history.push_back(std::move(levels));
    if (out.history.size() >= 2) {
      const auto& last = out.history.back();
      const auto& prev = out.history[out.history.size() - 2];
      double change = 0.0;
      for (int k = first_checked; k < count; ++k)
        change = std::max(change, std::abs(last[k] - prev[k]));
      if (change < tol) {
        out.converged = true;
        break;
      }
    }
  }

  out.eigenvalues = out.history.back();
  out.convergence.assign(count, std::numeric_limits<double>::infinity());
  if (out.history.size() >= 2) {
    const auto& prev = out.history[out.history.size() - 2];
    for (int k = 0; k < count; ++k) out.convergence[k] = std::abs(out.eigenvalues[k] - prev[k]);
  }
  fill_final(out, basis_, h, count);
  return out;
}

RitzSpectrum RitzSolver::spectrum_at(double a, double b, int count, int size) const {
  if (count < 1 || count > size) throw InvalidArgument("level count must be in 1..N");
  RitzSpectrum out;
  out.params = DimensionlessParams{basis_.s(), a, b, 0.0};
  const auto h = basis_.hamiltonian(a, b, size);
  const auto eig = linalg::symmetric_eigen(h, false);
  out.eigenvalues.assign(eig.values.begin(), eig.values.begin() + count);
  out.history.push_back(out.eigenvalues);
  out.schedule_used.push_back(size);
  out.convergence.assign(count, std::numeric_limits<double>::infinity());
  fill_final(out, basis_, h, count);
  return out;
}

RitzSpectrum converged_spectrum(const DimensionlessParams& params, int count, double tol,
                                const RitzOptions& options) {
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  RitzSolver solver(params.s, options);
  auto out = solver.spectrum(params.a, params.b, count, tol);
  out.params.k = params.k;
  return out;
}

Expectations expectation_values(const RitzSpectrum& spectrum, int nu) {
  if (nu < 0 || nu >= static_cast<int>(spectrum.radius_expectation.size()))
    throw InvalidArgument("level index out of range");
  return {spectrum.inverse_radius_expectation[nu], spectrum.radius_expectation[nu]};
}

}  // namespace qes
