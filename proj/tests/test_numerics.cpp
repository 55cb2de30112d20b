#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "doctest.h"

#include "qes/error.hpp"
#include "qes/linalg.hpp"
#include "qes/quadrature.hpp"

using namespace qes;
using linalg::MatrixD;
using doctest::Approx;

namespace {

MatrixD random_symmetric(int n, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  MatrixD a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = u(rng);
  return a;
}

MatrixD random_spd(int n, std::mt19937& rng) {
  const auto x = random_symmetric(n, rng);
  auto a = x * x.transposed();
  for (int i = 0; i < n; ++i) a(i, i) += 0.5;
  return a;
}

double max_abs_diff(const MatrixD& x, const MatrixD& y) {
  double d = 0.0;
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j) d = std::max(d, std::abs(x(i, j) - y(i, j)));
  return d;
}

}  // namespace

TEST_CASE("cholesky reproduces the matrix and reports the failing pivot") {
  std::mt19937 rng(7);
  const auto a = random_spd(9, rng);
  const auto l = linalg::cholesky(a);
  for (int i = 0; i < 9; ++i)
    for (int j = i + 1; j < 9; ++j) CHECK(l(i, j) == 0.0);
  CHECK(max_abs_diff(l * l.transposed(), a) < 1e-13);
  CHECK(max_abs_diff(linalg::lower_inverse(l) * l, MatrixD::identity(9)) < 1e-12);

  // Rank two: the third pivot vanishes.
  MatrixD singular(3, 3);
  const double u[3] = {1, 2, 3}, v[3] = {0, 1, -1};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) singular(i, j) = u[i] * u[j] + v[i] * v[j];
  try {
    linalg::cholesky(singular, 1e-12);
    FAIL("expected a breakdown");
  } catch (const CholeskyBreakdown& e) {
    CHECK(e.pivot() == 2);
  }
}

TEST_CASE("lower congruence equals X A X^T") {
  std::mt19937 rng(11);
  const auto a = random_symmetric(6, rng);
  auto x = random_symmetric(6, rng);
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) x(i, j) = 0.0;
  CHECK(max_abs_diff(linalg::lower_congruence(x, a), x * a * x.transposed()) < 1e-13);
}

TEST_CASE("symmetric eigensolver agrees with Eigen") {
  std::mt19937 rng(3);
  for (int n : {1, 2, 5, 12, 30}) {
    const auto a = random_symmetric(n, rng);
    const auto eig = linalg::symmetric_eigen(a, true);
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = a(i, j);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(m);
    for (int k = 0; k < n; ++k) {
      CHECK(eig.values[k] == Approx(ref.eigenvalues()(k)).epsilon(1e-12).scale(1.0));
      if (k > 0) CHECK(eig.values[k] >= eig.values[k - 1]);
      // A v = lambda v and unit norm.
      double norm = 0.0, resid = 0.0;
      for (int i = 0; i < n; ++i) {
        double av = 0.0;
        for (int j = 0; j < n; ++j) av += a(i, j) * eig.vectors(j, k);
        resid = std::max(resid, std::abs(av - eig.values[k] * eig.vectors(i, k)));
        norm += eig.vectors(i, k) * eig.vectors(i, k);
      }
      CHECK(resid < 1e-12);
      CHECK(norm == Approx(1.0).epsilon(1e-13));
    }
  }
}

TEST_CASE("tridiagonal eigenvalues of the discrete Laplacian") {
  const int n = 25;
  const auto ev = linalg::tridiagonal_eigenvalues(std::vector<double>(n, 2.0),
                                                  std::vector<double>(n - 1, -1.0));
  for (int k = 0; k < n; ++k)
    CHECK(ev[k] == Approx(2.0 - 2.0 * std::cos((k + 1) * std::numbers::pi / (n + 1))).epsilon(1e-13).scale(1.0));
  CHECK_THROWS_AS(linalg::tridiagonal_eigenvalues(std::vector<double>(3, 1.0), std::vector<double>(3, 0.0)),
                  InvalidArgument);
}

TEST_CASE("Gauss-Legendre rules") {
  for (int n : {1, 2, 7, 20}) {
    const auto rule = quadrature::gauss_legendre(n);
    double wsum = 0.0;
    for (double w : rule.weights) wsum += w;
    CHECK(wsum == Approx(2.0).epsilon(1e-14));
    // Exact for degree 2n - 1; check the top even degree below it.
    const int p = 2 * n - 2;
    double q = 0.0;
    for (int k = 0; k < n; ++k) q += rule.weights[k] * std::pow(rule.nodes[k], p);
    CHECK(q == Approx(2.0 / (p + 1)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(quadrature::gauss_legendre(0), InvalidArgument);
}

TEST_CASE("graded panels integrate a Gaussian moment") {
  const auto breaks = quadrature::graded_breaks(12.0, 0.5);
  CHECK(breaks.front() == 0.0);
  CHECK(breaks.back() == Approx(12.0));
  for (std::size_t k = 1; k < breaks.size(); ++k) CHECK(breaks[k] > breaks[k - 1]);
  const double v = quadrature::integrate_panels([](double r) { return r * r * r * std::exp(-r * r); },
                                                breaks, quadrature::gauss_legendre_20());
  CHECK(v == Approx(0.5).epsilon(1e-14));
  const auto fine = quadrature::bisect_panels(breaks);
  CHECK(fine.size() == 2 * breaks.size() - 1);
  CHECK_THROWS_AS(quadrature::graded_breaks(0.25, 0.5), InvalidArgument);
}
