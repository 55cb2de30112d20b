#include <cmath>
#include <numbers>

#include "doctest.h"

#include "oracles.hpp"
#include "qes/error.hpp"
#include "qes/frobenius.hpp"
#include "qes/ritz.hpp"

using namespace qes;
using doctest::Approx;

namespace {

const double kSqrtPi = std::sqrt(std::numbers::pi);

const RitzSolver& solver_for(double s) {
  static const RitzSolver s0(0.0), s1(1.0), s5(std::sqrt(5.0));
  if (s == 0.0) return s0;
  if (s == 1.0) return s1;
  return s5;
}

double max_sym_error(const linalg::MatrixD& m) {
  double err = 0.0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) err = std::max(err, std::abs(m(i, j) - m(j, i)));
  return err;
}

}  // namespace

TEST_CASE("moments against quadrature") {
  CHECK(moment(0, 0) == Approx(0.5).epsilon(1e-15));
  CHECK(moment(0, 1) == Approx(kSqrtPi / 4).epsilon(1e-15));
  CHECK(moment(1, 0) == Approx(0.5).epsilon(1e-15));
  for (double s : {0.0, 0.5, 1.0, std::sqrt(5.0)})
    for (double p : {-1.0, 0.0, 1.0, 2.5, 7.0}) {
      const double q =
          oracle::integrate_0_inf([&](double r) { return std::pow(r, 2 * s + p + 1) * std::exp(-r * r); });
      CHECK(moment(s, p) == Approx(q).epsilon(1e-12));
    }
  CHECK_THROWS_AS(moment(0, -2), InvalidArgument);
}

TEST_CASE("explicit matrices") {
  CHECK(overlap_matrix({0, 1, false})(0, 0) == 0.5);
  CHECK(overlap_matrix({0, 1, true})(0, 0) == Approx(1.0));
  CHECK(overlap_matrix({0, 2, false})(0, 1) == Approx(kSqrtPi / 4));

  // single Gaussian is the oscillator ground state: H00 / S00 = 2
  const GaussianBasis one{0, 1, false};
  CHECK(hamiltonian_matrix(one, 0, 0)(0, 0) / overlap_matrix(one)(0, 0) == Approx(2.0));

  const GaussianBasis basis{0.7, 6, true};
  const auto h = hamiltonian_matrix(basis, 1.3, -0.4);
  CHECK(max_sym_error(h) <= 1e-14);
  // linear in a with the 1/r moments as slope
  const auto h2 = hamiltonian_matrix(basis, 1.3 + 0.25, -0.4);
  const auto c = radial_power_matrix(basis, -1);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) CHECK(h2(i, j) - h(i, j) == Approx(0.25 * c(i, j)).epsilon(1e-12));
  const auto d = basis_scales(basis);
  CHECK(c(1, 2) == Approx(d[1] * d[2] * moment(0.7, 2)).epsilon(1e-14));
  CHECK(radial_power_matrix(basis, 1)(0, 3) == Approx(d[0] * d[3] * moment(0.7, 4)).epsilon(1e-14));
  CHECK_THROWS_AS(radial_power_matrix(basis, 2), InvalidArgument);

  // Cholesky succeeds on the Gram matrix for moderate N
  CHECK_NOTHROW(linalg::cholesky(overlap_matrix({0, 8, true})));
  CHECK_THROWS_AS(overlap_matrix({-1, 3, true}), InvalidArgument);
}

TEST_CASE("Hamiltonian matrix elements against quadrature") {
  // <phi_i | H phi_j> with H phi_j computed from the analytic second derivative.
  const double s = 1.0, a = 0.8, b = -0.6;
  const GaussianBasis basis{s, 4, false};
  const auto h = hamiltonian_matrix(basis, a, b);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      auto integrand = [&](double r) {
        const double p = s + j;
        const double phi_j = std::pow(r, p) * std::exp(-r * r / 2);
        // -(1/r)(r phi')' = [-p^2/r^2 + 2(p+1) - r^2] phi
        const double h_phi =
            (-p * p / (r * r) + 2 * (p + 1) - r * r + s * s / (r * r) + a / r + b * r + r * r) * phi_j;
        return r * std::pow(r, s + i) * std::exp(-r * r / 2) * h_phi;
      };
      CHECK(h(i, j) == Approx(oracle::integrate_0_inf(integrand, 1e-12)).epsilon(1e-10));
    }
}

TEST_CASE("generalized eigensolver on explicit matrices") {
  const GaussianBasis basis{0, 10, true};
  const auto eig = generalized_eigensolve({hamiltonian_matrix(basis, 0, 0), overlap_matrix(basis)}, 3);
  CHECK(eig.values[0] == Approx(2.0).epsilon(1e-10));
  CHECK(eig.values[1] == Approx(6.0).epsilon(1e-10));
  CHECK(eig.values[2] == Approx(10.0).epsilon(1e-10));
  // v^T S v = 1
  const auto S = overlap_matrix(basis);
  std::vector<double> v(10);
  for (int i = 0; i < 10; ++i) v[i] = eig.vectors(i, 1);
  CHECK(linalg::quadratic_form(S, v, v) == Approx(1.0).epsilon(1e-8));

  const GaussianBasis small{0, 6, true};
  const auto e = generalized_eigensolve({hamiltonian_matrix(small, std::sqrt(2.0), 0), overlap_matrix(small)}, 1);
  CHECK(e.values[0] == Approx(4.0).epsilon(1e-10));

  const GaussianBasis single{2.0, 1, false};
  const auto h1 = hamiltonian_matrix(single, 0.3, 0.2);
  const auto s1 = overlap_matrix(single);
  CHECK(generalized_eigensolve({h1, s1}, 1).values[0] == Approx(h1(0, 0) / s1(0, 0)));

  CHECK_THROWS_AS(generalized_eigensolve({h1, s1}, 2), InvalidArgument);
  linalg::MatrixD bad(2, 2, 1.0);
  try {
    generalized_eigensolve({bad, bad}, 1);
    FAIL("expected a breakdown");
  } catch (const CholeskyBreakdown& e) {
    CHECK(e.pivot() == 1);
  }
}

TEST_CASE("reduced basis") {
  const auto& solver = solver_for(0.0);
  const auto& basis = solver.basis();
  CHECK(basis.max_size() == 64);
  CHECK(max_sym_error(basis.inverse_radius()) < 1e-14);
  CHECK(max_sym_error(basis.hamiltonian(1, 2, 20)) < 1e-12);
  // agrees with the explicit double path where that path is reliable
  const GaussianBasis small{0, 8, true};
  const auto direct = generalized_eigensolve({hamiltonian_matrix(small, -1.2, 0.7), overlap_matrix(small)}, 4);
  const auto reduced = solver.spectrum_at(-1.2, 0.7, 4, 8);
  for (int k = 0; k < 4; ++k) CHECK(reduced.eigenvalues[k] == Approx(direct.values[k]).epsilon(1e-9));
  CHECK_THROWS_AS(basis.hamiltonian(0, 0, 65), InvalidArgument);
  CHECK_THROWS_AS(ReducedGaussianBasis(-0.1, 10), InvalidArgument);
  CHECK_THROWS_AS(ReducedGaussianBasis(0.0, 500), InvalidArgument);

  // reduced eigenvector back in the monomial basis solves the explicit problem
  const auto spec = solver.spectrum_at(0.5, 0.0, 1, 8);
  std::vector<double> y(8);
  for (int i = 0; i < 8; ++i) y[i] = spec.eigenvectors(i, 0);
  const auto c = basis.monomial_coefficients(y);
  const GaussianBasis raw{0, 8, false};
  const auto H = hamiltonian_matrix(raw, 0.5, 0.0);
  const auto S = overlap_matrix(raw);
  CHECK(linalg::quadratic_form(H, c, c) / linalg::quadratic_form(S, c, c) ==
        Approx(spec.eigenvalues[0]).epsilon(1e-10));
}

TEST_CASE("oscillator limit") {
  for (double s : {0.0, 1.0, std::sqrt(5.0)}) {
    const auto spec = solver_for(s).spectrum(0, 0, 3, 1e-10);
    CHECK(spec.converged);
    for (int nu = 0; nu < 3; ++nu) CHECK(std::abs(spec.eigenvalues[nu] - 2 * (2 * nu + s + 1)) <= 1e-10);
  }
  const auto spec = converged_spectrum({0, 0, 0, 0.5}, 3, 1e-10);
  CHECK(spec.params.k == 0.5);
  CHECK(spec.eigenvalues[2] == Approx(10.0));
  CHECK_THROWS_AS(converged_spectrum({0, 0, 0, 0}, 3, 0.0), InvalidArgument);
}

TEST_CASE("levels agree with a shooting reference") {
  for (const auto& ref : oracle::levels()) {
    const auto& solver = solver_for(ref.s == 0.0 ? 0.0 : (ref.s == 1.0 ? 1.0 : ref.s));
    const auto spec = solver.spectrum(ref.a, ref.b, ref.nu + 1, 1e-11);
    CHECK(spec.converged);
    CHECK(spec.eigenvalues[ref.nu] == Approx(ref.W).epsilon(1e-10).scale(1.0));
    const auto e = expectation_values(spec, ref.nu);
    CHECK(e.inverse_radius == Approx(ref.dW_da).epsilon(1e-8));
    CHECK(e.radius == Approx(ref.dW_db).epsilon(1e-8));
  }
}

TEST_CASE("expectation values") {
  const auto spec = solver_for(0.0).spectrum(0, 0, 2);
  const auto e = expectation_values(spec, 0);
  CHECK(e.inverse_radius == Approx(kSqrtPi).epsilon(1e-12));
  CHECK(e.radius == Approx(kSqrtPi / 2).epsilon(1e-12));
  CHECK_THROWS_AS(expectation_values(spec, 2), InvalidArgument);

  // against quadrature of the exact level-0 function at a = sqrt 2
  const auto sol = truncation_roots(1, 0, SolveFor::a, 0)[0];
  const auto R = exact_wavefunction(sol);
  const double norm = oracle::integrate_0_inf([&](double r) { return r * R(r) * R(r); });
  const double inv = oracle::integrate_0_inf([&](double r) { return R(r) * R(r); }) / norm;
  const double lin = oracle::integrate_0_inf([&](double r) { return r * r * R(r) * R(r); }) / norm;
  const auto ex = expectation_values(solver_for(0.0).spectrum(sol.root, 0, 1), 0);
  CHECK(ex.inverse_radius == Approx(inv).epsilon(1e-10));
  CHECK(ex.radius == Approx(lin).epsilon(1e-10));

  for (double a : {-8.0, 0.0, 5.0})
    for (double b : {-4.0, 3.0}) {
      const auto sp = solver_for(1.0).spectrum(a, b, 4);
      for (int nu = 0; nu < 4; ++nu) {
        CHECK(sp.inverse_radius_expectation[nu] > 0.0);
        CHECK(sp.radius_expectation[nu] > 0.0);
      }
    }
}

TEST_CASE("variational monotonicity across the schedule") {
  for (double s : {0.0, 1.0})
    for (double a : {-20.0, -3.0, 0.0, 7.0})
      for (double b : {-6.0, 0.0, 4.0}) {
        const auto spec = solver_for(s).spectrum(a, b, 5, 1e-14);
        REQUIRE(spec.history.size() == spec.schedule_used.size());
        for (std::size_t step = 1; step < spec.history.size(); ++step)
          for (int k = 0; k < 5; ++k) CHECK(spec.history[step][k] <= spec.history[step - 1][k]);
        for (int k = 1; k < 5; ++k) CHECK(spec.eigenvalues[k] > spec.eigenvalues[k - 1]);
        // raw upticks, if any, stay at rounding level
        CHECK(spec.max_rounding_uptick < 1e-11 * std::max(1.0, std::abs(spec.eigenvalues[4])));
      }
}

TEST_CASE("levels increase with both couplings") {
  const auto& solver = solver_for(0.0);
  for (int nu = 0; nu < 4; ++nu) {
    double prev = -1e300;
    for (double a = -10; a <= 10; a += 2.5) {
      const double w = solver.spectrum(a, 1.0, nu + 1).eigenvalues[nu];
      CHECK(w > prev);
      prev = w;
    }
    prev = -1e300;
    for (double b = -6; b <= 6; b += 1.5) {
      const double w = solver.spectrum(-1.0, b, nu + 1).eigenvalues[nu];
      CHECK(w > prev);
      prev = w;
    }
  }
}

TEST_CASE("truncation points are reproduced") {
  const auto& solver = solver_for(0.0);
  const auto plus = solver.spectrum(std::sqrt(2.0), 0, 2);
  CHECK(plus.eigenvalues[0] == Approx(4.0).epsilon(1e-12));
  const auto minus = solver.spectrum(-std::sqrt(2.0), 0, 2);
  CHECK(minus.eigenvalues[1] == Approx(4.0).epsilon(1e-12));

  // exact at b = 0 once the polynomial lies in the span (n < N - 1)
  for (double s : {0.0, 1.0, std::sqrt(5.0)})
    for (int n = 0; n <= 6; ++n)
      for (const auto& r : truncation_roots(n, s, SolveFor::a, 0.0)) {
        const auto spec = solver_for(s).spectrum_at(r.a(), 0.0, r.i, n + 2);
        CHECK(std::abs(spec.eigenvalues[r.i - 1] - r.W) <= 1e-8);
      }
}

TEST_CASE("solver options and errors") {
  CHECK_THROWS_AS(RitzSolver(0.0, RitzOptions{{}, 1e-10}), InvalidArgument);
  CHECK_THROWS_AS(RitzSolver(0.0, RitzOptions{{20, 12}, 1e-10}), InvalidArgument);
  CHECK_THROWS_AS(RitzSolver(0.0, RitzOptions{{12, 16}, 0.0}), InvalidArgument);
  const RitzSolver tiny(0.0, RitzOptions{{12, 16}, 1e-10});
  CHECK_THROWS_AS(tiny.spectrum(0, 0, 20), InvalidArgument);
  CHECK_THROWS_AS(tiny.spectrum(0, 0, 0), InvalidArgument);
  CHECK_THROWS_AS(tiny.spectrum(NAN, 0, 1), InvalidArgument);
  CHECK_THROWS_AS(tiny.level(0, 0, -1), InvalidArgument);
  CHECK_THROWS_AS(tiny.spectrum_at(0, 0, 5, 4), InvalidArgument);

  // a deep Coulomb well cannot converge with 16 functions: flagged, not hidden
  const auto spec = tiny.spectrum(-40, 0, 3, 1e-10);
  CHECK_FALSE(spec.converged);
  CHECK(spec.basis_size == 16);
  CHECK(spec.convergence[0] > 1e-10);
}

TEST_CASE("level() only requires the requested level to converge") {
  const auto& solver = solver_for(0.0);
  const auto all = solver.spectrum(-35.143468810430796, 0, 11, 1e-12);
  const auto top = solver.level(-35.143468810430796, 0, 10, 1e-12);
  CHECK(top.converged);
  CHECK(top.basis_size <= all.basis_size);
  CHECK(top.convergence[10] < 1e-12);
  CHECK(top.eigenvalues[10] == Approx(22.0).epsilon(1e-12));
}
