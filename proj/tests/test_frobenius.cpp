#include <cmath>
#include <random>

#include "doctest.h"

#include "oracles.hpp"
#include "qes/error.hpp"
#include "qes/frobenius.hpp"

using namespace qes;
using doctest::Approx;

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt5 = std::sqrt(5.0);

double simplified_B(int j, int n, double s) { return 2.0 * (j - n) / ((j + 2.0) * (j + 2.0 * (s + 1.0))); }

}  // namespace

TEST_CASE("recurrence coefficients") {
  CHECK(recurrence_A(-1, 3, 0, 0) == 3.0);
  CHECK(recurrence_A(-1, 0, 0, 1.7) == 0.0);
  CHECK(recurrence_A(0, 0, 2, 0) == 0.75);
  CHECK(recurrence_B(0, 4, 0, 0) == -0.5);
  CHECK(recurrence_B(1, 2, 0, 0) == Approx(2.0 / 9.0).epsilon(1e-15));
  CHECK(recurrence_B(1, 2, 0, 0) == Approx(simplified_B(1, 0, 0)).epsilon(1e-15));
  CHECK(recurrence_B(3, truncation_W(3, 0.4, 1.3), 1.3, 0.4) == Approx(0.0).scale(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(recurrence_A(-2, 1, 1, 0), InvalidArgument);
  CHECK_THROWS_AS(recurrence_B(-2, 1, 1, 0), InvalidArgument);
}

TEST_CASE("simplified B at the truncation value matches the general form") {
  double worst = 0.0;
  for (double s : {0.0, 1.0, kSqrt5})
    for (int n = 0; n <= 15; ++n)
      for (double b : {0.0, -3.7, 0.55, 9.74})
        for (int j = -1; j <= 40; ++j) {
          const double general = recurrence_B(j, truncation_W(n, s, b), b, s);
          worst = std::max(worst, std::abs(general - simplified_B(j, n, s)));
        }
  CHECK(worst <= 1e-14);
}

TEST_CASE("parity of the series coefficients") {
  std::mt19937 rng(20240601);
  std::uniform_real_distribution<double> coupling(-8.0, 8.0), level(-5.0, 30.0), order(0.0, 3.0);
  const int J = 30;
  for (int sample = 0; sample < 100; ++sample) {
    const double s = order(rng), a = coupling(rng), b = coupling(rng), W = level(rng);
    const auto plus = series_coefficients({s, a, b, 0}, W, J).c;
    const auto minus = series_coefficients({s, -a, -b, 0}, W, J).c;
    for (int j = 0; j <= J; ++j) {
      const double sign = j % 2 ? -1.0 : 1.0;
      const double scale = std::max(std::abs(plus[j]), 1e-300);
      CHECK(std::abs(minus[j] - sign * plus[j]) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("series coefficients") {
  CHECK(series_coefficients({0, 3, 0, 0}, 1.23, 1).c == std::vector<double>{1.0, 3.0});
  CHECK(series_coefficients({2.5, 0, 0, 0}, 7.0, 1).c[1] == 0.0);
  const auto c = series_coefficients({0, kSqrt2, 0, 0}, 4.0, 3).c;
  CHECK(c[0] == 1.0);
  CHECK(std::abs(c[2]) < 1e-15);
  CHECK(std::abs(c[3]) < 1e-15);
  CHECK(series_coefficients({0, 1, 1, 0}, 2, 0).c.size() == 1);
  CHECK_THROWS_AS(series_coefficients({0, 1, 1, 0}, 2, -1), InvalidArgument);

  // Recurrence holds for each stored coefficient.
  const DimensionlessParams p{0.6, -1.1, 2.3, 0};
  const auto s = series_coefficients(p, 5.5, 12);
  for (int j = 0; j + 2 <= 12; ++j)
    CHECK(s.c[j + 2] == Approx(recurrence_A(j, p.a, p.b, p.s) * s.c[j + 1] +
                               recurrence_B(j, 5.5, p.b, p.s) * s.c[j]));

  try {
    series_coefficients({0, 1e200, 0, 0}, 0.0, 10);
    FAIL("expected overflow");
  } catch (const SeriesOverflow& e) {
    CHECK(e.last_valid_index() == 1);
  }
}

TEST_CASE("truncation W") {
  CHECK(truncation_W(0, 1, 0) == 4.0);
  CHECK(truncation_W(10, 0, 0) == 22.0);
  CHECK(truncation_W(2, 0, 2) == 5.0);
  CHECK_THROWS_AS(truncation_W(-1, 0, 0), InvalidArgument);
}

TEST_CASE("truncation polynomial") {
  SUBCASE("order zero is linear with root -b(2s+1)/2") {
    for (double s : {0.0, 1.5})
      for (double b : {-2.0, 0.7}) {
        const auto p = truncation_polynomial(0, s, SolveFor::a, b);
        CHECK(p.degree() == 1);
        CHECK(p(-b * (2 * s + 1) / 2) == Approx(0.0).scale(1.0));
      }
  }
  SUBCASE("order one at b = 0 has roots +-sqrt 2") {
    const auto p = truncation_polynomial(1, 0, SolveFor::a, 0);
    CHECK(p.degree() == 2);
    CHECK(p(kSqrt2) == Approx(0.0).scale(1.0));
    CHECK(p(-kSqrt2) == Approx(0.0).scale(1.0));
    CHECK(p(1.0) != Approx(0.0).scale(1.0));
  }
  SUBCASE("even orders at b = 0 vanish at a = 0") {
    for (int n : {0, 2, 4, 10}) CHECK(truncation_polynomial(n, 0.3, SolveFor::a, 0)(0.0) == 0.0);
  }
  SUBCASE("matches the recurrence evaluated at the truncation W") {
    for (auto mode : {SolveFor::a, SolveFor::b})
      for (double x : {-1.3, 0.4, 2.2}) {
        const int n = 4;
        const double s = 0.8, fixed = 0.6;
        const double a = mode == SolveFor::a ? x : fixed;
        const double b = mode == SolveFor::b ? x : fixed;
        const auto c = series_coefficients({s, a, b, 0}, truncation_W(n, s, b), n + 1).c;
        CHECK(truncation_polynomial(n, s, mode, fixed)(x) == Approx(c[n + 1]).epsilon(1e-12));
      }
  }
  SUBCASE("polynomial derivative") {
    const Polynomial p{{1.0, -2.0, 0.0, 4.0}};
    CHECK(p.derivative().coeffs == std::vector<double>{-2.0, 0.0, 12.0});
    CHECK(p(2.0) == 29.0);
  }
  CHECK_THROWS_AS(truncation_polynomial(-1, 0, SolveFor::a, 0), InvalidArgument);
}

TEST_CASE("truncation roots: examples") {
  const auto r1 = truncation_roots(1, 0, SolveFor::a, 0);
  REQUIRE(r1.size() == 2);
  CHECK(r1[0].root == Approx(kSqrt2).epsilon(1e-15));
  CHECK(r1[1].root == Approx(-kSqrt2).epsilon(1e-15));
  CHECK(r1[0].W == 4.0);
  CHECK(r1[1].W == 4.0);
  CHECK(r1[0].i == 1);
  CHECK(r1[1].i == 2);

  const auto r2 = truncation_roots(2, 0, SolveFor::a, 0);
  REQUIRE(r2.size() == 3);
  CHECK(r2[1].root == 0.0);
  CHECK(r2[1].W == 6.0);

  for (double s : {0.0, 1.0, kSqrt5}) {
    const auto r0 = truncation_roots(0, s, SolveFor::b, 0);
    REQUIRE(r0.size() == 1);
    CHECK(r0[0].root == 0.0);
    CHECK(r0[0].W == Approx(2 * (s + 1)));
  }
  CHECK_THROWS_AS(truncation_roots(-1, 0, SolveFor::a, 0), InvalidArgument);
  CHECK_THROWS_AS(truncation_roots(2, -0.5, SolveFor::a, 0), InvalidArgument);
}

TEST_CASE("truncation roots agree with high-precision references") {
  const struct {
    int n;
    double s;
    SolveFor mode;
    const std::vector<double>& ref;
  } cases[] = {{10, 0.0, SolveFor::a, oracle::roots_n10_s0_a()},
               {15, 0.0, SolveFor::b, oracle::roots_n15_s0_b()},
               {3, 1.0, SolveFor::a, oracle::roots_n3_s1_a()},
               {4, kSqrt5, SolveFor::b, oracle::roots_n4_sqrt5_b()}};
  for (const auto& c : cases) {
    const auto roots = truncation_roots(c.n, c.s, c.mode, 0.0);
    REQUIRE(roots.size() == c.ref.size());
    for (std::size_t k = 0; k < roots.size(); ++k)
      CHECK(roots[k].root == Approx(c.ref[k]).epsilon(1e-13).scale(1.0));
  }
}

TEST_CASE("truncation roots agree with companion-matrix eigenvalues") {
  for (auto mode : {SolveFor::a, SolveFor::b})
    for (double s : {0.0, 1.0, kSqrt5})
      for (double fixed : {0.0, -1.5, 2.0})
        for (int n : {1, 4, 7}) {
          const auto roots = truncation_roots(n, s, mode, fixed);
          const auto ref = oracle::polynomial_roots(truncation_polynomial(n, s, mode, fixed).coeffs);
          REQUIRE(roots.size() == ref.size());
          for (std::size_t k = 0; k < ref.size(); ++k)
            CHECK(roots[k].root == Approx(ref[k]).epsilon(1e-9).scale(1.0));
        }
}

TEST_CASE("truncation roots: structure") {
  for (auto mode : {SolveFor::a, SolveFor::b})
    for (double s : {0.0, 1.0, kSqrt5})
      for (int n = 0; n <= 15; ++n) {
        const auto roots = truncation_roots(n, s, mode, 0.0);
        REQUIRE(roots.size() == static_cast<std::size_t>(n + 1));
        for (int k = 0; k <= n; ++k) {
          const auto& r = roots[k];
          CHECK(r.i == k + 1);
          if (k > 0) CHECK(roots[k - 1].root > r.root);
          // symmetric under negation
          CHECK(r.root == Approx(-roots[n - k].root).epsilon(1e-12).scale(1.0));
          CHECK(r.W == Approx(truncation_W(n, s, r.b())).epsilon(1e-15));
          // closure: c_{n+1} and c_{n+2} vanish, c_n does not
          const auto c = series_coefficients(r.params(), r.W, n + 2).c;
          double scale = 0.0;
          for (int j = 0; j <= n; ++j) scale = std::max(scale, std::abs(c[j]));
          CHECK(std::abs(c[n + 1]) <= 1e-10 * scale);
          CHECK(std::abs(c[n + 2]) <= 1e-10 * scale);
          CHECK(c[n] != 0.0);
          CHECK(r.poly.size() == static_cast<std::size_t>(n + 1));
        }
        if (n % 2 == 0) CHECK(roots[n / 2].root == 0.0);
      }
}

TEST_CASE("non-zero fixed coupling") {
  const auto roots = truncation_roots(6, 0.5, SolveFor::b, 1.7);
  REQUIRE(roots.size() == 7);
  for (const auto& r : roots) {
    CHECK(r.a() == 1.7);
    CHECK(r.W == Approx(2 * (6 + 0.5 + 1) - r.root * r.root / 4).epsilon(1e-15));
  }
  const auto ra = truncation_roots(5, 1.0, SolveFor::a, -0.9);
  for (const auto& r : ra) CHECK(r.W == Approx(truncation_W(5, 1.0, -0.9)));
}

TEST_CASE("mode names") {
  CHECK(parse_solve_for("a") == SolveFor::a);
  CHECK(parse_solve_for("b") == SolveFor::b);
  CHECK(to_string(SolveFor::b) == "b");
  CHECK_THROWS_AS(parse_solve_for("c"), InvalidArgument);
}

TEST_CASE("exact wavefunctions") {
  const auto n0 = truncation_roots(0, 1.5, SolveFor::a, 0.8)[0];
  const auto R0 = exact_wavefunction(n0);
  CHECK(R0.poly.size() == 1);
  CHECK(node_count(R0) == 0);
  CHECK(R0(1.3) == Approx(std::pow(1.3, 1.5) * std::exp(-0.4 * 1.3 - 0.5 * 1.69)).epsilon(1e-14));

  const auto r1 = truncation_roots(1, 0, SolveFor::a, 0);
  const auto plus = exact_wavefunction(r1[0]);
  const auto minus = exact_wavefunction(r1[1]);
  CHECK(static_cast<double>(plus.poly[1]) == Approx(kSqrt2).epsilon(1e-15));
  CHECK(static_cast<double>(minus.poly[1]) == Approx(-kSqrt2).epsilon(1e-15));
  CHECK(node_count(plus) == 0);
  CHECK(node_count(minus) == 1);
  CHECK(minus.polynomial(1.0 / kSqrt2) == Approx(0.0).scale(1.0));
}

TEST_CASE("node count equals the root index minus one") {
  for (auto mode : {SolveFor::a, SolveFor::b})
    for (double s : {0.0, 1.0})
      for (int n : {3, 8, 10, 15})
        for (const auto& r : truncation_roots(n, s, mode, 0.0))
          CHECK(node_count(exact_wavefunction(r)) == r.i - 1);
}

TEST_CASE("truncation solutions satisfy the radial equation") {
  double worst = 0.0;
  // b << 0 makes the monomial sum cancel heavily; irrational s exercises the
  // denominators in extended precision
  for (double s : {0.0, 1.0, std::sqrt(5.0)})
    for (auto mode : {SolveFor::a, SolveFor::b})
      for (int n = 0; n <= 10; ++n)
        for (const auto& r : truncation_roots(n, s, mode, 0.0))
          worst = std::max(worst, residual_norm(exact_wavefunction(r), r.params(), r.W));
  CHECK(worst < 1e-10);

  const auto r = truncation_roots(3, 1.0, SolveFor::b, 0.0)[1];
  const auto R = exact_wavefunction(r);
  CHECK(residual_norm(R, r.params(), r.W) < 1e-10);
  CHECK(residual_norm(R, r.params(), r.W + 0.1) > 1e-2);
  auto params = r.params();
  params.s = 2.0;
  CHECK_THROWS_AS(residual_norm(R, params, r.W), InvalidArgument);
}

TEST_CASE("residual norm matches an independent quadrature") {
  // n = 1, s = 0, a = sqrt 2: R = (1 + sqrt2 r) e^{-r^2/2}; at W + dW the
  // residual is dW R exactly, so the normalized norm is |dW|.
  const auto r = truncation_roots(1, 0.0, SolveFor::a, 0.0)[0];
  const auto R = exact_wavefunction(r);
  CHECK(residual_norm(R, r.params(), r.W + 0.25) == Approx(0.25).epsilon(1e-12));
  const double norm2 = oracle::integrate_0_inf([&](double x) { return x * R(x) * R(x); });
  CHECK(norm2 == Approx(1.5 + std::sqrt(2.0 * M_PI) / 2.0).epsilon(1e-12));
}
