#pragma once

// Frobenius series R(r) = r^s exp(-b r/2 - r^2/2) sum_j c_j r^j, its
// three-term recurrence, and the polynomial ("truncation") solutions obtained
// when the series terminates at degree n.

#include <string_view>
#include <vector>

#include <boost/multiprecision/float128.hpp>

#include "qes/model.hpp"

namespace qes {

/// Which coupling the truncation condition c_{n+1} = 0 is solved for; the
/// other one is held fixed.
enum class SolveFor { a, b };

std::string_view to_string(SolveFor mode);
/// Accepts "a" or "b"; throws InvalidArgument otherwise.
SolveFor parse_solve_for(std::string_view text);

/// Dense univariate polynomial, coefficients in ascending powers.
struct Polynomial {
  std::vector<double> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  double operator()(double x) const;
  Polynomial derivative() const;
};

/// A_j(a, b) of the recurrence c_{j+2} = A_j c_{j+1} + B_j c_j.
double recurrence_A(int j, double a, double b, double s);
/// B_j(W, b) of the recurrence.
double recurrence_B(int j, double W, double b, double s);

struct SeriesCoefficients {
  double s = 0.0;
  double a = 0.0;
  double b = 0.0;
  double W = 0.0;
  std::vector<double> c;  ///< c_0 .. c_J, c_0 = 1
};

/// Forward recurrence up to c_J. Throws SeriesOverflow if a coefficient
/// leaves the finite range.
SeriesCoefficients series_coefficients(const DimensionlessParams& params, double W, int J);

/// W_s^(n) = 2(n + s + 1) - b^2/4.
double truncation_W(int n, double s, double b);

/// c_{n+1} as a polynomial in the solved-for coupling, with W pinned to the
/// truncation value (so B_j = 2(j - n)/[(j+2)(j+2s+2)] in both modes).
Polynomial truncation_polynomial(int n, double s, SolveFor mode, double fixed);

struct TruncationSolution {
  int n = 0;
  int i = 1;  ///< 1-based, roots ordered decreasingly
  double s = 0.0;
  SolveFor mode = SolveFor::a;
  double fixed_value = 0.0;
  double root = 0.0;
  double W = 0.0;
  std::vector<double> poly;  ///< c_0 .. c_n

  double a() const { return mode == SolveFor::a ? root : fixed_value; }
  double b() const { return mode == SolveFor::b ? root : fixed_value; }
  DimensionlessParams params() const { return {s, a(), b(), 0.0}; }
};

/// All n+1 real roots of c_{n+1} = 0, strictly decreasing. Throws
/// NumericalError if they cannot be resolved to tolerance.
std::vector<TruncationSolution> truncation_roots(int n, double s, SolveFor mode, double fixed);

using Quad = boost::multiprecision::float128;

/// R(r) = r^s exp(-beta r/2 - r^2/2) P(r). P is kept in quad precision: for
/// beta << 0 the factor exp(-beta r/2) P approximates a decaying function and
/// the monomial terms cancel by about exp(|beta| r).
struct RadialWavefunction {
  double s = 0.0;
  Quad beta = 0;           ///< the polished root itself in b-mode
  std::vector<Quad> poly;  ///< ascending powers

  double polynomial(double r) const;
  double operator()(double r) const;
};

/// The truncation solution with its root re-polished and its coefficients
/// regenerated through the recurrence in extended precision.
RadialWavefunction exact_wavefunction(const TruncationSolution& sol);

/// Number of zeros of the polynomial factor on r > 0.
int node_count(const RadialWavefunction& R);

/// ||L R|| / ||R|| in L^2(r dr), where L is the radial operator with
/// couplings `params` and eigenvalue W. Derivatives are analytic; the
/// integrals use composite Gauss-Legendre on (0, 10 + 2 sqrt(W) + |b|].
/// Throws NumericalError if two quadrature resolutions disagree.
double residual_norm(const RadialWavefunction& R, const DimensionlessParams& params, double W);

}  // namespace qes
