#include "qes/frobenius.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qes/error.hpp"
#include "qes/linalg.hpp"
#include "qes/quadrature.hpp"

namespace qes {

std::string_view to_string(SolveFor mode) { return mode == SolveFor::a ? "a" : "b"; }

SolveFor parse_solve_for(std::string_view text) {
  if (text == "a") return SolveFor::a;
  if (text == "b") return SolveFor::b;
  throw InvalidArgument("mode must be 'a' or 'b', got '" + std::string(text) + "'");
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  Polynomial d;
  for (std::size_t k = 1; k < coeffs.size(); ++k)
    d.coeffs.push_back(static_cast<double>(k) * coeffs[k]);
  if (d.coeffs.empty()) d.coeffs.push_back(0.0);
  return d;
}

namespace {

// (j + 2)(j + 2(s + 1)), shared by A_j and B_j.
double recurrence_denominator(int j, double s) {
  if (j < -1) throw InvalidArgument("recurrence index must be >= -1");
  const double den = (j + 2.0) * (j + 2.0 * (s + 1.0));
  if (den == 0.0 || !std::isfinite(den))
    throw NumericalError("degenerate recurrence denominator at j=" + std::to_string(j));
  return den;
}

// A_j = alpha_j + beta_j x in the solved-for coupling x, with B_j at the
// truncation value of W.
template <class T>
struct LinearRecurrence {
  std::vector<T> alpha, beta, B;  // indexed by j + 1, j = -1 .. n - 1

  LinearRecurrence(int n, double s_in, SolveFor mode, double fixed_in) {
    const T s = s_in;
    const T fixed = fixed_in;
    for (int j = -1; j < n; ++j) {
      recurrence_denominator(j, s_in);  // validates
      const T den = T(j + 2) * (T(j + 2) + 2 * s);
      if (mode == SolveFor::a) {
        alpha.push_back(fixed * (T(2 * j + 3) + 2 * s) / (2 * den));
        beta.push_back(T(1) / den);
      } else {
        alpha.push_back(fixed / den);
        beta.push_back((T(2 * j + 3) + 2 * s) / (2 * den));
      }
      B.push_back(T(2 * (j - n)) / den);
    }
  }

  struct Value {
    T c_next;  // c_{n+1}
    T dc_next;
    T scale;   // max_j |c_j|, j <= n + 1
  };

  Value evaluate(T x) const {
    using std::abs;
    T c_prev = 0, c = 1;
    T d_prev = 0, d = 0;
    T scale = 1;
    for (std::size_t k = 0; k < alpha.size(); ++k) {
      const T A = alpha[k] + beta[k] * x;
      const T c_new = A * c + B[k] * c_prev;
      const T d_new = beta[k] * c + A * d + B[k] * d_prev;
      c_prev = c;
      c = c_new;
      d_prev = d;
      d = d_new;
      scale = std::max(scale, abs(c));
    }
    return {c, d, scale};
  }

  // Newton on c_{n+1}, never leaving (lo, hi).
  T polish(T x, T lo, T hi) const {
    using std::abs;
    const T eps = std::numeric_limits<T>::epsilon();
    for (int iter = 0; iter < 20; ++iter) {
      const auto v = evaluate(x);
      if (v.dc_next == T(0)) break;
      const T step = v.c_next / v.dc_next;
      const T trial = x - step;
      if (!(trial < hi && trial > lo)) break;
      x = trial;
      if (abs(step) <= 4 * eps * (1 + abs(x))) break;
    }
    return x;
  }
};

}  // namespace

double recurrence_A(int j, double a, double b, double s) {
  const double den = recurrence_denominator(j, s);
  return (2.0 * a + b * (2.0 * j + 2.0 * s + 3.0)) / (2.0 * den);
}

double recurrence_B(int j, double W, double b, double s) {
  const double den = recurrence_denominator(j, s);
  return (4.0 * (2.0 * j + 2.0 * s - W + 2.0) - b * b) / (4.0 * den);
}

SeriesCoefficients series_coefficients(const DimensionlessParams& params, double W, int J) {
  if (J < 0) throw InvalidArgument("series_coefficients: J must be non-negative");
  SeriesCoefficients out{params.s, params.a, params.b, W, {}};
  out.c.reserve(J + 1);
  out.c.push_back(1.0);
  if (J >= 1) out.c.push_back(recurrence_A(-1, params.a, params.b, params.s));
  for (int j = 0; j + 2 <= J; ++j) {
    const double next = recurrence_A(j, params.a, params.b, params.s) * out.c[j + 1] +
                        recurrence_B(j, W, params.b, params.s) * out.c[j];
    if (!std::isfinite(next)) throw SeriesOverflow(j + 1);
    out.c.push_back(next);
  }
  if (J >= 1 && !std::isfinite(out.c[1])) throw SeriesOverflow(0);
  return out;
}

double truncation_W(int n, double s, double b) {
  if (n < 0) throw InvalidArgument("truncation order must be non-negative");
  return 2.0 * (n + s + 1.0) - 0.25 * b * b;
}

Polynomial truncation_polynomial(int n, double s, SolveFor mode, double fixed) {
  if (n < 0) throw InvalidArgument("truncation order must be non-negative");
  const LinearRecurrence<double> rec(n, s, mode, fixed);
  std::vector<double> prev{0.0};
  std::vector<double> cur{1.0};
  for (std::size_t k = 0; k < rec.alpha.size(); ++k) {
    std::vector<double> next(cur.size() + 1, 0.0);
    for (std::size_t p = 0; p < cur.size(); ++p) {
      next[p] += rec.alpha[k] * cur[p];
      next[p + 1] += rec.beta[k] * cur[p];
    }
    for (std::size_t p = 0; p < prev.size(); ++p) next[p] += rec.B[k] * prev[p];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return Polynomial{std::move(cur)};
}

std::vector<TruncationSolution> truncation_roots(int n, double s, SolveFor mode, double fixed) {
  if (n < 0) throw InvalidArgument("truncation order must be non-negative");
  if (!(s >= 0.0)) throw InvalidArgument("s must be non-negative");
  const LinearRecurrence<double> rec(n, s, mode, fixed);

  // x c_k = (1/beta_{k-1}) c_{k+1} - (alpha_{k-1}/beta_{k-1}) c_k - (B_{k-1}/beta_{k-1}) c_{k-1}:
  // the roots of c_{n+1} are the eigenvalues of this tridiagonal (comrade)
  // matrix. Its off-diagonal products are positive, so it is similar to a
  // symmetric one.
  std::vector<double> diag(n + 1), off(n);
  for (int k = 0; k <= n; ++k) diag[k] = -rec.alpha[k] / rec.beta[k];
  for (int k = 0; k < n; ++k) {
    const double upper = 1.0 / rec.beta[k];
    const double lower = -rec.B[k + 1] / rec.beta[k + 1];
    if (!(upper * lower > 0.0))
      throw NumericalError("truncation recurrence is not symmetrizable");
    off[k] = std::sqrt(upper * lower);
  }
  std::vector<double> roots = linalg::tridiagonal_eigenvalues(diag, off);
  std::reverse(roots.begin(), roots.end());

  for (std::size_t i = 0; i < roots.size(); ++i) {
    // keep Newton inside the gaps to the neighbouring estimates
    const double hi = i == 0 ? std::numeric_limits<double>::infinity()
                             : 0.5 * (roots[i - 1] + roots[i]);
    const double lo = i + 1 == roots.size() ? -std::numeric_limits<double>::infinity()
                                            : 0.5 * (roots[i] + roots[i + 1]);
    roots[i] = rec.polish(roots[i], lo, hi);
  }

  std::vector<TruncationSolution> out;
  out.reserve(n + 1);
  for (int idx = 0; idx <= n; ++idx) {
    double root = roots[idx];
    if (fixed == 0.0 && n % 2 == 0 && std::abs(root) < 1e-12) root = 0.0;
    const auto v = rec.evaluate(root);
    if (!(std::abs(v.c_next) <= 1e-10 * v.scale))
      throw NumericalError("truncation root " + std::to_string(idx + 1) + " of order " +
                           std::to_string(n) + " did not converge");
    if (idx > 0 && !(out.back().root > root))
      throw NumericalError("truncation roots are not strictly ordered");
    TruncationSolution sol;
    sol.n = n;
    sol.i = idx + 1;
    sol.s = s;
    sol.mode = mode;
    sol.fixed_value = fixed;
    sol.root = root;
    sol.W = truncation_W(n, s, sol.b());
    sol.poly = series_coefficients(sol.params(), sol.W, n).c;
    out.push_back(std::move(sol));
  }
  return out;
}

double RadialWavefunction::polynomial(double r) const {
  Quad acc = 0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * r + *it;
  return static_cast<double>(acc);
}

double RadialWavefunction::operator()(double r) const {
  return std::pow(r, s) * std::exp(static_cast<double>(-0.5 * beta * r) - 0.5 * r * r) * polynomial(r);
}

RadialWavefunction exact_wavefunction(const TruncationSolution& sol) {
  const LinearRecurrence<Quad> rec(sol.n, sol.s, sol.mode, sol.fixed_value);
  const Quad step = 1e-9 * (1.0 + abs(Quad(sol.root)));
  const Quad root = rec.polish(sol.root, sol.root - step, sol.root + step);
  const Quad a = sol.mode == SolveFor::a ? root : static_cast<Quad>(sol.fixed_value);
  const Quad b = sol.mode == SolveFor::b ? root : static_cast<Quad>(sol.fixed_value);
  const Quad s = sol.s;

  // c_{j+2} = A_j c_{j+1} + B_j c_j with B_j at W = 2(n+s+1) - b^2/4.
  std::vector<Quad> c{Quad(1)};
  Quad prev = 0;
  for (int j = -1; j + 1 < sol.n; ++j) {
    const Quad den = (j + 2.0) * (j + 2.0 * (s + 1.0));
    const Quad A = (2.0 * a + b * (2.0 * j + 2.0 * s + 3.0)) / (2.0 * den);
    const Quad B = 2.0 * (j - sol.n) / den;
    const Quad next = A * c.back() + B * prev;
    prev = c.back();
    c.push_back(next);
  }
  return RadialWavefunction{sol.s, b, std::move(c)};
}

int node_count(const RadialWavefunction& R) {
  const auto& c = R.poly;
  int deg = static_cast<int>(c.size()) - 1;
  while (deg > 0 && c[deg] == 0) --deg;
  if (deg <= 0) return 0;
  // Fujiwara bound on the moduli of all roots
  long double bound = 0.0L;
  for (int k = 1; k <= deg; ++k) {
    long double ratio = static_cast<long double>(abs(c[deg - k] / c[deg]));
    if (k == deg) ratio *= 0.5L;
    bound = std::max(bound, std::pow(ratio, 1.0L / k));
  }
  bound *= 2.0L;
  const int samples = 20000 * (deg + 1);
  int changes = 0;
  double prev = R.polynomial(0.0);
  for (int k = 1; k <= samples; ++k) {
    const double v = R.polynomial(static_cast<double>(bound * k / samples));
    if (v == 0.0) continue;
    if (prev != 0.0 && (v > 0.0) != (prev > 0.0)) ++changes;
    prev = v;
  }
  return changes;
}

double residual_norm(const RadialWavefunction& R, const DimensionlessParams& params, double W) {
  if (R.s != params.s) throw InvalidArgument("residual_norm: wavefunction and operator s differ");
  const Quad s = params.s;
  const Quad beta = R.beta;
  const auto& P = R.poly;
  const int deg = static_cast<int>(P.size()) - 1;
  if (deg < 0) throw InvalidArgument("residual_norm: empty polynomial");

  // L R = r^{s-1} exp(-beta r/2 - r^2/2) Q(r) with
  // Q = r P'' + (2s+1 - beta r - 2 r^2) P' + [(W + beta^2/4 - 2s - 2) r + (beta - b) r^2 - (a + beta(s+1/2))] P.
  std::vector<Quad> Q(deg + 3, Quad(0));
  const Quad lin = static_cast<Quad>(W) + 0.25 * beta * beta - 2.0 * s - 2.0;
  const Quad con = static_cast<Quad>(params.a) + beta * (s + 0.5);
  for (int j = 0; j <= deg; ++j) {
    const Quad cj = P[j];
    if (j >= 1) {
      Q[j - 1] += (static_cast<Quad>(j) * (j - 1) + (2.0 * s + 1.0) * j) * cj;
      Q[j] += -beta * j * cj;
    }
    Q[j + 1] += (lin - 2.0 * j) * cj;
    Q[j + 2] += (beta - static_cast<Quad>(params.b)) * cj;
    Q[j] += -con * cj;
  }
  auto horner = [](const std::vector<Quad>& c, std::size_t first, Quad x) {
    Quad acc = 0;
    for (std::size_t k = c.size(); k-- > first;) acc = acc * x + c[k];
    return acc;
  };

  // only the polynomial sums cancel; the prefactors are evaluated in double
  const double half_beta = static_cast<double>(0.5 * beta);
  auto residual_sq = [&](double r) {
    const double e = std::pow(r, params.s - 1.0) * std::exp(-half_beta * r - 0.5 * r * r) *
                     static_cast<double>(horner(Q, 0, r));
    return e * e * r;
  };
  auto norm_sq = [&](double r) {
    const double v = std::pow(r, params.s) * std::exp(-half_beta * r - 0.5 * r * r) *
                     static_cast<double>(horner(P, 0, r));
    return v * v * r;
  };

  const double upper =
      10.0 + 2.0 * std::sqrt(std::max(W, 0.0)) + std::max(std::abs(params.b), static_cast<double>(abs(R.beta)));
  const auto& rule = quadrature::gauss_legendre_20();
  const auto coarse = quadrature::graded_breaks(upper, 0.5);
  const auto fine = quadrature::bisect_panels(coarse);

  const double norm1 = quadrature::integrate_panels(norm_sq, coarse, rule);
  const double norm2 = quadrature::integrate_panels(norm_sq, fine, rule);
  const double res1 = std::sqrt(quadrature::integrate_panels(residual_sq, coarse, rule) / norm1);
  const double res2 = std::sqrt(quadrature::integrate_panels(residual_sq, fine, rule) / norm2);
  if (!std::isfinite(res1) || !std::isfinite(res2) || !(norm2 > 0.0))
    throw NumericalError("residual quadrature produced a non-finite value");
  if (std::abs(res1 - res2) > 1e-6 * res2 + 1e-13)
    throw NumericalError("residual quadrature did not converge");
  return res2;
}

}  // namespace qes
