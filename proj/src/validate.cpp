#include "qes/validate.hpp"

#include <algorithm>
#include <cmath>

#include "qes/error.hpp"
#include "qes/sweep.hpp"

namespace qes {

bool IntersectionReport::passed() const {
  return converged && abs_deviation <= tolerance && mirror_abs_deviation <= tolerance;
}

double intersection_tolerance(SolveFor mode) { return mode == SolveFor::a ? 1e-8 : 1e-6; }

std::vector<IntersectionReport> check_intersections(const RitzSolver& solver, int n, SolveFor mode,
                                                    double fixed) {
  if (n < 0) throw InvalidArgument("n must be non-negative");
  const double tol = intersection_tolerance(mode);
  const double ritz_tol = std::min(solver.options().tol, 1e-2 * tol);
  const auto family = truncation_roots(n, solver.s(), mode, fixed);

  std::vector<IntersectionReport> out;
  for (const auto& sol : family) {
    IntersectionReport r;
    r.n = n;
    r.i = sol.i;
    r.s = sol.s;
    r.mode = mode;
    r.fixed = fixed;
    r.root = sol.root;
    r.W_truncation = sol.W;
    r.level = sol.i - 1;
    r.mirror_level = n + 1 - sol.i;
    r.tolerance = tol;

    const auto direct = solver.level(sol.a(), sol.b(), r.level, ritz_tol);
    const auto mirror = solver.level(-sol.a(), -sol.b(), r.mirror_level, ritz_tol);
    r.W_variational = direct.eigenvalues[r.level];
    r.mirror_W_variational = mirror.eigenvalues[r.mirror_level];
    r.abs_deviation = std::abs(r.W_variational - r.W_truncation);
    r.mirror_abs_deviation = std::abs(r.mirror_W_variational - r.W_truncation);
    r.basis_size = direct.basis_size;
    r.mirror_basis_size = mirror.basis_size;
    r.converged = direct.converged && mirror.converged;
    out.push_back(r);
  }
  return out;
}

double check_parabola(int n, double s, double a_fixed) {
  if (n < 0) throw InvalidArgument("n must be non-negative");
  double worst = 0.0;
  for (const auto& sol : truncation_roots(n, s, SolveFor::b, a_fixed)) {
    const double locus = 2.0 * (n + s + 1.0) - sol.root * sol.root / 4.0;
    worst = std::max(worst, std::abs(sol.W - locus));
  }
  return worst;
}

double HellmannFeynmanReport::relative_deviation_a() const {
  return std::abs(fd_a - exp_a) / std::abs(exp_a);
}

double HellmannFeynmanReport::relative_deviation_b() const {
  return std::abs(fd_b - exp_b) / std::abs(exp_b);
}

bool HellmannFeynmanReport::passed(double rel_tol) const {
  return converged && fd_a > 0.0 && exp_a > 0.0 && fd_b > 0.0 && exp_b > 0.0 &&
         relative_deviation_a() <= rel_tol && relative_deviation_b() <= rel_tol;
}

HellmannFeynmanReport check_hellmann_feynman(const RitzSolver& solver,
                                             const DimensionlessParams& params, int nu,
                                             double delta) {
  if (nu < 0) throw InvalidArgument("level index must be non-negative");
  if (!(delta > 0.0)) throw InvalidArgument("delta must be positive");
  if (params.s != solver.s()) throw InvalidArgument("solver was built for a different s");

  const double a = params.a, b = params.b;
  const double points[5][2] = {{a, b}, {a + delta, b}, {a - delta, b}, {a, b + delta},
                               {a, b - delta}};
  HellmannFeynmanReport r;
  r.params = params;
  r.nu = nu;
  r.delta = delta;
  r.converged = true;
  for (const auto& p : points) {
    const auto spec = solver.level(p[0], p[1], nu);
    r.converged = r.converged && spec.converged;
    r.basis_size = std::max(r.basis_size, spec.basis_size);
  }

  const int count = nu + 1;
  const auto center = solver.spectrum_at(a, b, count, r.basis_size);
  auto level_at = [&](double aa, double bb) {
    return solver.spectrum_at(aa, bb, count, r.basis_size).eigenvalues[nu];
  };
  r.fd_a = (level_at(a + delta, b) - level_at(a - delta, b)) / (2.0 * delta);
  r.fd_b = (level_at(a, b + delta) - level_at(a, b - delta)) / (2.0 * delta);
  r.exp_a = center.inverse_radius_expectation[nu];
  r.exp_b = center.radius_expectation[nu];
  return r;
}

bool ContinuityReport::passed() const { return all_converged && max_ratio <= 2.0; }

ContinuityReport check_continuity(const RitzSolver& solver, SolveFor mode, double fixed,
                                  const std::vector<double>& grid, int nu_max, double tol) {
  if (nu_max < 0) throw InvalidArgument("nu_max must be non-negative");
  if (grid.size() < 2) throw InvalidArgument("continuity needs at least two grid points");

  SweepSpec spec;
  spec.mode = mode;
  spec.fixed = fixed;
  spec.grid = grid;
  spec.levels = nu_max + 1;
  spec.tol = tol > 0.0 ? tol : solver.options().tol;
  spec.mirror = false;
  return continuity_of(sweep_parallel(solver, spec), nu_max);
}

ContinuityReport continuity_of(const SweepTable& table, int nu_max) {
  if (table.rows.size() < 2) throw InvalidArgument("continuity needs at least two grid points");
  for (const auto& row : table.rows)
    if (static_cast<int>(row.W.size()) <= nu_max) throw InvalidArgument("sweep has too few levels");
  ContinuityReport r;
  r.mode = table.mode;
  r.fixed = table.fixed;
  r.nu_max = nu_max;
  r.all_converged = table.all_converged();
  for (std::size_t k = 0; k + 1 < table.rows.size(); ++k) {
    const auto& lo = table.rows[k];
    const auto& hi = table.rows[k + 1];
    const double h = hi.x - lo.x;
    for (int nu = 0; nu <= nu_max; ++nu) {
      const double secant = (hi.W[nu] - lo.W[nu]) / h;
      const double bound = std::max(std::abs(lo.slope[nu]), std::abs(hi.slope[nu]));
      const double ratio = std::abs(secant) / bound;
      r.max_secant = std::max(r.max_secant, std::abs(secant));
      r.max_secant_deviation = std::max(r.max_secant_deviation, std::abs(secant - lo.slope[nu]));
      if (ratio > r.max_ratio) {
        r.max_ratio = ratio;
        r.worst_level = nu;
        r.worst_interval = static_cast<int>(k);
      }
    }
  }
  return r;
}

bool FolkloreDemo::passed() const {
  if (!continuity.passed()) return false;
  const double scale = std::max(1.0, std::abs(energy_folklore));
  return std::abs(energy_at_folklore - energy_folklore) <= 1e-8 * scale;
}

FolkloreDemo folklore_demo(const PhysicalParams& base, int n, int i, double spread, int points,
                           int nu_max, RitzOptions options) {
  validate(base);
  if (base.v_linear != 0.0) throw InvalidArgument("folklore demo requires V_1 = 0");
  if (base.v_coulomb == 0.0) throw InvalidArgument("folklore demo requires V_-1 != 0");
  if (!(spread > 0.0 && spread < 1.0)) throw InvalidArgument("spread must be in (0, 1)");
  if (points < 3 || points % 2 == 0) throw InvalidArgument("points must be odd and >= 3");

  const double s = dimensionless_from_physical(base).params.s;
  const auto family = truncation_roots(n, s, SolveFor::a, 0.0);
  if (i < 1 || i > static_cast<int>(family.size())) throw InvalidArgument("root index out of range");

  FolkloreDemo demo;
  demo.n = n;
  demo.i = i;
  demo.level = i - 1;
  demo.a_root = family[i - 1].root;
  if (demo.a_root == 0.0) throw InvalidArgument("the zero root fixes no frequency");
  if ((demo.a_root > 0.0) != (base.v_coulomb > 0.0))
    throw InvalidArgument("root sign must match the sign of V_-1");
  demo.omega_folklore = folklore_frequency(demo.a_root, base);
  demo.energy_folklore = folklore_energy(n, s, base.k, demo.omega_folklore, base.hbar);
  nu_max = std::max(nu_max, demo.level);

  // a(omega) decreases with omega, so the a grid runs from the top omega down.
  demo.omega = linear_grid(demo.omega_folklore * (1.0 - spread),
                           demo.omega_folklore * (1.0 + spread), points);
  demo.omega[points / 2] = demo.omega_folklore;
  std::vector<double> a_grid(points);
  for (int q = 0; q < points; ++q) {
    auto p = base;
    p.omega = demo.omega[points - 1 - q];
    a_grid[q] = dimensionless_from_physical(p).params.a;
  }
  a_grid[points / 2] = demo.a_root;

  const RitzSolver solver(s, std::move(options));
  SweepSpec spec;
  spec.mode = SolveFor::a;
  spec.grid = a_grid;
  spec.levels = nu_max + 1;
  spec.tol = solver.options().tol;
  spec.mirror = false;
  const auto table = sweep_parallel(solver, spec);
  demo.continuity = continuity_of(table, nu_max);
  demo.energy.resize(points);
  for (int q = 0; q < points; ++q)
    for (double W : table.rows[points - 1 - q].W)
      demo.energy[q].push_back(energy_from_W(W, demo.omega[q], base.hbar, base.k));
  demo.energy_at_folklore = demo.energy[points / 2][demo.level];
  return demo;
}

}  // namespace qes
