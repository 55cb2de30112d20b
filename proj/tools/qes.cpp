// qes: truncation roots, variational spectra, figure data and validation
// runs for the radial Coulomb + linear + oscillator problem.
//
// Exit status: 0 success, 1 failed validation, 2 usage error, 3 numerical
// failure. Grid points are evaluated on OMP_NUM_THREADS workers.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qes/error.hpp"
#include "qes/frobenius.hpp"
#include "qes/model.hpp"
#include "qes/output.hpp"
#include "qes/ritz.hpp"
#include "qes/sweep.hpp"
#include "qes/validate.hpp"

namespace {

using json = nlohmann::ordered_json;

enum Exit { kOk = 0, kValidationFailed = 1, kUsage = 2, kNumerical = 3 };

qes::RitzOptions ritz_options(int max_basis, double tol) {
  if (max_basis < 12 || max_basis > qes::ReducedGaussianBasis::kMaxSupportedSize)
    throw qes::InvalidArgument("--max-basis must be in 12.." +
                               std::to_string(qes::ReducedGaussianBasis::kMaxSupportedSize));
  qes::RitzOptions o;
  o.schedule.clear();
  for (int n = 12; n <= max_basis; n += 4) o.schedule.push_back(n);
  if (o.schedule.back() != max_basis) o.schedule.push_back(max_basis);
  o.tol = tol;
  return o;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw qes::InvalidArgument("cannot open " + path + " for writing");
  out << text;
  if (!out) throw qes::Error("failed writing " + path);
}

// ---------------------------------------------------------------- roots

struct RootsArgs {
  int n = 0;
  double s = 0.0;
  std::string mode = "a";
  double fixed_a = 0.0;
  double fixed_b = 0.0;
  std::string output;
};

int run_roots(const RootsArgs& args) {
  const auto mode = qes::parse_solve_for(args.mode);
  const double fixed = mode == qes::SolveFor::a ? args.fixed_b : args.fixed_a;
  const auto text = qes::roots_csv(qes::truncation_roots(args.n, args.s, mode, fixed));
  if (args.output.empty())
    std::cout << text;
  else
    write_file(args.output, text);
  return kOk;
}

// ------------------------------------------------------------- spectrum

struct SpectrumArgs {
  double s = 0.0;
  double a = 0.0;
  double b = 0.0;
  int count = 3;
  double tol = 1e-10;
  int max_basis = 64;
  double omega = 0.0;
  double hbar = 1.0;
  double k = 0.0;
  bool allow_unconverged = false;
};

int run_spectrum(const SpectrumArgs& args, bool have_omega) {
  const qes::RitzSolver solver(args.s, ritz_options(args.max_basis, args.tol));
  const auto spec = solver.spectrum(args.a, args.b, args.count, args.tol);
  std::vector<std::string> header{"nu", "W", "convergence"};
  if (have_omega) header.push_back("E");
  std::cout << qes::csv_line(header);
  for (int nu = 0; nu < args.count; ++nu) {
    std::vector<std::string> cells{std::to_string(nu), qes::format_number(spec.eigenvalues[nu]),
                                   qes::format_number(spec.convergence[nu])};
    if (have_omega)
      cells.push_back(
          qes::format_number(qes::energy_from_W(spec.eigenvalues[nu], args.omega, args.hbar, args.k)));
    std::cout << qes::csv_line(cells);
  }
  if (!spec.converged && !args.allow_unconverged) {
    std::cerr << "qes: spectrum not converged at N=" << spec.basis_size << "\n";
    return kNumerical;
  }
  return kOk;
}

// --------------------------------------------------------------- figure

struct FigureArgs {
  std::string which;
  double s = 0.0;
  double fixed = 0.0;
  int nu_max = -1;
  int n_max = -1;
  double grid_min = std::nan("");
  double grid_max = std::nan("");
  int points = 481;
  double tol = 1e-10;
  int max_basis = 96;
  double w_min = std::nan("");
  double w_max = std::nan("");
  bool no_mirror = false;
  bool allow_unconverged = false;
  std::string csv;
  std::string points_csv;
  std::string svg;
};

int run_figure(FigureArgs args) {
  const bool vary_a = args.which == "wb0";
  if (args.nu_max < 0) args.nu_max = vary_a ? 10 : 15;
  if (args.n_max < 0) args.n_max = vary_a ? 10 : 15;
  if (std::isnan(args.grid_min)) args.grid_min = vary_a ? -40.0 : -12.0;
  if (std::isnan(args.grid_max)) args.grid_max = vary_a ? 40.0 : 12.0;
  if (args.csv.empty()) args.csv = "figure_" + args.which + ".csv";
  if (args.points_csv.empty()) args.points_csv = "figure_" + args.which + "_points.csv";
  if (args.svg.empty()) args.svg = "figure_" + args.which + ".svg";

  const qes::RitzSolver solver(args.s, ritz_options(args.max_basis, args.tol));
  qes::SweepSpec spec;
  spec.mode = vary_a ? qes::SolveFor::a : qes::SolveFor::b;
  spec.fixed = args.fixed;
  spec.grid = qes::linear_grid(args.grid_min, args.grid_max, args.points);
  spec.levels = args.nu_max + 1;
  spec.tol = args.tol;
  spec.mirror = !args.no_mirror;
  auto table = qes::sweep_parallel(solver, spec);
  table.overlay = qes::truncation_overlay(args.n_max, args.s, spec.mode, args.fixed);

  qes::FigureStyle style;
  style.title = vary_a ? "W_nu(a) at b = " + qes::format_number(args.fixed)
                       : "W_nu(b) at a = " + qes::format_number(args.fixed);
  style.locus_order = args.n_max;
  if (!std::isnan(args.w_min)) style.w_min = args.w_min;
  if (!std::isnan(args.w_max)) style.w_max = args.w_max;

  write_file(args.csv, qes::sweep_csv(table));
  write_file(args.points_csv, qes::overlay_csv(table.overlay));
  write_file(args.svg, qes::sweep_svg(table, style));
  std::cout << "wrote " << args.csv << ", " << args.points_csv << ", " << args.svg << "\n";

  if (!table.all_converged()) {
    int bad = 0;
    for (const auto& row : table.rows) bad += !(row.converged && row.mirror_converged);
    std::cerr << "qes: " << bad << " grid points did not converge\n";
    if (!args.allow_unconverged) return kNumerical;
  }
  return kOk;
}

// ------------------------------------------------------------- validate

struct ValidateArgs {
  std::string suite = "all";
  int n = -1;
  double s = 0.0;
  std::string mode = "a";
  double fixed = 0.0;
  double a = 1.0;
  double b = 0.5;
  int nu = 0;
  double delta = 1e-3;
  double grid_min = -12.0;
  double grid_max = 12.0;
  int points = 97;
  int nu_max = 6;
  int max_basis = 64;
  std::string report;
};

json intersection_records(const qes::RitzSolver& solver, const ValidateArgs& args) {
  const auto mode = qes::parse_solve_for(args.mode);
  const int lo = args.n >= 0 ? args.n : 0;
  const int hi = args.n >= 0 ? args.n : (mode == qes::SolveFor::a ? 10 : 15);
  json out = json::array();
  for (int n = lo; n <= hi; ++n)
    for (const auto& r : qes::check_intersections(solver, n, mode, args.fixed))
      out.push_back({{"check", "intersection"},
                     {"n", r.n},
                     {"i", r.i},
                     {"s", r.s},
                     {"mode", std::string(qes::to_string(r.mode))},
                     {"fixed", r.fixed},
                     {"root", r.root},
                     {"W_truncation", r.W_truncation},
                     {"level", r.level},
                     {"W_variational", r.W_variational},
                     {"mirror_level", r.mirror_level},
                     {"mirror_W_variational", r.mirror_W_variational},
                     {"deviation", std::max(r.abs_deviation, r.mirror_abs_deviation)},
                     {"abs_deviation", r.abs_deviation},
                     {"mirror_abs_deviation", r.mirror_abs_deviation},
                     {"tolerance", r.tolerance},
                     {"converged", r.converged},
                     {"pass", r.passed()}});
  return out;
}

json parabola_records(const ValidateArgs& args) {
  const int n = args.n >= 0 ? args.n : 15;
  const double dev = qes::check_parabola(n, args.s, args.fixed);
  const double tol = 1e-10;
  return json::array({{{"check", "parabola"},
                       {"n", n},
                       {"s", args.s},
                       {"a_fixed", args.fixed},
                       {"deviation", dev},
                       {"tolerance", tol},
                       {"pass", dev <= tol}}});
}

json hft_records(const qes::RitzSolver& solver, const ValidateArgs& args) {
  const auto r = qes::check_hellmann_feynman(solver, {args.s, args.a, args.b, 0.0}, args.nu, args.delta);
  const double tol = 1e-4;
  return json::array({{{"check", "hellmann_feynman"},
                       {"s", args.s},
                       {"a", args.a},
                       {"b", args.b},
                       {"nu", args.nu},
                       {"delta", args.delta},
                       {"basis_size", r.basis_size},
                       {"fd_a", r.fd_a},
                       {"exp_a", r.exp_a},
                       {"fd_b", r.fd_b},
                       {"exp_b", r.exp_b},
                       {"deviation", std::max(r.relative_deviation_a(), r.relative_deviation_b())},
                       {"tolerance", tol},
                       {"converged", r.converged},
                       {"pass", r.passed(tol)}}});
}

json continuity_records(const qes::RitzSolver& solver, const ValidateArgs& args) {
  const auto mode = qes::parse_solve_for(args.mode);
  const auto grid = qes::linear_grid(args.grid_min, args.grid_max, args.points);
  const auto r = qes::check_continuity(solver, mode, args.fixed, grid, args.nu_max);
  return json::array({{{"check", "continuity"},
                       {"s", args.s},
                       {"mode", std::string(qes::to_string(mode))},
                       {"fixed", args.fixed},
                       {"grid_min", args.grid_min},
                       {"grid_max", args.grid_max},
                       {"points", args.points},
                       {"nu_max", args.nu_max},
                       {"max_secant", r.max_secant},
                       {"deviation", r.max_ratio},
                       {"tolerance", 2.0},
                       {"worst_level", r.worst_level},
                       {"worst_interval", r.worst_interval},
                       {"converged", r.all_converged},
                       {"pass", r.passed()}}});
}

int run_validate(const ValidateArgs& args) {
  const qes::RitzSolver solver(args.s, ritz_options(args.max_basis, 1e-10));
  const bool all = args.suite == "all";
  json records = json::array();
  auto append = [&](const json& more) {
    for (const auto& r : more) records.push_back(r);
  };
  if (all || args.suite == "intersections") append(intersection_records(solver, args));
  if (all || args.suite == "parabola") append(parabola_records(args));
  if (all || args.suite == "hft") append(hft_records(solver, args));
  if (all || args.suite == "continuity") append(continuity_records(solver, args));

  bool passed = true;
  for (const auto& r : records) passed = passed && r["pass"].get<bool>();
  const json report{{"suite", args.suite}, {"passed", passed}, {"records", records}};
  const auto text = report.dump(2) + "\n";
  if (args.report.empty()) {
    std::cout << text;
  } else {
    write_file(args.report, text);
    int failed = 0;
    for (const auto& r : records) failed += !r["pass"].get<bool>();
    std::cout << records.size() << " checks, " << failed << " failed; report in " << args.report
              << "\n";
  }
  return passed ? kOk : kValidationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncation roots, variational spectra and validation for the radial problem\n"
               "  [(1/r) d/dr r d/dr - s^2/r^2 - a/r - b r - r^2 + W] R = 0"};
  app.set_config("--config", "", "TOML file with option defaults; command-line flags take precedence");
  app.require_subcommand(1);

  RootsArgs roots;
  auto* roots_cmd = app.add_subcommand("roots", "Truncation roots of order n with W and node counts");
  roots_cmd->add_option("--n", roots.n, "Truncation order")->required()->check(CLI::NonNegativeNumber);
  roots_cmd->add_option("--s", roots.s, "s = |gamma|")->capture_default_str()->check(CLI::NonNegativeNumber);
  roots_cmd->add_option("--mode", roots.mode, "Coupling solved for")->capture_default_str()->check(CLI::IsMember({"a", "b"}));
  roots_cmd->add_option("--fixed-b", roots.fixed_b, "b held fixed in mode a")->capture_default_str();
  roots_cmd->add_option("--fixed-a", roots.fixed_a, "a held fixed in mode b")->capture_default_str();
  roots_cmd->add_option("--output", roots.output, "CSV file (default: standard output)");

  SpectrumArgs spectrum;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Lowest variational levels at one (s, a, b)");
  spectrum_cmd->add_option("--s", spectrum.s, "s = |gamma|")->capture_default_str()->check(CLI::NonNegativeNumber);
  spectrum_cmd->add_option("--a", spectrum.a, "Coulomb coupling")->capture_default_str();
  spectrum_cmd->add_option("--b", spectrum.b, "Linear coupling")->capture_default_str();
  spectrum_cmd->add_option("--count", spectrum.count, "Number of levels")->capture_default_str()->check(CLI::PositiveNumber);
  spectrum_cmd->add_option("--tol", spectrum.tol, "Convergence tolerance on W")->capture_default_str()->check(CLI::PositiveNumber);
  spectrum_cmd->add_option("--max-basis", spectrum.max_basis, "Largest basis size")->capture_default_str();
  auto* omega_opt = spectrum_cmd->add_option("--omega", spectrum.omega, "Oscillator frequency; adds an E column")->check(CLI::PositiveNumber);
  spectrum_cmd->add_option("--hbar", spectrum.hbar, "hbar for E")->capture_default_str()->check(CLI::PositiveNumber);
  spectrum_cmd->add_option("--k", spectrum.k, "Axial wavenumber for E")->capture_default_str();
  spectrum_cmd->add_flag("--allow-unconverged", spectrum.allow_unconverged, "Exit 0 even if not converged");

  FigureArgs figure;
  auto* figure_cmd = app.add_subcommand("figure", "Curves and truncation points: wb0 varies a at fixed b, wa0 varies b at fixed a");
  figure_cmd->add_option("which", figure.which, "wb0 or wa0")->required()->check(CLI::IsMember({"wb0", "wa0"}));
  figure_cmd->add_option("--s", figure.s, "s = |gamma|")->capture_default_str()->check(CLI::NonNegativeNumber);
  figure_cmd->add_option("--fixed", figure.fixed, "Value of the coupling held fixed")->capture_default_str();
  figure_cmd->add_option("--nu-max", figure.nu_max, "Highest level drawn (default 10 for wb0, 15 for wa0)");
  figure_cmd->add_option("--n-max", figure.n_max, "Highest truncation order overlaid (default 10 for wb0, 15 for wa0)");
  figure_cmd->add_option("--min", figure.grid_min, "Grid start (default -40 for wb0, -12 for wa0)");
  figure_cmd->add_option("--max", figure.grid_max, "Grid end (default 40 for wb0, 12 for wa0)");
  figure_cmd->add_option("--points", figure.points, "Grid points")->capture_default_str()->check(CLI::Range(2, 100000));
  figure_cmd->add_option("--tol", figure.tol, "Convergence tolerance on W")->capture_default_str()->check(CLI::PositiveNumber);
  figure_cmd->add_option("--max-basis", figure.max_basis, "Largest basis size")->capture_default_str();
  figure_cmd->add_option("--w-min", figure.w_min, "Lower edge of the plotted W window");
  figure_cmd->add_option("--w-max", figure.w_max, "Upper edge of the plotted W window");
  figure_cmd->add_flag("--no-mirror", figure.no_mirror, "Skip the curves at negated couplings");
  figure_cmd->add_flag("--allow-unconverged", figure.allow_unconverged, "Exit 0 even if some points did not converge");
  figure_cmd->add_option("--csv", figure.csv, "Curve CSV (default figure_<which>.csv)");
  figure_cmd->add_option("--points-csv", figure.points_csv, "Truncation point CSV (default figure_<which>_points.csv)");
  figure_cmd->add_option("--svg", figure.svg, "SVG output (default figure_<which>.svg)");

  ValidateArgs validate;
  auto* validate_cmd = app.add_subcommand("validate", "Run validation checks and emit a JSON report");
  validate_cmd->add_option("--suite", validate.suite, "all, hft, intersections, parabola or continuity")->capture_default_str()->check(CLI::IsMember({"all", "hft", "intersections", "parabola", "continuity"}));
  validate_cmd->add_option("--n", validate.n, "Single truncation order (default: 0..10 in mode a, 0..15 in mode b; 15 for parabola)")->check(CLI::NonNegativeNumber);
  validate_cmd->add_option("--s", validate.s, "s = |gamma|")->capture_default_str()->check(CLI::NonNegativeNumber);
  validate_cmd->add_option("--mode", validate.mode, "Coupling solved for / varied")->capture_default_str()->check(CLI::IsMember({"a", "b"}));
  validate_cmd->add_option("--fixed", validate.fixed, "Value of the other coupling")->capture_default_str();
  validate_cmd->add_option("--a", validate.a, "a for the Hellmann-Feynman check")->capture_default_str();
  validate_cmd->add_option("--b", validate.b, "b for the Hellmann-Feynman check")->capture_default_str();
  validate_cmd->add_option("--nu", validate.nu, "Level for the Hellmann-Feynman check")->capture_default_str()->check(CLI::NonNegativeNumber);
  validate_cmd->add_option("--delta", validate.delta, "Finite-difference step")->capture_default_str()->check(CLI::PositiveNumber);
  validate_cmd->add_option("--grid-min", validate.grid_min, "Continuity grid start")->capture_default_str();
  validate_cmd->add_option("--grid-max", validate.grid_max, "Continuity grid end")->capture_default_str();
  validate_cmd->add_option("--points", validate.points, "Continuity grid points")->capture_default_str()->check(CLI::Range(2, 100000));
  validate_cmd->add_option("--nu-max", validate.nu_max, "Highest level in the continuity check")->capture_default_str()->check(CLI::NonNegativeNumber);
  validate_cmd->add_option("--max-basis", validate.max_basis, "Largest basis size")->capture_default_str();
  validate_cmd->add_option("--report", validate.report, "JSON report file (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*roots_cmd) return run_roots(roots);
    if (*spectrum_cmd) return run_spectrum(spectrum, omega_opt->count() > 0);
    if (*figure_cmd) return run_figure(figure);
    if (*validate_cmd) return run_validate(validate);
  } catch (const qes::InvalidArgument& e) {
    std::cerr << "qes: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "qes: numerical failure: " << e.what() << "\n";
    return kNumerical;
  }
  return kUsage;
}
