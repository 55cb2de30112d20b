#include "qes/model.hpp"

#include <cmath>

#include "qes/error.hpp"

namespace qes {

void validate(const PhysicalParams& p) {
  if (!(p.mass > 0.0)) throw InvalidArgument("mass must be positive");
  if (!(p.hbar > 0.0)) throw InvalidArgument("hbar must be positive");
  if (!(p.omega > 0.0)) throw InvalidArgument("omega must be positive");
  if (!(p.v_inverse_square >= 0.0))
    throw InvalidArgument("inverse-square strength V_{-2} must be non-negative");
  if (!std::isfinite(p.v_coulomb) || !std::isfinite(p.v_linear) || !std::isfinite(p.k))
    throw InvalidArgument("potential strengths and k must be finite");
}

ScaledProblem dimensionless_from_physical(const PhysicalParams& p) {
  validate(p);
  const double m = p.mass;
  const double hbar = p.hbar;
  const double w = p.omega;
  ScaledProblem out;
  out.length_scale = std::sqrt(hbar / (m * w));
  out.params.a = 2.0 * std::sqrt(m) * p.v_coulomb / (std::pow(hbar, 1.5) * std::sqrt(w));
  out.params.b = 2.0 * p.v_linear / (std::sqrt(m * hbar) * std::pow(w, 1.5));
  const double l = static_cast<double>(p.l);
  out.params.s = std::sqrt(2.0 * m * p.v_inverse_square / (hbar * hbar) + l * l);
  out.params.k = p.k;
  return out;
}

double energy_from_W(double W, double omega, double hbar, double k) {
  if (!(omega > 0.0) || !(hbar > 0.0))
    throw InvalidArgument("energy_from_W: omega and hbar must be positive");
  return 0.5 * hbar * omega * (W + k * k);
}

EnergyValue make_energy_value(double W, int nu, double s, double omega, double hbar, double k) {
  return EnergyValue{W, energy_from_W(W, omega, hbar, k), nu, s};
}

double folklore_frequency(double a_root, const PhysicalParams& p) {
  if (a_root == 0.0) throw InvalidArgument("folklore frequency undefined for a zero root");
  if (p.v_coulomb == 0.0)
    throw InvalidArgument("folklore frequency undefined without a Coulomb term");
  if (!(p.mass > 0.0) || !(p.hbar > 0.0))
    throw InvalidArgument("mass and hbar must be positive");
  return 4.0 * p.mass * p.v_coulomb * p.v_coulomb /
         (p.hbar * p.hbar * p.hbar * a_root * a_root);
}

double folklore_energy(int n, double s, double k, double omega_nl, double hbar) {
  if (n < 0) throw InvalidArgument("truncation order must be non-negative");
  if (!(omega_nl > 0.0)) throw InvalidArgument("frequency must be positive");
  return 0.5 * hbar * omega_nl * (2.0 * (n + s + 1.0) + k * k);
}

}  // namespace qes
