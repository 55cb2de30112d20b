#pragma once

// Physical and dimensionless parameter sets of the radial problem
//
//   [ (1/r) d/dr r d/dr - s^2/r^2 - a/r - b r - r^2 + W ] R(r) = 0,
//
// the conversion between them, and the energy bookkeeping around W.

namespace qes {

/// Dimensional inputs: H = -hbar^2/(2m) Lap + V_{-2}/r^2 + V_{-1}/r + V_1 r + m omega^2 r^2 / 2.
struct PhysicalParams {
  double mass = 1.0;
  double hbar = 1.0;
  double omega = 1.0;
  double v_inverse_square = 0.0;  ///< V_{-2} >= 0
  double v_coulomb = 0.0;         ///< V_{-1}
  double v_linear = 0.0;          ///< V_1
  int l = 0;                      ///< only l^2 enters
  double k = 0.0;                 ///< axial wavenumber in units of 1/L
};

/// Dimensionless radial problem: s = |gamma| >= 0 and the Coulomb/linear
/// couplings a, b. k only shifts the energy.
struct DimensionlessParams {
  double s = 0.0;
  double a = 0.0;
  double b = 0.0;
  double k = 0.0;
};

struct ScaledProblem {
  DimensionlessParams params;
  double length_scale = 1.0;  ///< L = sqrt(hbar / (m omega))
};

/// An eigenvalue of the radial problem together with its physical energy.
struct EnergyValue {
  double W = 0.0;
  double E = 0.0;
  int nu = 0;
  double s = 0.0;
};

/// Throws InvalidArgument unless m, hbar, omega > 0 and V_{-2} >= 0.
void validate(const PhysicalParams& p);

ScaledProblem dimensionless_from_physical(const PhysicalParams& p);

/// E = (hbar omega / 2)(W + k^2).
double energy_from_W(double W, double omega, double hbar, double k);

EnergyValue make_energy_value(double W, int nu, double s, double omega, double hbar, double k);

/// The oscillator frequency for which a truncation root `a_root` reproduces
/// the Coulomb strength of `p`: omega = 4 m V_{-1}^2 / (hbar^3 a_root^2).
/// p.omega is ignored.
double folklore_frequency(double a_root, const PhysicalParams& p);

/// (hbar omega_nl / 2)[2(n + s + 1) + k^2].
double folklore_energy(int n, double s, double k, double omega_nl, double hbar);

}  // namespace qes
