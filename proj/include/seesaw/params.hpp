#pragma once

#include <array>
#include <string>
#include <vector>

namespace seesaw {

enum class Cavity { left = 0, right = 1 };

inline constexpr int index(Cavity c) { return static_cast<int>(c); }
inline constexpr Cavity other(Cavity c) { return c == Cavity::left ? Cavity::right : Cavity::left; }

/// How each cavity couples to its waveguide.
///
/// standing_wave: the cavity mode leaks into both directions of the bus,
/// input amplitude coupling sqrt(gamma_e/2). traveling_wave: single
/// direction, input amplitude coupling sqrt(gamma_e).
enum class CouplingTopology { standing_wave, traveling_wave };

/// Cavity optics. All frequencies and rates in rad/s; rates are energy
/// decay rates.
struct OpticalParams {
  double omega_l0 = 0.0;
  double omega_r0 = 0.0;
  double gamma_i_l = 0.0;
  double gamma_e_l = 0.0;
  double gamma_i_r = 0.0;
  double gamma_e_r = 0.0;
  double kappa = 0.0;  // inter-cavity field coupling
  CouplingTopology topology = CouplingTopology::standing_wave;

  double omega0(Cavity c) const { return c == Cavity::left ? omega_l0 : omega_r0; }
  double gamma_i(Cavity c) const { return c == Cavity::left ? gamma_i_l : gamma_i_r; }
  double gamma_e(Cavity c) const { return c == Cavity::left ? gamma_e_l : gamma_e_r; }
  double gamma(Cavity c) const { return gamma_i(c) + gamma_e(c); }
  /// Field decay time 2/gamma.
  double tau(Cavity c) const { return 2.0 / gamma(c); }
  /// Fraction of gamma_e that couples into the driven direction.
  double input_fraction() const { return topology == CouplingTopology::standing_wave ? 0.5 : 1.0; }
};

enum class ModeKind { torsional, flapping };

/// One mechanical mode in angle-like coordinates. For the flapping mode the
/// coordinate is displacement divided by the lever arm, so couplings share
/// units with the torsional mode.
struct MechMode {
  ModeKind kind = ModeKind::torsional;
  bool enabled = true;
  double omega_m = 0.0;  // rad/s
  double q_m = 0.0;
  double q_air = 0.5;
  double inertia = 0.0;  // kg m^2
  double ga_l = 0.0;     // d omega_L / d theta, rad/s per rad
  double ga_r = 0.0;

  double damping() const { return omega_m / q_m; }
  double ga(Cavity c) const { return c == Cavity::left ? ga_l : ga_r; }
  double stiffness() const { return inertia * omega_m * omega_m; }
};

/// Cavity frequency shift versus torsional angle, as polynomials without a
/// constant term: shift(theta) = sum_k coeff[k] * theta^(k+1).
struct DispersiveMap {
  std::vector<double> left;
  std::vector<double> right;
  double range = 5e-3;  // |theta| limit, rad
  bool allow_extrapolation = false;

  const std::vector<double>& coefficients(Cavity c) const { return c == Cavity::left ? left : right; }
  /// Throws RangeError when |theta| > range and extrapolation is off.
  double shift(Cavity c, double theta) const;
  double slope(Cavity c, double theta) const;
  bool in_range(double theta) const;
};

/// Two-compartment thermo-optic model.
struct ThermalParams {
  double tau_local = 0.0;  // s
  double tau_cross = 0.0;  // s
  double eta_abs = 1.0;    // absorbed fraction of intrinsic dissipation
  double c_heat = 0.0;     // J/K
  double dw_dT = 0.0;      // rad/s per K, negative = red shift
};

/// Optional delayed torque proportional to the absorbed-power imbalance.
struct PhotothermalParams {
  double gain = 0.0;    // N m per W
  double delay = 0.0;   // s
};

struct DeviceParams {
  OpticalParams optics;
  std::array<MechMode, 2> modes{};  // [0] torsional, [1] flapping
  DispersiveMap map;
  ThermalParams thermal;
  PhotothermalParams photothermal;
  double g_om = 0.0;       // rad/s per m
  double lever_arm = 0.0;  // m
  double k_eff = 0.0;      // N/m at the cavity position
  double temperature = 300.0;

  const MechMode& torsion() const { return modes[0]; }
  MechMode& torsion() { return modes[0]; }
  const MechMode& flap() const { return modes[1]; }
  MechMode& flap() { return modes[1]; }
};

struct DerivedQuantities {
  double gamma_l = 0.0;
  double gamma_r = 0.0;
  double tau_l = 0.0;
  double tau_r = 0.0;
  double k_eff = 0.0;
  double lever_arm = 0.0;
  double ga = 0.0;           // g_om * lever_arm
  double m_eff = 0.0;        // k_eff / Omega_m^2
  double x_zpf = 0.0;
  double g_0 = 0.0;
  double delta_omega_c = 0.0;      // hbar g_om^2 / k_eff
  double delta_omega_c_zpf = 0.0;  // 2 g_0^2 / Omega_m
  double sideband_ratio = 0.0;     // Omega_m / min(gamma)
};

struct ValidationIssue {
  enum class Severity { error, warning };
  Severity severity = Severity::error;
  std::string invariant;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const;
  bool has(const std::string& invariant) const;
  std::string summary() const;
};

ValidationReport validate_params(const DeviceParams& params);

/// Throws ValidationError when k_eff or inertia is not positive.
DerivedQuantities derive_quantities(const DeviceParams& params);

double gamma_from_q(double omega, double q);
double q_from_gamma(double omega, double gamma);
double omega_from_wavelength(double lambda);

/// I = k_eff l^2 / Omega^2.
double inertia_from_stiffness(double k_eff, double lever_arm, double omega_m);

/// Primary values of the fabricated see-saw, as quoted (frequencies in Hz).
namespace reference {
inline constexpr double lambda_l0 = 1541.574e-9;
inline constexpr double lambda_r0 = 1541.219e-9;
inline constexpr double q_loaded = 1.0e4;
inline constexpr double q_intrinsic = 1.6e4;
inline constexpr double kappa_hz = 0.72e9;
inline constexpr double g_om_hz = 2.13e18;  // per m
inline constexpr double lever_arm = 11.5e-6;
inline constexpr double k_eff = 0.11;
inline constexpr double temperature = 300.0;
inline constexpr double torsion_hz = 441e3;
inline constexpr double torsion_q = 1.66e4;
inline constexpr double flap_hz = 514e3;
inline constexpr double flap_q = 1.68e4;
inline constexpr double q_air = 0.5;
inline constexpr double map_range = 5e-3;
// Frozen thermal calibration (tools/calibrate_thermal.cpp).
inline constexpr double tau_local = 4.57e-6;
inline constexpr double tau_cross = 3.2e-6;
inline constexpr double eta_abs = 1.0;
inline constexpr double c_heat = 1.05e-8;
inline constexpr double dw_dT_hz = -9.7e9;
}  // namespace reference

/// Device built from the reference namespace values.
DeviceParams paper_device();

/// Optical rates (gamma_i, gamma_e, kappa) scaled together so that
/// gamma_L = ratio * Omega_torsion; everything else unchanged.
DeviceParams reduced_stiffness(const DeviceParams& params, double ratio = 1e3);

/// Angle where the two resonances coincide (torsional coordinate) and the
/// common frequency there. Throws RangeError if they never cross in range.
struct Crossing {
  double theta = 0.0;
  double omega = 0.0;
};
Crossing resonance_crossing(const DeviceParams& params);

}  // namespace seesaw
