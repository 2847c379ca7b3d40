#pragma once

#include <complex>
#include <span>
#include <vector>

#include "seesaw/drive.hpp"
#include "seesaw/params.hpp"

namespace seesaw {

using cplx = std::complex<double>;

/// Intracavity field amplitudes, |a|^2 = stored energy in J.
struct FieldPair {
  cplx a_l{};
  cplx a_r{};

  cplx operator[](Cavity c) const { return c == Cavity::left ? a_l : a_r; }
  double energy(Cavity c) const { return std::norm((*this)[c]); }
};

struct Detunings {
  double omega_laser = 0.0;
  double Delta_l = 0.0;  // omega_laser - omega_cav(theta), rad/s
  double Delta_r = 0.0;
  double delta_l = 0.0;  // Delta * tau
  double delta_r = 0.0;

  double raw(Cavity c) const { return c == Cavity::left ? Delta_l : Delta_r; }
  double normalized(Cavity c) const { return c == Cavity::left ? delta_l : delta_r; }
};

/// Additive cavity shifts on top of the dispersive map (thermal, flapping).
struct CavityShifts {
  double left = 0.0;
  double right = 0.0;
};

Detunings make_detunings(const OpticalParams& optics, double omega_laser, double omega_l, double omega_r);

/// Detunings at torsional angle theta. Throws RangeError outside the map.
Detunings cavity_detunings(const DeviceParams& params, double theta, double omega_laser,
                           const CavityShifts& extra = {});

/// Solves the 2x2 steady-state coupled-mode system
///   (i Delta_L - gamma_L/2) a_L + i kappa a_R + sqrt(f gamma_eL) s_L = 0
///   (i Delta_R - gamma_R/2) a_R + i kappa a_L + sqrt(f gamma_eR) s_R = 0
/// with |s|^2 the input power at each port and f the topology's input fraction.
FieldPair steady_state_fields(const OpticalParams& optics, const Detunings& det, double power_left,
                              double power_right);

/// Convenience form for one CW laser.
FieldPair steady_state_fields(const DeviceParams& params, const Detunings& det, const Laser& laser);

/// Photon number |a|^2 / (hbar omega).
double photon_number(double energy, double omega_laser);

/// Closed form n_R = (kappa tau_R tau_L)^2 / tau_Le / ((d_R^2+1)(d_L^2+1)) * P / (hbar omega),
/// pump on the left port.
double photon_number_right(const OpticalParams& optics, const Detunings& det, double power_in);

/// |a_R|^2/(hbar w) from the linear solve divided by the closed form, in the
/// weak-coupling limit: 1 for standing-wave coupling, 2 for traveling-wave.
double closed_form_convention_factor(CouplingTopology topology);

/// Exact ratio (linear solve)/(closed form) including normal-mode splitting.
double closed_form_ratio(const OpticalParams& optics, const Detunings& det);

/// Forward-transmitted power fraction past one cavity with nothing in the
/// other cavity. Traveling-wave: ((gi-ge)^2/4 + D^2)/((gi+ge)^2/4 + D^2).
/// Standing-wave: (gi^2/4 + D^2)/(g^2/4 + D^2).
double waveguide_transmission(const OpticalParams& optics, Cavity cavity, double delta);

/// Back-reflected power fraction (zero for traveling-wave coupling).
double waveguide_reflection(const OpticalParams& optics, Cavity cavity, double delta);

/// Output fields at one port: forward (transmitted) and backward (reflected).
struct PortOutput {
  cplx forward{};
  cplx backward{};
};
PortOutput port_output(const OpticalParams& optics, Cavity port, cplx s_in, cplx a);

/// Power budget in steady state, used for conservation checks.
struct PowerBudget {
  double input = 0.0;
  double transmitted = 0.0;
  double reflected = 0.0;
  double dissipated = 0.0;
};
PowerBudget power_budget(const OpticalParams& optics, const FieldPair& f, double power_left, double power_right);

/// n_R over a (delta_L, delta_R) grid. rows follow delta_l, columns delta_r.
struct ShuttleMap {
  std::vector<double> delta_l;
  std::vector<double> delta_r;
  std::vector<double> values;  // row-major
  bool normalized = true;

  double at(std::size_t i, std::size_t j) const { return values[i * delta_r.size() + j]; }
};

/// Throws RangeError on empty or non-monotone grids.
ShuttleMap shuttle_map(const DeviceParams& params, std::span<const double> delta_l_grid,
                       std::span<const double> delta_r_grid, double power_in, bool normalize = true);

/// Uniform grid helper.
std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace seesaw
