#pragma once

#include <utility>

#include "seesaw/params.hpp"

namespace seesaw {

/// Excess temperatures of the two cavity regions, K.
struct ThermalState {
  double u_l = 0.0;
  double u_r = 0.0;
};

/// du_L/dt = P_L/c - u_L/tau_local - (u_L - u_R)/tau_cross, and mirrored.
ThermalState thermal_derivatives(const ThermalState& s, double p_abs_l, double p_abs_r, const ThermalParams& tp);

/// Resonance shifts dw_dT * u per cavity, rad/s.
std::pair<double, double> thermo_optic_shift(const ThermalState& s, const ThermalParams& tp);

/// Fixed point for constant absorbed powers.
ThermalState thermal_steady_state(double p_abs_l, double p_abs_r, const ThermalParams& tp);

/// c_heat (u_L + u_R).
double thermal_energy(const ThermalState& s, const ThermalParams& tp);

}  // namespace seesaw
