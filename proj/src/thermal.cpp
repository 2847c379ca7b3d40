#include "seesaw/thermal.hpp"

namespace seesaw {

ThermalState thermal_derivatives(const ThermalState& s, double p_abs_l, double p_abs_r, const ThermalParams& tp) {
  const double cross = (s.u_l - s.u_r) / tp.tau_cross;
  return {p_abs_l / tp.c_heat - s.u_l / tp.tau_local - cross,
          p_abs_r / tp.c_heat - s.u_r / tp.tau_local + cross};
}

std::pair<double, double> thermo_optic_shift(const ThermalState& s, const ThermalParams& tp) {
  return {tp.dw_dT * s.u_l, tp.dw_dT * s.u_r};
}

ThermalState thermal_steady_state(double p_abs_l, double p_abs_r, const ThermalParams& tp) {
  // [a+b, -b; -b, a+b] u = P/c with a = 1/tau_local, b = 1/tau_cross.
  const double a = 1.0 / tp.tau_local;
  const double b = 1.0 / tp.tau_cross;
  const double xl = p_abs_l / tp.c_heat;
  const double xr = p_abs_r / tp.c_heat;
  const double d = (a + b) * (a + b) - b * b;
  return {((a + b) * xl + b * xr) / d, ((a + b) * xr + b * xl) / d};
}

double thermal_energy(const ThermalState& s, const ThermalParams& tp) { return tp.c_heat * (s.u_l + s.u_r); }

}  // namespace seesaw
