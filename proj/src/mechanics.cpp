#include "seesaw/mechanics.hpp"

#include <cmath>

#include "seesaw/constants.hpp"
#include "seesaw/errors.hpp"

namespace seesaw {

using constants::hbar;
using constants::k_boltzmann;

double optical_torque(const MechMode& mode, double n_l, double n_r) {
  return -hbar * (mode.ga_l * n_l + mode.ga_r * n_r);
}

MechState mech_derivatives(const MechState& s, double torque, const MechMode& mode) {
  return {s.theta_dot,
          -mode.omega_m * mode.omega_m * s.theta - mode.damping() * s.theta_dot + torque / mode.inertia};
}

double thermal_torque_psd(const MechMode& mode, double temperature) {
  return 4.0 * k_boltzmann * temperature * mode.inertia * mode.damping();
}

double torque_sensitivity(const MechMode& mode, double temperature) {
  return std::sqrt(thermal_torque_psd(mode, temperature));
}

double equipartition_variance(const MechMode& mode, double temperature) {
  return k_boltzmann * temperature / (mode.inertia * mode.omega_m * mode.omega_m);
}

ThermalTorqueNoise::ThermalTorqueNoise(const NoiseSpec& spec) : spec_(spec), engine_(spec.seed) {
  if (!(spec.temperature >= 0.0)) throw ValidationError("noise temperature must be >= 0");
}

double ThermalTorqueNoise::sample(const MechMode& mode, double dt) {
  if (!(dt > 0.0)) throw ValidationError("thermal torque sample needs dt > 0");
  // Draw even at T = 0 so the stream position does not depend on temperature.
  const double z = normal_(engine_);
  if (!spec_.enabled || spec_.temperature == 0.0) return 0.0;
  return z * std::sqrt(0.5 * thermal_torque_psd(mode, spec_.temperature) / dt);
}

double thermal_torque_sample(ThermalTorqueNoise& noise, const MechMode& mode, double dt) {
  return noise.sample(mode, dt);
}

}  // namespace seesaw
