#pragma once

#include <cstdint>
#include <random>

#include "seesaw/params.hpp"

namespace seesaw {

struct MechState {
  double theta = 0.0;      // rad
  double theta_dot = 0.0;  // rad/s
};

struct NoiseSpec {
  double temperature = 300.0;
  std::uint64_t seed = 1;
  bool enabled = false;
};

/// Radiation-pressure torque -hbar (gA_L n_L + gA_R n_R) in N m.
double optical_torque(const MechMode& mode, double n_l, double n_r);

/// theta'' = -Omega^2 theta - Gamma theta' + torque / I.
MechState mech_derivatives(const MechState& state, double torque, const MechMode& mode);

/// One-sided thermal torque PSD 4 k_B T I Gamma_m, N^2 m^2 / Hz.
double thermal_torque_psd(const MechMode& mode, double temperature);

/// Thermomechanical floor sqrt(4 k_B T I Gamma_m), N m / sqrt(Hz).
double torque_sensitivity(const MechMode& mode, double temperature);

/// Equipartition variance k_B T / (I Omega^2).
double equipartition_variance(const MechMode& mode, double temperature);

/// Seeded Gaussian torque source for one simulation run.
///
/// Each sample is the mean torque over a step dt: zero mean, variance
/// S/(2 dt) with S the one-sided PSD above, so that a Langevin integration
/// reaches equipartition.
class ThermalTorqueNoise {
 public:
  explicit ThermalTorqueNoise(const NoiseSpec& spec);

  double sample(const MechMode& mode, double dt);
  const NoiseSpec& spec() const { return spec_; }

 private:
  NoiseSpec spec_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Free-function form; draws from the given generator.
double thermal_torque_sample(ThermalTorqueNoise& noise, const MechMode& mode, double dt);

}  // namespace seesaw
