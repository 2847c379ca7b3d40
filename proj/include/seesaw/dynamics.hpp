#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "seesaw/drive.hpp"
#include "seesaw/mechanics.hpp"
#include "seesaw/params.hpp"
#include "seesaw/thermal.hpp"

namespace seesaw {

enum class Method { full, quasistatic };
enum class Environment { vacuum, air };

struct SimConfig {
  Method method = Method::quasistatic;
  double dt = 5e-9;
  double duration = 20e-6;
  int output_stride = 1;
  Environment environment = Environment::vacuum;
  NoiseSpec noise;
  bool thermal_enabled = false;
  bool retardation_enabled = true;  // quasistatic only
  bool allow_many_steps = false;    // lift the 1e10-step guard
  bool start_at_equilibrium = true;
  double theta0 = 0.0;  // torsional offset added to the start point
  double theta_dot0 = 0.0;
  double flap0 = 0.0;
};

/// Uniformly sampled simulation record.
///
/// Columns: t, theta_t, theta_f, n_l, n_r, probe_t, right_out_w, u_l, u_r.
/// probe_t is the probe's forward transmission at its port (0 without a
/// probe); right_out_w is all light leaving the right waveguide forward.
struct TimeSeries {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;
  /// Free-form metadata (config echo, diagnostics), written as CSV comments.
  std::vector<std::pair<std::string, std::string>> header;

  std::size_t size() const { return columns.empty() ? 0 : columns.front().size(); }
  bool has(std::string_view name) const;
  /// Throws RangeError for unknown names.
  std::span<const double> column(std::string_view name) const;
  std::vector<double>& column_mut(std::string_view name);
  void add_column(std::string name, std::vector<double> values);
  std::string meta(std::string_view key) const;
};

/// Precondition checks shared by both integrators; throws ValidationError.
void check_sim_config(const DeviceParams& params, const SimConfig& sim);

/// Dispatches on sim.method.
TimeSeries simulate(const DeviceParams& params, const DriveConfig& drive, const SimConfig& sim);

/// Integrates the complex cavity fields together with the mechanical,
/// thermal and photothermal states (Lawson RK4 on the optical decay and
/// detuning; Euler-Maruyama torque kicks when noise is on).
TimeSeries simulate_full(const DeviceParams& params, const DriveConfig& drive, const SimConfig& sim);

/// Adiabatically eliminated optics: fields follow the instantaneous steady
/// state, optionally with the first-order retardation a = a_ss + M^-1 da_ss/dt.
TimeSeries simulate_quasistatic(const DeviceParams& params, const DriveConfig& drive, const SimConfig& sim);

struct PulseSpec {
  double width = 10e-9;
  double peak_power = 4e-3;
  double detuning = 0.0;  // normalized, relative to the left cavity
  double delay = 0.0;
};

/// Pump pulse into the left cavity, readout through the probe.
TimeSeries impulse_response(const DeviceParams& params, const Laser& probe, const PulseSpec& pulse,
                            Environment env, SimConfig sim);

/// Mechanical mode with the environment's damping.
MechMode effective_mode(const MechMode& mode, Environment env);

struct BackactionRates {
  double gamma_opt = 0.0;    // > 0 cools
  double omega_shift = 0.0;  // > 0 stiffens
};

/// Sideband-unresolved radiation-pressure damping and spring shift for a
/// laser at normalized detuning delta on one cavity holding n_cav photons.
BackactionRates backaction_rates(const DeviceParams& params, Cavity cavity, double delta, double n_cav,
                                 const MechMode& mode);

/// Static torsional/flapping deflection and thermal state under the CW part
/// of the drive.
struct StaticPoint {
  std::array<double, 2> theta{};
  ThermalState thermal;
  double photothermal = 0.0;
};
StaticPoint static_equilibrium(const DeviceParams& params, const DriveConfig& drive, Environment env,
                               bool thermal_enabled);

enum class LimitCycleStatus { converged, no_cycle, range_exceeded };

struct LimitCycle {
  double amplitude = 0.0;  // rad
  double center = 0.0;     // static offset of the oscillation, rad
  double frequency = 0.0;  // rad/s
  double work = 0.0;       // optical work per cycle, J
  double dissipation = 0.0;
  bool converged = false;
  LimitCycleStatus status = LimitCycleStatus::no_cycle;
  std::string diagnostic;
};

struct LimitCycleOptions {
  int samples = 1024;  // phase samples per cycle
  int grid = 96;       // amplitude scan points
  double amp_min_fraction = 1e-4;
  double amp_max = 0.0;  // 0 = dispersive map range
  int center_iterations = 2;
};

/// Per-cycle optical work for theta = center + amplitude cos(Omega t).
struct CycleWork {
  double radiation = 0.0;
  double photothermal = 0.0;
  double mean_torque = 0.0;
  double total() const { return radiation + photothermal; }
};
CycleWork cycle_work(const DeviceParams& params, const DriveConfig& drive, ModeKind mode, double amplitude,
                     double center, int samples);

/// Energy-balance limit cycle: optical work per cycle against
/// pi I Gamma Omega theta0^2, oscillation at Omega_m.
LimitCycle find_limit_cycle(const DeviceParams& params, const DriveConfig& drive, ModeKind mode = ModeKind::torsional,
                            const LimitCycleOptions& opt = {});

struct ThresholdResult {
  bool found = false;
  double power = 0.0;      // W
  double amplitude = 0.0;  // marginal limit-cycle amplitude
  double lo = 0.0;
  double hi = 0.0;
  std::string diagnostic;
};

/// Bisection (log scale) on pump power for existence of a limit cycle.
ThresholdResult find_threshold(const DeviceParams& params, const DriveConfig& drive_template,
                               ModeKind mode = ModeKind::torsional, double p_lo = 1e-12, double p_hi = 1.0,
                               const LimitCycleOptions& opt = {});

/// Photothermal gain (N m/W) that places the limit-cycle existence threshold
/// at target_power. A fitted value, not a measured one.
double calibrate_photothermal_gain(const DeviceParams& params, const DriveConfig& drive_template,
                                   double target_power, const LimitCycleOptions& opt = {});

}  // namespace seesaw
