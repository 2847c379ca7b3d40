#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "seesaw/analysis.hpp"
#include "seesaw/config.hpp"
#include "seesaw/dynamics.hpp"
#include "seesaw/optics.hpp"

namespace seesaw {

/// Scenario names accepted by run_experiment.
const std::vector<std::string>& experiment_names();

/// Config layer with the scenario's defaults, inserted between the preset
/// and the user's config so user keys win.
std::string scenario_defaults(const std::string& experiment, const std::string& variant = {});

/// Worker count for sweeps: SEESAW_THREADS if set (>= 1), else hardware.
int sweep_threads();

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Exceptions are
/// rethrown in index order after all workers finish.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

struct Artifact {
  std::string filename;
  std::string content;
};

struct ExperimentOutput {
  nlohmann::json summary;
  std::vector<Artifact> artifacts;
};

struct ExperimentOptions {
  std::string env = "vacuum";              // impulse
  std::optional<double> amplitude;         // shuttle, rad
  bool amplitude_from_limit_cycle = false; // shuttle
  bool fit_gain = true;                    // selfosc, shuttle, strobo, threshold
  double threshold_target = 0.135e-6;      // W, photothermal gain fit
  int threads = 0;                         // 0 = sweep_threads()
};

/// Runs a scenario on a resolved config; artifacts carry the config echo.
ExperimentOutput run_experiment(const std::string& name, const RunConfig& cfg, const ExperimentOptions& opt = {});

// ---------------------------------------------------------------------------
// Building blocks shared with tests and bindings.

/// Probe response timing of the air impulse: probe_t minus its first sample.
struct AirTiming {
  double initial_sign = 0.0;
  double sign_change = -1.0;   // s, first + to - crossing after the early maximum
  double thermal_peak = -1.0;  // s, minimum after the sign change
};
AirTiming air_response_timing(const TimeSeries& ts);

/// Photothermal gain fitted so the limit-cycle threshold sits at `target`;
/// returns params unchanged when the configured gain is already non-zero.
DeviceParams with_fitted_gain(const RunConfig& cfg, double target, bool fit, double* gain_out = nullptr);

/// Self-oscillation drive: config pump forced on and CW.
DriveConfig cw_pump_drive(const RunConfig& cfg);

/// Quasistatic record starting at center + amplitude at rest.
TimeSeries oscillation_record(const DeviceParams& params, const DriveConfig& drive, const SimConfig& sim,
                              double center, double amplitude, int cycles);

/// Stroboscopic probe set around one cavity for an imposed oscillation.
std::vector<StroboTrace> strobo_traces(const DeviceParams& params, const DriveConfig& drive, const SimConfig& sim,
                                       Cavity cavity, std::span<const double> delta_b, double center, double amplitude,
                                       int cycles, double probe_power, int threads);

/// Envelope half-range of theta over the last `cycles` periods.
double recent_amplitude(const TimeSeries& ts, double period, double cycles);

}  // namespace seesaw
