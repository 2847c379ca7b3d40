#include "seesaw/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "seesaw/constants.hpp"
#include "seesaw/errors.hpp"
#include "seesaw/io.hpp"
#include "seesaw/optics.hpp"

namespace seesaw {

namespace {

using json = nlohmann::json;
using constants::pi;
using constants::two_pi;

double period_of(const DeviceParams& p) { return two_pi / p.torsion().omega_m; }

Laser& enable_cw(Laser& l) {
  l.enabled = true;
  l.waveform = Waveform::cw;
  return l;
}

Artifact csv_artifact(const std::string& name, const CsvTable& table, const RunConfig& cfg) {
  return {name, render_csv(table, canonical_config(cfg), cfg.sim.noise.seed)};
}

Artifact csv_artifact(const std::string& name, const TimeSeries& ts, const RunConfig& cfg) {
  return {name, render_csv(ts, canonical_config(cfg), cfg.sim.noise.seed)};
}

CsvTable spectrum_table(const Spectrum& s) {
  CsvTable t;
  t.names = {"frequency_hz", "magnitude", "power"};
  t.columns = {s.frequency, s.magnitude, s.power};
  t.meta = {{"window", s.window_name()}, {"bin_width_hz", format_double(s.bin_width)}};
  return t;
}

json peaks_json(const std::vector<SpectralPeak>& peaks) {
  json a = json::array();
  for (const auto& p : peaks) a.push_back({{"frequency_hz", p.frequency}, {"magnitude", p.magnitude}});
  return a;
}

const SpectralPeak* nearest_peak(const std::vector<SpectralPeak>& peaks, double f) {
  const SpectralPeak* best = nullptr;
  for (const auto& p : peaks)
    if (!best || std::abs(p.frequency - f) < std::abs(best->frequency - f)) best = &p;
  return best;
}

json limit_cycle_json(const LimitCycle& lc) {
  const char* status = lc.status == LimitCycleStatus::converged       ? "converged"
                       : lc.status == LimitCycleStatus::range_exceeded ? "range_exceeded"
                                                                       : "no_cycle";
  return {{"status", status},         {"amplitude_rad", lc.amplitude}, {"center_rad", lc.center},
          {"frequency_hz", lc.frequency / two_pi}, {"work_j", lc.work},  {"dissipation_j", lc.dissipation},
          {"diagnostic", lc.diagnostic}};
}

double crossing_amplitude(const DeviceParams& p, const DriveConfig& drive, Environment env, double* center_out) {
  const auto eq = static_equilibrium(p, drive, env, false);
  const double center = eq.theta[0];
  if (center_out) *center_out = center;
  return std::abs(resonance_crossing(p).theta - center);
}

// ---------------------------------------------------------------------------

ExperimentOutput run_spectrum(const RunConfig& cfg) {
  const auto& p = cfg.params;
  const auto& o = p.optics;
  const double span_broad = 2.5 * std::abs(o.omega_r0 - o.omega_l0) + 4.0 * std::max(o.gamma(Cavity::left), o.gamma(Cavity::right));
  const double mid = 0.5 * (o.omega_l0 + o.omega_r0);

  auto sweep = [&](double center, double half, std::size_t n) {
    CsvTable t;
    t.names = {"offset_hz", "t_left_port", "t_right_port"};
    t.columns.assign(3, {});
    for (double w : linspace(center - half, center + half, n)) {
      const auto det = cavity_detunings(p, 0.0, w);
      const auto fl = steady_state_fields(o, det, 1.0, 0.0);
      const auto fr = steady_state_fields(o, det, 0.0, 1.0);
      t.columns[0].push_back((w - o.omega_l0) / two_pi);
      t.columns[1].push_back(std::norm(port_output(o, Cavity::left, 1.0, fl.a_l).forward));
      t.columns[2].push_back(std::norm(port_output(o, Cavity::right, 1.0, fr.a_r).forward));
    }
    t.meta = {{"reference", "offset from the left rest resonance"}};
    return t;
  };

  const auto broad = sweep(mid, 0.5 * span_broad, 4001);
  const double half_narrow = 3.0 * o.gamma(Cavity::left);
  const auto narrow_l = sweep(o.omega_l0, half_narrow, 2001);
  const auto narrow_r = sweep(o.omega_r0, 3.0 * o.gamma(Cavity::right), 2001);

  auto dip = [](const CsvTable& t, int col) {
    const auto& y = t.columns[col];
    const auto it = std::min_element(y.begin(), y.end());
    const std::size_t i = static_cast<std::size_t>(it - y.begin());
    double f = t.columns[0][i];
    if (i > 0 && i + 1 < y.size()) {
      const double den = y[i - 1] - 2.0 * y[i] + y[i + 1];
      if (den > 0) f += 0.5 * (y[i - 1] - y[i + 1]) / den * (t.columns[0][1] - t.columns[0][0]);
    }
    // Full width at half depth.
    const double half = 0.5 * (1.0 + *it);
    std::size_t a = i, b = i;
    while (a > 0 && y[a] < half) --a;
    while (b + 1 < y.size() && y[b] < half) ++b;
    return std::make_tuple(f, *it, t.columns[0][b] - t.columns[0][a]);
  };
  const auto [fl, depth_l, width_l] = dip(narrow_l, 1);
  const auto [fr, depth_r, width_r] = dip(narrow_r, 2);

  ExperimentOutput out;
  out.summary = {{"experiment", "spectrum"},
                 {"left_dip_offset_hz", fl},
                 {"right_dip_offset_hz", fr},
                 {"separation_hz", fr - fl},
                 {"left_min_transmission", depth_l},
                 {"right_min_transmission", depth_r},
                 {"left_fwhm_hz", width_l},
                 {"right_fwhm_hz", width_r},
                 {"left_loaded_q", (o.omega_l0 / two_pi) / width_l},
                 {"right_loaded_q", (o.omega_r0 / two_pi) / width_r}};
  out.artifacts.push_back(csv_artifact("spectrum_broad.csv", broad, cfg));
  out.artifacts.push_back(csv_artifact("spectrum_left.csv", narrow_l, cfg));
  out.artifacts.push_back(csv_artifact("spectrum_right.csv", narrow_r, cfg));
  return out;
}

ExperimentOutput run_impulse(const RunConfig& cfg, const ExperimentOptions& opt) {
  RunConfig c = cfg;
  if (opt.env == "air")
    c.sim.environment = Environment::air;
  else if (opt.env == "vacuum")
    c.sim.environment = Environment::vacuum;
  else
    throw ValidationError("impulse: environment must be vacuum or air, got '" + opt.env + "'");
  if (!c.drive.pump.enabled || c.drive.pump.waveform != Waveform::pulse)
    throw ValidationError("impulse: pump must be an enabled pulse");
  if (!c.drive.probe.enabled) throw ValidationError("impulse: probe must be enabled");

  const auto ts = simulate(c.params, c.drive, c.sim);
  ExperimentOutput out;
  out.summary = {{"experiment", "impulse"}, {"environment", opt.env}, {"samples", ts.size()}};
  const auto diag = ts.meta("diagnostic.map_range_exceeded_at");
  if (!diag.empty()) out.summary["map_range_exceeded_at"] = diag;
  out.artifacts.push_back(csv_artifact("impulse_" + opt.env + ".csv", ts, c));

  if (c.sim.environment == Environment::vacuum) {
    const auto s = fft_spectrum(ts, "probe_t");
    const auto peaks = find_peaks(s, 8, 0.05, 50e3);
    out.summary["bin_width_hz"] = s.bin_width;
    out.summary["peaks"] = peaks_json(peaks);
    const auto fill = [&](const char* key, const MechMode& m) {
      if (!m.enabled) return;
      const auto* pk = nearest_peak(peaks, m.omega_m / two_pi);
      if (pk) out.summary[key] = pk->frequency;
    };
    fill("torsion_peak_hz", c.params.torsion());
    fill("flap_peak_hz", c.params.flap());
    out.artifacts.push_back(csv_artifact("impulse_vacuum_spectrum.csv", spectrum_table(s), c));
  } else {
    const auto timing = air_response_timing(ts);
    out.summary["initial_sign"] = timing.initial_sign;
    out.summary["sign_change_s"] = timing.sign_change;
    out.summary["thermal_peak_s"] = timing.thermal_peak;
  }
  return out;
}

ExperimentOutput run_selfosc(const RunConfig& cfg, const ExperimentOptions& opt) {
  RunConfig c = cfg;
  double gain = 0.0;
  c.params = with_fitted_gain(cfg, opt.threshold_target, opt.fit_gain, &gain);
  c.drive = cw_pump_drive(c);
  const auto lc = find_limit_cycle(c.params, c.drive);

  ExperimentOutput out;
  out.summary = {{"experiment", "selfosc"},
                 {"pump_power_w", c.drive.pump.power},
                 {"photothermal_gain", c.params.photothermal.gain},
                 {"photothermal_gain_fitted", opt.fit_gain && cfg.params.photothermal.gain == 0.0},
                 {"limit_cycle", limit_cycle_json(lc)}};

  // Energy balance curve around the operating point.
  const auto& m = c.params.torsion();
  const double dissipation_coeff = pi * m.inertia * m.damping() * m.omega_m;
  CsvTable curve;
  curve.names = {"amplitude_rad", "work_j", "dissipation_j"};
  curve.columns.assign(3, {});
  const double amax = c.params.map.range;
  const std::size_t n = 200;
  std::vector<CycleWork> works(n);
  std::vector<double> amps(n);
  for (std::size_t i = 0; i < n; ++i) amps[i] = amax * std::pow(1e-4, 1.0 - double(i) / double(n - 1));
  const double center = lc.converged ? lc.center : static_equilibrium(c.params, c.drive, Environment::vacuum, false).theta[0];
  parallel_for(n, opt.threads, [&](std::size_t i) {
    works[i] = cycle_work(c.params, c.drive, ModeKind::torsional, amps[i], center, 1024);
  });
  for (std::size_t i = 0; i < n; ++i) {
    curve.columns[0].push_back(amps[i]);
    curve.columns[1].push_back(works[i].total());
    curve.columns[2].push_back(dissipation_coeff * amps[i] * amps[i]);
  }
  curve.meta = {{"center_rad", format_double(center)}};
  out.artifacts.push_back(csv_artifact("selfosc_energy_balance.csv", curve, c));

  if (lc.converged) {
    const auto ts = oscillation_record(c.params, c.drive, c.sim, lc.center, lc.amplitude, 0);
    const double t_end = ts.column("t").back();
    const double per = period_of(c.params);
    const double settled = recent_amplitude(ts, per, std::min(5.0, std::floor(t_end / per / 2.0)));
    out.summary["simulated_amplitude_rad"] = settled;
    out.summary["amplitude_relative_drift"] = settled / lc.amplitude - 1.0;
    const auto s = fft_spectrum(ts, "theta_t");
    const auto peaks = find_peaks(s, 3, 0.05, 10e3);
    if (!peaks.empty()) out.summary["oscillation_peak_hz"] = peaks.front().frequency;
    RunConfig echo = c;
    echo.sim.start_at_equilibrium = false;
    echo.sim.theta0 = lc.center + lc.amplitude;
    echo.sim.theta_dot0 = 0.0;
    out.artifacts.push_back(csv_artifact("selfosc.csv", ts, echo));
  }
  return out;
}

ExperimentOutput run_shuttle(const RunConfig& cfg, const ExperimentOptions& opt) {
  RunConfig c = cfg;
  c.drive = cw_pump_drive(cfg);
  double center = 0.0;
  double amplitude = 0.0;
  std::string source;
  const double align = crossing_amplitude(c.params, c.drive, c.sim.environment, &center);
  if (opt.amplitude) {
    amplitude = *opt.amplitude;
    source = "given";
  } else if (opt.amplitude_from_limit_cycle) {
    c.params = with_fitted_gain(cfg, opt.threshold_target, opt.fit_gain);
    const auto lc = find_limit_cycle(c.params, c.drive);
    if (!lc.converged) throw NumericalError("shuttle: no limit cycle at this pump power (" + lc.diagnostic + ")");
    amplitude = lc.amplitude;
    center = lc.center;
    source = "limit_cycle";
  } else {
    amplitude = align;
    source = "alignment";
  }
  if (!(amplitude >= 0.0)) throw ValidationError("shuttle: amplitude must be non-negative");

  const auto ts = oscillation_record(c.params, c.drive, c.sim, center, amplitude, 0);
  const auto st = count_shuttled_photons(ts, c.params);
  const auto path = detuning_trajectory(ts, c.params, c.drive.pump);

  ExperimentOutput out;
  out.summary = {{"experiment", "shuttle"},
                 {"pump_power_w", c.drive.pump.power},
                 {"amplitude_rad", amplitude},
                 {"amplitude_source", source},
                 {"center_rad", center},
                 {"alignment_amplitude_rad", align},
                 {"photothermal_gain", c.params.photothermal.gain},
                 {"n_tr", st.n_tr},
                 {"peaks_per_cycle", st.peaks_per_cycle},
                 {"period_s", st.period},
                 {"cycles", st.cycles}};
  RunConfig echo = c;
  echo.sim.start_at_equilibrium = false;
  echo.sim.theta0 = center + amplitude;
  echo.sim.theta_dot0 = 0.0;
  out.artifacts.push_back(csv_artifact("shuttle.csv", ts, echo));
  CsvTable traj{{"t", "delta_l", "delta_r"}, {path.t, path.delta_l, path.delta_r}, {}};
  out.artifacts.push_back(csv_artifact("shuttle_trajectory.csv", traj, echo));
  return out;
}

ExperimentOutput run_map(const RunConfig& cfg) {
  RunConfig c = cfg;
  c.drive = cw_pump_drive(cfg);
  const auto grid = linspace(-4.0, 4.0, 161);
  const auto map = shuttle_map(c.params, grid, grid, c.drive.pump.power, true);
  const auto value = [&](double dl, double dr) {
    const auto idx = [&](double d) {
      return static_cast<std::size_t>(std::lround((d - grid.front()) / (grid[1] - grid[0])));
    };
    return map.at(idx(dl), idx(dr));
  };

  double center = 0.0;
  const double align = crossing_amplitude(c.params, c.drive, c.sim.environment, &center);
  const auto ts = oscillation_record(c.params, c.drive, c.sim, center, align, 0);
  const auto path = detuning_trajectory(ts, c.params, c.drive.pump);

  ExperimentOutput out;
  out.summary = {{"experiment", "map"},
                 {"center_value", value(0, 0)},
                 {"value_p1_0", value(1, 0)},
                 {"value_m1_0", value(-1, 0)},
                 {"value_0_p1", value(0, 1)},
                 {"value_0_m1", value(0, -1)},
                 {"value_p1_p1", value(1, 1)},
                 {"trajectory_points", path.t.size()},
                 {"trajectory_amplitude_rad", align}};
  out.artifacts.push_back({"map.csv", render_matrix_csv("delta_l\\delta_r", map.delta_l, map.delta_r, map.values,
                                                        {{"normalized", "1"}}, canonical_config(c),
                                                        c.sim.noise.seed)});
  RunConfig echo = c;
  echo.sim.start_at_equilibrium = false;
  echo.sim.theta0 = center + align;
  CsvTable traj{{"t", "delta_l", "delta_r"}, {path.t, path.delta_l, path.delta_r}, {}};
  out.artifacts.push_back(csv_artifact("map_trajectory.csv", traj, echo));
  return out;
}

ExperimentOutput run_noise(const RunConfig& cfg) {
  RunConfig c = cfg;
  if (!c.sim.noise.enabled) throw ValidationError("noise: noise.enabled must be true");
  const auto ts = simulate(c.params, c.drive, c.sim);
  const auto t = ts.column("t");
  const auto th = ts.column("theta_t");
  const auto mode = effective_mode(c.params.torsion(), c.sim.environment);
  const double relax = 2.0 / mode.damping();
  const double burn = std::min(5.0 * relax, 0.5 * t.back());
  double sum = 0.0, sum2 = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < burn) continue;
    sum += th[i];
    sum2 += th[i] * th[i];
    ++n;
  }
  if (n < 2) throw NumericalError("noise: record shorter than the burn-in");
  const double mean = sum / double(n);
  const double var = sum2 / double(n) - mean * mean;
  const double expect = equipartition_variance(mode, c.sim.noise.temperature);

  std::vector<double> tail(th.begin() + static_cast<std::ptrdiff_t>(th.size() - n), th.end());
  const auto s = fft_spectrum(tail, t[1] - t[0]);
  const auto peaks = find_peaks(s, 3, 0.05, 10e3);

  ExperimentOutput out;
  out.summary = {{"experiment", "noise"},
                 {"seed", c.sim.noise.seed},
                 {"temperature_k", c.sim.noise.temperature},
                 {"burn_in_s", burn},
                 {"theta_variance", var},
                 {"equipartition_variance", expect},
                 {"variance_ratio", var / expect},
                 {"torque_sensitivity", torque_sensitivity(mode, c.sim.noise.temperature)},
                 {"peaks", peaks_json(peaks)}};
  out.artifacts.push_back(csv_artifact("noise.csv", ts, c));
  out.artifacts.push_back(csv_artifact("noise_spectrum.csv", spectrum_table(s), c));
  return out;
}

ExperimentOutput run_threshold(const RunConfig& cfg, const ExperimentOptions& opt) {
  RunConfig c = cfg;
  c.drive = cw_pump_drive(cfg);
  DeviceParams rp = c.params;
  rp.photothermal.gain = 0.0;
  const auto th_rp = find_threshold(rp, c.drive, ModeKind::torsional, 1e-12, 10.0);

  ExperimentOutput out;
  out.summary = {{"experiment", "threshold"},
                 {"mechanical_damping", c.params.torsion().damping()},
                 {"radiation_pressure_threshold_w", th_rp.found ? json(th_rp.power) : json(nullptr)},
                 {"radiation_pressure_diagnostic", th_rp.diagnostic},
                 {"measured_reference_w", opt.threshold_target}};

  double gain = 0.0;
  c.params = with_fitted_gain(cfg, opt.threshold_target, opt.fit_gain, &gain);
  if (c.params.photothermal.gain != 0.0) {
    const auto th = find_threshold(c.params, c.drive, ModeKind::torsional, 1e-12, 10.0);
    out.summary["photothermal_gain"] = c.params.photothermal.gain;
    out.summary["photothermal_gain_fitted"] = opt.fit_gain && cfg.params.photothermal.gain == 0.0;
    out.summary["threshold_w"] = th.found ? json(th.power) : json(nullptr);
    out.summary["threshold_diagnostic"] = th.diagnostic;
  }
  if (th_rp.found) out.summary["rp_threshold_over_reference"] = th_rp.power / opt.threshold_target;

  // Limit-cycle amplitude against pump power, with and without the fitted channel.
  const auto powers = [] {
    std::vector<double> v;
    for (double e : linspace(-8.0, 0.0, 41)) v.push_back(std::pow(10.0, e));
    return v;
  }();
  std::vector<double> amp_rp(powers.size()), amp_fit(powers.size());
  parallel_for(powers.size(), opt.threads, [&](std::size_t i) {
    DriveConfig d = c.drive;
    d.pump.power = powers[i];
    const auto a = find_limit_cycle(rp, d);
    const auto b = find_limit_cycle(c.params, d);
    amp_rp[i] = a.converged ? a.amplitude : 0.0;
    amp_fit[i] = b.converged ? b.amplitude : 0.0;
  });
  CsvTable t{{"pump_power_w", "amplitude_rp_rad", "amplitude_with_gain_rad"}, {powers, amp_rp, amp_fit}, {}};
  out.artifacts.push_back(csv_artifact("threshold_curve.csv", t, c));
  return out;
}

ExperimentOutput run_strobo(const RunConfig& cfg, const ExperimentOptions& opt) {
  RunConfig c = cfg;
  c.params = with_fitted_gain(cfg, opt.threshold_target, opt.fit_gain);
  c.drive = cw_pump_drive(c);
  const auto lc = find_limit_cycle(c.params, c.drive);
  if (!lc.converged) throw NumericalError("strobo: no limit cycle at this pump power (" + lc.diagnostic + ")");
  const double probe_power = c.drive.probe.power > 0.0 ? c.drive.probe.power : 2.3e-9;

  ExperimentOutput out;
  out.summary = {{"experiment", "strobo"},
                 {"pump_power_w", c.drive.pump.power},
                 {"probe_power_w", probe_power},
                 {"photothermal_gain", c.params.photothermal.gain},
                 {"limit_cycle", limit_cycle_json(lc)}};

  std::array<StroboResult, 2> res;
  for (Cavity cav : {Cavity::left, Cavity::right}) {
    const double tau = c.params.optics.tau(cav);
    const double x1 = tau * c.params.map.shift(cav, lc.center - lc.amplitude);
    const double x2 = tau * c.params.map.shift(cav, lc.center + lc.amplitude);
    const auto grid = linspace(std::min(x1, x2) - 2.5, std::max(x1, x2) + 2.5, 41);
    const auto traces = strobo_traces(c.params, c.drive, c.sim, cav, grid, lc.center, lc.amplitude, 0,
                                      probe_power, opt.threads);
    const auto r = strobo_reconstruct(traces, c.params, cav);
    const std::string tag = cav == Cavity::left ? "left" : "right";
    out.summary["coverage_" + tag] = r.coverage();
    CsvTable t;
    t.names = {"t", "delta", "omega_offset_hz", "theta", "confidence", "covered"};
    t.columns.assign(6, {});
    for (std::size_t i = 0; i < r.t.size(); ++i) {
      t.columns[0].push_back(r.t[i]);
      t.columns[1].push_back(r.delta[i]);
      t.columns[2].push_back((r.omega[i] - c.params.optics.omega_l0) / two_pi);
      t.columns[3].push_back(r.theta[i]);
      t.columns[4].push_back(r.confidence[i]);
      t.columns[5].push_back(r.covered[i] ? 1.0 : 0.0);
    }
    t.meta = {{"cavity", tag}, {"probe_detunings", std::to_string(grid.size())},
              {"omega_reference", "left rest resonance"}};
    out.artifacts.push_back(csv_artifact("strobo_" + tag + ".csv", t, c));
    res[index(cav)] = r;
  }

  const auto& l = res[0];
  const auto& r = res[1];
  int sign_changes = 0;
  int last = 0;
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < std::min(l.t.size(), r.t.size()); ++i) {
    if (!l.covered[i] || !r.covered[i]) continue;
    const double d = l.omega[i] - r.omega[i];
    min_gap = std::min(min_gap, std::abs(d));
    const int s = d > 0 ? 1 : (d < 0 ? -1 : 0);
    if (s != 0 && last != 0 && s != last) ++sign_changes;
    if (s != 0) last = s;
  }
  out.summary["crossings"] = sign_changes;
  out.summary["trajectories_cross"] = sign_changes > 0;
  return out;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"spectrum", "impulse", "selfosc", "shuttle",
                                              "map",      "noise",   "threshold", "strobo"};
  return names;
}

std::string scenario_defaults(const std::string& experiment, const std::string& variant) {
  const std::string cw_pump =
      "pump.enabled = true\npump.port = left\npump.reference = crossing\npump.detuning = 0\n"
      "pump.waveform = cw\nprobe.enabled = false\nflap.enabled = false\nsim.method = quasistatic\n"
      "sim.dt = 1.1e-9\n";
  if (experiment == "impulse") {
    std::string s =
        "pump.enabled = true\npump.port = left\npump.reference = left\npump.detuning = 0\n"
        "pump.waveform = pulse\npump.power_w = 4e-3\npump.pulse_width = 10e-9\npump.pulse_delay = 0\n"
        "probe.enabled = true\nprobe.port = right\nprobe.reference = right\nprobe.detuning = -0.8\n"
        "probe.power_w = 30e-9\nprobe.waveform = cw\nsim.method = quasistatic\nsim.dt = 2.5e-9\n";
    if (variant == "air")
      s += "sim.environment = air\nsim.thermal = true\nflap.enabled = false\nsim.duration = 8e-6\n"
           "sim.output_stride = 1\n";
    else
      s += "sim.environment = vacuum\nsim.duration = 200e-6\nsim.output_stride = 4\n";
    return s;
  }
  if (experiment == "selfosc")
    return cw_pump + "pump.power_w = 3.4e-6\nsim.duration = 230e-6\nsim.output_stride = 10\n";
  if (experiment == "shuttle" || experiment == "map")
    return cw_pump + "pump.power_w = 0.135e-6\nsim.duration = 27.3e-6\nsim.output_stride = 1\n";
  if (experiment == "strobo")
    return cw_pump + "pump.power_w = 3.4e-6\nprobe.power_w = 2.3e-9\nsim.duration = 6.85e-6\nsim.output_stride = 2\n";
  if (experiment == "threshold") return cw_pump + "pump.power_w = 0.135e-6\n";
  if (experiment == "noise")
    return "pump.enabled = false\nprobe.enabled = false\nflap.enabled = false\nnoise.enabled = true\n"
           "sim.method = quasistatic\nsim.dt = 2e-8\nsim.duration = 0.1\nsim.output_stride = 50\n";
  if (experiment == "spectrum") return "pump.enabled = false\nprobe.enabled = false\n";
  throw ValidationError("unknown experiment '" + experiment + "'");
}

int sweep_threads() {
  if (const char* env = std::getenv("SEESAW_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  if (threads <= 0) threads = sweep_threads();
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  std::vector<std::exception_ptr> errors(n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

AirTiming air_response_timing(const TimeSeries& ts) {
  const auto t = ts.column("t");
  const auto y0 = ts.column("probe_t");
  AirTiming out;
  if (t.size() < 5) return out;
  std::vector<double> y(y0.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = y0[i] - y0[0];

  // Initial sign: first sample above 2% of the largest excursion.
  double ymax = 0.0;
  for (double v : y) ymax = std::max(ymax, std::abs(v));
  if (ymax == 0.0) return out;
  std::size_t early = 0;
  while (early < y.size() && std::abs(y[early]) < 0.02 * ymax) ++early;
  out.initial_sign = y[early] > 0 ? 1.0 : -1.0;

  std::size_t cross = 0;
  for (std::size_t i = early; i + 1 < t.size(); ++i) {
    if (out.initial_sign * y[i] > 0 && out.initial_sign * y[i + 1] <= 0) {
      cross = i;
      break;
    }
  }
  if (cross == 0) return out;
  out.sign_change = t[cross] + (t[cross + 1] - t[cross]) * y[cross] / (y[cross] - y[cross + 1]);

  std::size_t peak = cross + 1;
  for (std::size_t i = cross + 1; i < t.size(); ++i)
    if (-out.initial_sign * y[i] > -out.initial_sign * y[peak]) peak = i;
  double tp = t[peak];
  if (peak > 0 && peak + 1 < t.size()) {
    const double den = y[peak - 1] - 2.0 * y[peak] + y[peak + 1];
    if (den != 0.0) tp += 0.5 * (y[peak - 1] - y[peak + 1]) / den * (t[peak + 1] - t[peak]);
  }
  if (peak + 1 < t.size()) out.thermal_peak = tp;
  return out;
}

DriveConfig cw_pump_drive(const RunConfig& cfg) {
  DriveConfig d = cfg.drive;
  enable_cw(d.pump);
  if (!(d.pump.power > 0.0)) throw ValidationError("pump.power_w must be positive");
  return d;
}

DeviceParams with_fitted_gain(const RunConfig& cfg, double target, bool fit, double* gain_out) {
  DeviceParams p = cfg.params;
  if (fit && p.photothermal.gain == 0.0) {
    DriveConfig d = cw_pump_drive(cfg);
    d.probe.enabled = false;
    p.photothermal.gain = calibrate_photothermal_gain(p, d, target);
  }
  if (gain_out) *gain_out = p.photothermal.gain;
  return p;
}

TimeSeries oscillation_record(const DeviceParams& params, const DriveConfig& drive, const SimConfig& sim,
                              double center, double amplitude, int cycles) {
  SimConfig s = sim;
  s.method = Method::quasistatic;
  s.start_at_equilibrium = false;
  s.theta0 = center + amplitude;
  s.theta_dot0 = 0.0;
  if (cycles > 0) s.duration = cycles * period_of(params);
  return simulate(params, drive, s);
}

std::vector<StroboTrace> strobo_traces(const DeviceParams& params, const DriveConfig& drive, const SimConfig& sim,
                                       Cavity cavity, std::span<const double> delta_b, double center,
                                       double amplitude, int cycles, double probe_power, int threads) {
  std::vector<StroboTrace> out(delta_b.size());
  parallel_for(delta_b.size(), threads, [&](std::size_t i) {
    DriveConfig d = drive;
    d.probe.enabled = true;
    d.probe.waveform = Waveform::cw;
    d.probe.port = cavity;
    d.probe.reference = cavity == Cavity::left ? FrequencyReference::left : FrequencyReference::right;
    d.probe.detuning = delta_b[i];
    d.probe.power = probe_power;
    out[i].delta_b = delta_b[i];
    out[i].series = oscillation_record(params, d, sim, center, amplitude, cycles);
  });
  return out;
}

double recent_amplitude(const TimeSeries& ts, double period, double cycles) {
  const auto t = ts.column("t");
  const auto th = ts.column("theta_t");
  if (t.empty()) return 0.0;
  const double from = t.back() - cycles * period;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < from) continue;
    lo = std::min(lo, th[i]);
    hi = std::max(hi, th[i]);
  }
  return hi >= lo ? 0.5 * (hi - lo) : 0.0;
}

ExperimentOutput run_experiment(const std::string& name, const RunConfig& cfg, const ExperimentOptions& opt) {
  if (name == "spectrum") return run_spectrum(cfg);
  if (name == "impulse") return run_impulse(cfg, opt);
  if (name == "selfosc") return run_selfosc(cfg, opt);
  if (name == "shuttle") return run_shuttle(cfg, opt);
  if (name == "map") return run_map(cfg);
  if (name == "noise") return run_noise(cfg);
  if (name == "threshold") return run_threshold(cfg, opt);
  if (name == "strobo") return run_strobo(cfg, opt);
  throw ValidationError("unknown experiment '" + name + "'");
}

}  // namespace seesaw
