#include "seesaw/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

#include "seesaw/constants.hpp"
#include "seesaw/errors.hpp"
#include "seesaw/optics.hpp"

namespace seesaw {

using constants::hbar;
using constants::pi;
using constants::two_pi;

// ---------------------------------------------------------------------------
// TimeSeries

bool TimeSeries::has(std::string_view name) const {
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::span<const double> TimeSeries::column(std::string_view name) const {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw RangeError("TimeSeries: no column '" + std::string(name) + "'");
  return columns[static_cast<std::size_t>(it - names.begin())];
}

std::vector<double>& TimeSeries::column_mut(std::string_view name) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw RangeError("TimeSeries: no column '" + std::string(name) + "'");
  return columns[static_cast<std::size_t>(it - names.begin())];
}

void TimeSeries::add_column(std::string name, std::vector<double> values) {
  names.push_back(std::move(name));
  columns.push_back(std::move(values));
}

std::string TimeSeries::meta(std::string_view key) const {
  for (const auto& [k, v] : header)
    if (k == key) return v;
  return {};
}

MechMode effective_mode(const MechMode& mode, Environment env) {
  MechMode m = mode;
  if (env == Environment::air) m.q_m = mode.q_air;
  return m;
}

namespace {

constexpr std::size_t kChannels = 2;  // [0] pump, [1] probe
const cplx I1{0.0, 1.0};

using Fields = std::array<FieldPair, kChannels>;

struct State {
  Fields a{};
  std::array<MechState, 2> mech{};
  ThermalState thermal;
  double q = 0.0;
};

State add(const State& y, double h, const State& k) {
  State r;
  for (std::size_t c = 0; c < kChannels; ++c) {
    r.a[c].a_l = y.a[c].a_l + h * k.a[c].a_l;
    r.a[c].a_r = y.a[c].a_r + h * k.a[c].a_r;
  }
  for (std::size_t m = 0; m < 2; ++m) {
    r.mech[m].theta = y.mech[m].theta + h * k.mech[m].theta;
    r.mech[m].theta_dot = y.mech[m].theta_dot + h * k.mech[m].theta_dot;
  }
  r.thermal.u_l = y.thermal.u_l + h * k.thermal.u_l;
  r.thermal.u_r = y.thermal.u_r + h * k.thermal.u_r;
  r.q = y.q + h * k.q;
  return r;
}

// Per-channel diagonal propagators exp(lambda h) for the field components.
using Propagator = std::array<std::array<cplx, 2>, kChannels>;

State propagate(const Propagator& e, const State& y) {
  State r = y;
  for (std::size_t c = 0; c < kChannels; ++c) {
    r.a[c].a_l *= e[c][0];
    r.a[c].a_r *= e[c][1];
  }
  return r;
}

bool finite(const State& s) {
  for (const auto& f : s.a)
    if (!std::isfinite(f.a_l.real()) || !std::isfinite(f.a_l.imag()) || !std::isfinite(f.a_r.real()) ||
        !std::isfinite(f.a_r.imag()))
      return false;
  for (const auto& m : s.mech)
    if (!std::isfinite(m.theta) || !std::isfinite(m.theta_dot)) return false;
  return std::isfinite(s.thermal.u_l) && std::isfinite(s.thermal.u_r) && std::isfinite(s.q);
}

struct Channel {
  bool active = false;
  Laser laser;
  double omega = 0.0;
};

struct CavityPair {
  double l = 0.0;
  double r = 0.0;
};

// 2x2 complex solve M x = v.
std::array<cplx, 2> solve2(const cplx& m11, const cplx& m12, const cplx& m21, const cplx& m22, const cplx& v1,
                           const cplx& v2) {
  const cplx det = m11 * m22 - m12 * m21;
  return {(m22 * v1 - m12 * v2) / det, (m11 * v2 - m21 * v1) / det};
}

class Model {
 public:
  Model(const DeviceParams& params, const DriveConfig& drive, Environment env, bool thermal, bool retardation)
      : p_(params), drive_(drive), thermal_(thermal), retard_(retardation) {
    map_ = params.map;
    map_.allow_extrapolation = true;
    for (std::size_t m = 0; m < 2; ++m) modes_[m] = effective_mode(params.modes[m], env);
    const Laser* lasers[kChannels] = {&drive.pump, &drive.probe};
    for (std::size_t c = 0; c < kChannels; ++c) {
      ch_[c].laser = *lasers[c];
      ch_[c].active = lasers[c]->enabled;
      if (ch_[c].active) ch_[c].omega = laser_frequency(params, *lasers[c]);
    }
  }

  const DeviceParams& params() const { return p_; }
  const MechMode& mode(std::size_t m) const { return modes_[m]; }
  const Channel& channel(std::size_t c) const { return ch_[c]; }
  bool thermal() const { return thermal_; }
  OutputSum output_sum() const { return drive_.output_sum; }

  CavityPair cavity_omegas(const State& s) const {
    const auto& o = p_.optics;
    const double th = s.mech[0].theta;
    CavityPair w{o.omega_l0 + map_.shift(Cavity::left, th), o.omega_r0 + map_.shift(Cavity::right, th)};
    if (modes_[1].enabled) {
      w.l += modes_[1].ga_l * s.mech[1].theta;
      w.r += modes_[1].ga_r * s.mech[1].theta;
    }
    if (thermal_) {
      auto [sl, sr] = thermo_optic_shift(s.thermal, p_.thermal);
      w.l += sl;
      w.r += sr;
    }
    return w;
  }

  CavityPair cavity_omega_rates(const State& s, const ThermalState& u_dot) const {
    const double th = s.mech[0].theta;
    const double thd = s.mech[0].theta_dot;
    CavityPair r{map_.slope(Cavity::left, th) * thd, map_.slope(Cavity::right, th) * thd};
    if (modes_[1].enabled) {
      r.l += modes_[1].ga_l * s.mech[1].theta_dot;
      r.r += modes_[1].ga_r * s.mech[1].theta_dot;
    }
    if (thermal_) {
      r.l += p_.thermal.dw_dT * u_dot.u_l;
      r.r += p_.thermal.dw_dT * u_dot.u_r;
    }
    return r;
  }

  std::pair<double, double> port_powers(std::size_t c, double t) const {
    const double pw = ch_[c].laser.power_at(t);
    return ch_[c].laser.port == Cavity::left ? std::pair{pw, 0.0} : std::pair{0.0, pw};
  }

  CavityPair photon_numbers(const Fields& f) const {
    CavityPair n;
    for (std::size_t c = 0; c < kChannels; ++c) {
      if (!ch_[c].active) continue;
      n.l += photon_number(f[c].energy(Cavity::left), ch_[c].omega);
      n.r += photon_number(f[c].energy(Cavity::right), ch_[c].omega);
    }
    return n;
  }

  CavityPair absorbed_powers(const Fields& f) const {
    CavityPair e;
    for (std::size_t c = 0; c < kChannels; ++c) {
      if (!ch_[c].active) continue;
      e.l += f[c].energy(Cavity::left);
      e.r += f[c].energy(Cavity::right);
    }
    const double eta = p_.thermal.eta_abs;
    return {eta * p_.optics.gamma_i_l * e.l, eta * p_.optics.gamma_i_r * e.r};
  }

  double radiation_torque(std::size_t m, const State& s, const CavityPair& n) const {
    if (m == 0) {
      const double th = s.mech[0].theta;
      return -hbar * (map_.slope(Cavity::left, th) * n.l + map_.slope(Cavity::right, th) * n.r);
    }
    return optical_torque(modes_[1], n.l, n.r);
  }

  Fields quasistatic_fields(double t, const State& s) const {
    const auto& o = p_.optics;
    const CavityPair w = cavity_omegas(s);
    Fields f{};
    for (std::size_t c = 0; c < kChannels; ++c) {
      if (!ch_[c].active) continue;
      const Detunings det = make_detunings(o, ch_[c].omega, w.l, w.r);
      auto [pl, pr] = port_powers(c, t);
      f[c] = steady_state_fields(o, det, pl, pr);
    }
    if (!retard_) return f;

    ThermalState u_dot{};
    if (thermal_) {
      const CavityPair pa = absorbed_powers(f);
      u_dot = thermal_derivatives(s.thermal, pa.l, pa.r, p_.thermal);
    }
    const CavityPair wd = cavity_omega_rates(s, u_dot);
    for (std::size_t c = 0; c < kChannels; ++c) {
      if (!ch_[c].active) continue;
      const cplx m11 = I1 * (ch_[c].omega - w.l) - 0.5 * o.gamma(Cavity::left);
      const cplx m22 = I1 * (ch_[c].omega - w.r) - 0.5 * o.gamma(Cavity::right);
      const cplx m12 = I1 * o.kappa;
      // dM/dt a0 with dDelta/dt = -d omega_cav/dt
      const cplx v1 = -I1 * wd.l * f[c].a_l;
      const cplx v2 = -I1 * wd.r * f[c].a_r;
      const auto x = solve2(m11, m12, m12, m22, v1, v2);
      const auto a1 = solve2(m11, m12, m12, m22, x[0], x[1]);
      f[c].a_l -= a1[0];
      f[c].a_r -= a1[1];
    }
    return f;
  }

  // Mechanical, thermal and photothermal rates (fields entries left zero).
  State slow_rates(const State& s, const Fields& f, const std::array<double, 2>& extra_torque) const {
    State d;
    const CavityPair n = photon_numbers(f);
    const CavityPair pa = absorbed_powers(f);
    for (std::size_t m = 0; m < 2; ++m) {
      if (!modes_[m].enabled) continue;
      double torque = radiation_torque(m, s, n) + extra_torque[m];
      if (m == 0) torque += p_.photothermal.gain * s.q;
      d.mech[m] = mech_derivatives(s.mech[m], torque, modes_[m]);
    }
    if (thermal_) d.thermal = thermal_derivatives(s.thermal, pa.l, pa.r, p_.thermal);
    if (p_.photothermal.gain > 0.0) d.q = (pa.l - pa.r - s.q) / p_.photothermal.delay;
    return d;
  }

  // Coupled-mode field rates M(s) a + b(t).
  void field_rates(double t, const State& s, State& d) const {
    const auto& o = p_.optics;
    const CavityPair w = cavity_omegas(s);
    const double fr = o.input_fraction();
    for (std::size_t c = 0; c < kChannels; ++c) {
      if (!ch_[c].active) continue;
      auto [pl, pr] = port_powers(c, t);
      const auto& a = s.a[c];
      d.a[c].a_l = (I1 * (ch_[c].omega - w.l) - 0.5 * o.gamma(Cavity::left)) * a.a_l + I1 * o.kappa * a.a_r +
                   std::sqrt(fr * o.gamma_e_l * pl);
      d.a[c].a_r = (I1 * (ch_[c].omega - w.r) - 0.5 * o.gamma(Cavity::right)) * a.a_r + I1 * o.kappa * a.a_l +
                   std::sqrt(fr * o.gamma_e_r * pr);
    }
  }

  // Linear part used by the Lawson step: i Delta(s_n) - gamma/2 per cavity.
  std::array<std::array<cplx, 2>, kChannels> linear_part(const State& s) const {
    const auto& o = p_.optics;
    const CavityPair w = cavity_omegas(s);
    std::array<std::array<cplx, 2>, kChannels> lam{};
    for (std::size_t c = 0; c < kChannels; ++c) {
      if (!ch_[c].active) continue;
      lam[c][0] = I1 * (ch_[c].omega - w.l) - 0.5 * o.gamma(Cavity::left);
      lam[c][1] = I1 * (ch_[c].omega - w.r) - 0.5 * o.gamma(Cavity::right);
    }
    return lam;
  }

  std::vector<double> observe(double t, const State& s, const Fields& f) const {
    const auto& o = p_.optics;
    const CavityPair n = photon_numbers(f);
    double probe_t = 0.0;
    if (ch_[1].active) {
      const Cavity port = ch_[1].laser.port;
      const double pw = ch_[1].laser.power_at(t);
      if (pw > 0.0) {
        const auto out = port_output(o, port, std::sqrt(pw), f[1][port]);
        probe_t = std::norm(out.forward) / pw;
      }
    }
    double right_out = 0.0;
    cplx right_sum{};
    for (std::size_t c = 0; c < kChannels; ++c) {
      if (!ch_[c].active) continue;
      const double pr = port_powers(c, t).second;
      const auto out = port_output(o, Cavity::right, std::sqrt(pr), f[c].a_r);
      right_out += std::norm(out.forward);
      right_sum += out.forward;
    }
    if (drive_.output_sum == OutputSum::coherent) right_out = std::norm(right_sum);
    return {t, s.mech[0].theta, s.mech[1].theta, n.l, n.r, probe_t, right_out, s.thermal.u_l, s.thermal.u_r};
  }

 private:
  const DeviceParams& p_;
  DriveConfig drive_;
  DispersiveMap map_;
  std::array<MechMode, 2> modes_{};
  std::array<Channel, kChannels> ch_{};
  bool thermal_;
  bool retard_;
};

DriveConfig cw_only(const DriveConfig& d) {
  DriveConfig out = d;
  if (out.pump.waveform == Waveform::pulse) out.pump.enabled = false;
  if (out.probe.waveform == Waveform::pulse) out.probe.enabled = false;
  return out;
}

TimeSeries make_series() {
  TimeSeries ts;
  ts.names = {"t", "theta_t", "theta_f", "n_l", "n_r", "probe_t", "right_out_w", "u_l", "u_r"};
  ts.columns.resize(ts.names.size());
  return ts;
}

void record(TimeSeries& ts, const std::vector<double>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) ts.columns[i].push_back(row[i]);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

State initial_state(const DeviceParams& params, const DriveConfig& drive, const SimConfig& sim) {
  State s;
  if (sim.start_at_equilibrium) {
    const StaticPoint sp = static_equilibrium(params, drive, sim.environment, sim.thermal_enabled);
    s.mech[0].theta = sp.theta[0];
    s.mech[1].theta = sp.theta[1];
    s.thermal = sp.thermal;
    s.q = sp.photothermal;
  }
  s.mech[0].theta += sim.theta0;
  s.mech[0].theta_dot += sim.theta_dot0;
  s.mech[1].theta += sim.flap0;
  if (!params.modes[1].enabled) s.mech[1] = {};
  return s;
}

long long step_count(const SimConfig& sim) { return std::llround(sim.duration / sim.dt); }

struct RangeWatch {
  double range;
  double first = -1.0;
  void check(double t, double theta) {
    if (first < 0.0 && std::abs(theta) > range) first = t;
  }
  void annotate(TimeSeries& ts) const {
    if (first >= 0.0) ts.header.emplace_back("diagnostic.map_range_exceeded_at", fmt(first));
  }
};

void kick_noise(State& s, const Model& model, ThermalTorqueNoise& noise, double dt) {
  for (std::size_t m = 0; m < 2; ++m) {
    const MechMode& mode = model.mode(m);
    if (!mode.enabled) continue;
    s.mech[m].theta_dot += noise.sample(mode, dt) * dt / mode.inertia;
  }
}

}  // namespace

void check_sim_config(const DeviceParams& params, const SimConfig& sim) {
  const ValidationReport rep = validate_params(params);
  if (!rep.ok()) throw ValidationError("invalid parameters:\n" + rep.summary());
  if (!(sim.dt > 0.0) || !std::isfinite(sim.dt)) throw ValidationError("sim.dt must be > 0");
  if (!(sim.duration > 0.0) || !std::isfinite(sim.duration)) throw ValidationError("sim.duration must be > 0");
  if (sim.output_stride < 1) throw ValidationError("sim.output_stride must be >= 1");
  if (!(sim.noise.temperature >= 0.0)) throw ValidationError("noise temperature must be >= 0");
  const double steps = sim.duration / sim.dt;
  if (steps > 1e10 && !sim.allow_many_steps)
    throw ValidationError("simulation needs more than 1e10 steps; set sim.allow_long to override");

  const auto& o = params.optics;
  const double gmax = std::max(o.gamma(Cavity::left), o.gamma(Cavity::right));
  const double gmin = std::min(o.gamma(Cavity::left), o.gamma(Cavity::right));
  double wmax = 0.0;
  for (const auto& m : params.modes)
    if (m.enabled) wmax = std::max(wmax, m.omega_m);
  if (sim.method == Method::full) {
    if (sim.dt > 0.05 / gmax) {
      std::ostringstream os;
      os << "full method requires dt <= 0.05/gamma_max = " << 0.05 / gmax << " s";
      throw ValidationError(os.str());
    }
  } else {
    if (wmax / gmin >= 1e-2) {
      std::ostringstream os;
      os << "quasistatic method needs the sideband-unresolved regime (Omega_m/gamma < 1e-2); got "
         << wmax / gmin;
      throw ValidationError(os.str());
    }
    if (sim.dt > 0.01 * two_pi / wmax) {
      std::ostringstream os;
      os << "quasistatic method requires dt <= 0.01 * mechanical period = " << 0.01 * two_pi / wmax << " s";
      throw ValidationError(os.str());
    }
  }
}

TimeSeries simulate(const DeviceParams& params, const DriveConfig& drive, const SimConfig& sim) {
  return sim.method == Method::full ? simulate_full(params, drive, sim) : simulate_quasistatic(params, drive, sim);
}

TimeSeries simulate_quasistatic(const DeviceParams& params, const DriveConfig& drive, const SimConfig& sim) {
  SimConfig cfg = sim;
  cfg.method = Method::quasistatic;
  check_sim_config(params, cfg);
  const Model model(params, drive, cfg.environment, cfg.thermal_enabled, cfg.retardation_enabled);
  ThermalTorqueNoise noise(cfg.noise);
  RangeWatch watch{params.map.range};

  TimeSeries ts = make_series();
  State y = initial_state(params, drive, cfg);
  const long long n_steps = step_count(cfg);
  const double h = cfg.dt;
  const std::array<double, 2> no_extra{};

  auto rates = [&](double t, const State& s) { return model.slow_rates(s, model.quasistatic_fields(t, s), no_extra); };

  for (long long n = 0;; ++n) {
    const double t = static_cast<double>(n) * h;
    watch.check(t, y.mech[0].theta);
    if (n % cfg.output_stride == 0) record(ts, model.observe(t, y, model.quasistatic_fields(t, y)));
    if (n == n_steps) break;
    const State k1 = rates(t, y);
    const State k2 = rates(t + 0.5 * h, add(y, 0.5 * h, k1));
    const State k3 = rates(t + 0.5 * h, add(y, 0.5 * h, k2));
    const State k4 = rates(t + h, add(y, h, k3));
    State next = add(y, h / 6.0, k1);
    next = add(next, h / 3.0, k2);
    next = add(next, h / 3.0, k3);
    next = add(next, h / 6.0, k4);
    if (cfg.noise.enabled) kick_noise(next, model, noise, h);
    if (!finite(next)) throw NumericalError("non-finite state in quasistatic integration", t + h);
    y = next;
  }
  watch.annotate(ts);
  return ts;
}

TimeSeries simulate_full(const DeviceParams& params, const DriveConfig& drive, const SimConfig& sim) {
  SimConfig cfg = sim;
  cfg.method = Method::full;
  check_sim_config(params, cfg);
  const Model model(params, drive, cfg.environment, cfg.thermal_enabled, false);
  ThermalTorqueNoise noise(cfg.noise);
  RangeWatch watch{params.map.range};

  TimeSeries ts = make_series();
  State y = initial_state(params, drive, cfg);
  // Start the fields on the CW steady state of the initial configuration.
  {
    const Model cw(params, cw_only(drive), cfg.environment, cfg.thermal_enabled, false);
    y.a = cw.quasistatic_fields(0.0, y);
  }
  const long long n_steps = step_count(cfg);
  const double h = cfg.dt;
  const std::array<double, 2> no_extra{};

  for (long long n = 0;; ++n) {
    const double t = static_cast<double>(n) * h;
    watch.check(t, y.mech[0].theta);
    if (n % cfg.output_stride == 0) record(ts, model.observe(t, y, y.a));
    if (n == n_steps) break;

    // Lawson RK4 with the diagonal linear part frozen at the step start.
    const auto lam = model.linear_part(y);
    Propagator e_half{}, e_full{};
    for (std::size_t c = 0; c < kChannels; ++c)
      for (std::size_t k = 0; k < 2; ++k) {
        e_half[c][k] = std::exp(lam[c][k] * (0.5 * h));
        e_full[c][k] = std::exp(lam[c][k] * h);
      }
    auto nonlinear = [&](double tt, const State& s) {
      State d = model.slow_rates(s, s.a, no_extra);
      model.field_rates(tt, s, d);
      for (std::size_t c = 0; c < kChannels; ++c) {
        d.a[c].a_l -= lam[c][0] * s.a[c].a_l;
        d.a[c].a_r -= lam[c][1] * s.a[c].a_r;
      }
      return d;
    };
    const State k1 = nonlinear(t, y);
    const State y2 = propagate(e_half, add(y, 0.5 * h, k1));
    const State k2 = nonlinear(t + 0.5 * h, y2);
    const State y3 = add(propagate(e_half, y), 0.5 * h, k2);
    const State k3 = nonlinear(t + 0.5 * h, y3);
    const State y4 = add(propagate(e_full, y), h, propagate(e_half, k3));
    const State k4 = nonlinear(t + h, y4);

    State next = propagate(e_full, y);
    next = add(next, h / 6.0, propagate(e_full, k1));
    next = add(next, h / 3.0, propagate(e_half, k2));
    next = add(next, h / 3.0, propagate(e_half, k3));
    next = add(next, h / 6.0, k4);
    if (cfg.noise.enabled) kick_noise(next, model, noise, h);
    if (!finite(next)) throw NumericalError("non-finite state in full integration", t + h);
    y = next;
  }
  watch.annotate(ts);
  return ts;
}

StaticPoint static_equilibrium(const DeviceParams& params, const DriveConfig& drive, Environment env,
                               bool thermal_enabled) {
  const Model model(params, cw_only(drive), env, thermal_enabled, false);
  State s;
  for (int it = 0; it < 500; ++it) {
    const Fields f = model.quasistatic_fields(0.0, s);
    const auto n_ph = model.photon_numbers(f);
    const auto pa = model.absorbed_powers(f);
    State next = s;
    for (std::size_t m = 0; m < 2; ++m) {
      const MechMode& mode = model.mode(m);
      if (!mode.enabled) continue;
      double torque = model.radiation_torque(m, s, n_ph);
      if (m == 0) torque += params.photothermal.gain * (pa.l - pa.r);
      next.mech[m].theta = torque / mode.stiffness();
    }
    if (thermal_enabled) next.thermal = thermal_steady_state(pa.l, pa.r, params.thermal);
    next.q = params.photothermal.gain > 0.0 ? pa.l - pa.r : 0.0;
    const double change = std::abs(next.mech[0].theta - s.mech[0].theta) +
                          std::abs(next.mech[1].theta - s.mech[1].theta);
    const double scale = std::abs(next.mech[0].theta) + std::abs(next.mech[1].theta);
    const double tchange = std::abs(next.thermal.u_l - s.thermal.u_l) + std::abs(next.thermal.u_r - s.thermal.u_r);
    const double tscale = std::abs(next.thermal.u_l) + std::abs(next.thermal.u_r);
    s = next;
    if (change <= 1e-15 * scale + 1e-300 && tchange <= 1e-15 * tscale + 1e-300) break;
  }
  StaticPoint sp;
  sp.theta = {s.mech[0].theta, s.mech[1].theta};
  sp.thermal = s.thermal;
  sp.photothermal = s.q;
  return sp;
}

TimeSeries impulse_response(const DeviceParams& params, const Laser& probe, const PulseSpec& pulse, Environment env,
                            SimConfig sim) {
  const double wmax = std::max(params.torsion().enabled ? params.torsion().omega_m : 0.0,
                               params.flap().enabled ? params.flap().omega_m : 0.0);
  if (!(pulse.width > 0.0) || pulse.width > 0.1 * two_pi / wmax)
    throw ValidationError("impulse_response: pulse width must be well below the mechanical period");
  if (sim.dt > pulse.width / 4.0) throw ValidationError("impulse_response: dt must resolve the pump pulse (dt <= width/4)");
  DriveConfig drive = default_drive();
  drive.probe = probe;
  drive.pump.enabled = pulse.peak_power > 0.0;
  drive.pump.port = Cavity::left;
  drive.pump.reference = FrequencyReference::left;
  drive.pump.detuning = pulse.detuning;
  drive.pump.waveform = Waveform::pulse;
  drive.pump.power = pulse.peak_power;
  drive.pump.pulse_width = pulse.width;
  drive.pump.pulse_delay = pulse.delay;
  sim.environment = env;
  return simulate(params, drive, sim);
}

BackactionRates backaction_rates(const DeviceParams& params, Cavity cavity, double delta, double n_cav,
                                 const MechMode& mode) {
  const double gamma = params.optics.gamma(cavity);
  const double ga = mode.ga(cavity);
  const double l = 1.0 + delta * delta;
  BackactionRates r;
  r.gamma_opt = -16.0 * hbar * ga * ga * delta * n_cav / (mode.inertia * gamma * gamma * l * l);
  const double k_opt = 4.0 * hbar * ga * ga * delta * n_cav / (gamma * l);
  r.omega_shift = k_opt / (2.0 * mode.inertia * mode.omega_m);
  return r;
}

// ---------------------------------------------------------------------------
// Energy balance

CycleWork cycle_work(const DeviceParams& params, const DriveConfig& drive, ModeKind kind, double amplitude,
                     double center, int samples) {
  const std::size_t k = kind == ModeKind::torsional ? 0 : 1;
  if (!params.modes[k].enabled) throw ValidationError("cycle_work: mode is disabled");
  const Model model(params, cw_only(drive), Environment::vacuum, false, true);
  const MechMode& mode = model.mode(k);
  const double w = mode.omega_m;
  const double period = two_pi / w;
  const double gain = k == 0 ? params.photothermal.gain : 0.0;

  double work = 0.0, torque_sum = 0.0, p_sum = 0.0, p_cos = 0.0, p_sin = 0.0;
  for (int j = 0; j < samples; ++j) {
    const double phi = two_pi * j / samples;
    State s;
    s.mech[k].theta = center + amplitude * std::cos(phi);
    s.mech[k].theta_dot = -amplitude * w * std::sin(phi);
    const Fields f = model.quasistatic_fields(0.0, s);
    const double torque = model.radiation_torque(k, s, model.photon_numbers(f));
    work += torque * s.mech[k].theta_dot;
    torque_sum += torque;
    if (gain > 0.0) {
      const auto pa = model.absorbed_powers(f);
      const double p = pa.l - pa.r;
      p_sum += p;
      p_cos += p * std::cos(phi);
      p_sin += p * std::sin(phi);
    }
  }
  CycleWork out;
  out.radiation = work * period / samples;
  out.mean_torque = torque_sum / samples;
  if (gain > 0.0) {
    // Fundamental of the filtered absorbed-power imbalance; only it does work.
    const cplx p1{2.0 * p_cos / samples, -2.0 * p_sin / samples};
    const cplx q1 = p1 / cplx{1.0, w * params.photothermal.delay};
    out.photothermal = gain * pi * amplitude * q1.imag();
    out.mean_torque += gain * p_sum / samples;
  }
  return out;
}

namespace {

struct BalancePoint {
  double amplitude = 0.0;
  double center = 0.0;
  double work = 0.0;
  double dissipation = 0.0;
  double excess() const { return work - dissipation; }
};

class Balance {
 public:
  Balance(const DeviceParams& params, const DriveConfig& drive, ModeKind kind, const LimitCycleOptions& opt)
      : params_(params), drive_(drive), kind_(kind), opt_(opt) {
    const std::size_t k = kind == ModeKind::torsional ? 0 : 1;
    mode_ = effective_mode(params.modes[k], Environment::vacuum);
  }

  const MechMode& mode() const { return mode_; }

  BalancePoint at(double amplitude) const {
    BalancePoint b;
    b.amplitude = amplitude;
    double c = 0.0;
    CycleWork w = cycle_work(params_, drive_, kind_, amplitude, c, opt_.samples);
    for (int it = 0; it < opt_.center_iterations; ++it) {
      const double c_new = w.mean_torque / mode_.stiffness();
      if (c_new == c) break;
      c = c_new;
      w = cycle_work(params_, drive_, kind_, amplitude, c, opt_.samples);
    }
    b.center = c;
    b.work = w.total();
    b.dissipation = pi * mode_.inertia * mode_.damping() * mode_.omega_m * amplitude * amplitude;
    return b;
  }

  double amp_max() const {
    if (opt_.amp_max > 0.0) return opt_.amp_max;
    // Leave room for the static offset so the orbit stays inside the map.
    const double c0 = cycle_work(params_, drive_, kind_, 0.0, 0.0, 8).mean_torque / mode_.stiffness();
    return std::max(0.0, (params_.map.range - std::abs(c0)) * 0.999);
  }

  std::vector<double> grid() const {
    const double hi = amp_max();
    const double lo = hi * opt_.amp_min_fraction;
    std::vector<double> g(static_cast<std::size_t>(opt_.grid));
    for (int i = 0; i < opt_.grid; ++i) g[static_cast<std::size_t>(i)] = lo * std::pow(hi / lo, static_cast<double>(i) / (opt_.grid - 1));
    return g;
  }

 private:
  const DeviceParams& params_;
  DriveConfig drive_;
  ModeKind kind_;
  LimitCycleOptions opt_;
  MechMode mode_;
};

LimitCycle solve_cycle(const DeviceParams& params, const DriveConfig& drive, ModeKind kind,
                       const LimitCycleOptions& opt, bool refine) {
  const Balance bal(params, drive, kind, opt);
  LimitCycle lc;
  lc.frequency = bal.mode().omega_m;
  if (!drive.pump.enabled && !drive.probe.enabled) {
    lc.status = LimitCycleStatus::no_cycle;
    lc.diagnostic = "no optical drive";
    return lc;
  }
  const auto grid = bal.grid();
  if (grid.empty() || !(grid.back() > 0.0)) {
    lc.status = LimitCycleStatus::range_exceeded;
    lc.diagnostic = "static deflection exceeds the dispersive map range";
    return lc;
  }

  std::size_t first_pos = grid.size();
  BalancePoint prev;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const BalancePoint b = bal.at(grid[i]);
    if (first_pos == grid.size()) {
      if (b.excess() > 0.0) first_pos = i;
      prev = b;
      continue;
    }
    if (b.excess() <= 0.0) {
      // Stable root between prev (gain wins) and b (loss wins).
      if (!refine) {
        lc.status = LimitCycleStatus::converged;
        lc.converged = true;
        lc.amplitude = b.amplitude;
        lc.center = b.center;
        lc.work = b.work;
        lc.dissipation = b.dissipation;
        return lc;
      }
      BalancePoint lo = prev, hi = b, mid;
      for (int it = 0; it < 200; ++it) {
        mid = bal.at(0.5 * (lo.amplitude + hi.amplitude));
        if (mid.excess() > 0.0)
          lo = mid;
        else
          hi = mid;
        if (std::abs(mid.excess()) < 1e-6 * mid.dissipation || hi.amplitude - lo.amplitude < 1e-15 * hi.amplitude)
          break;
      }
      lc.amplitude = mid.amplitude;
      lc.center = mid.center;
      lc.work = mid.work;
      lc.dissipation = mid.dissipation;
      lc.converged = std::abs(mid.excess()) < 1e-3 * mid.dissipation;
      lc.status = lc.converged ? LimitCycleStatus::converged : LimitCycleStatus::no_cycle;
      if (!lc.converged) lc.diagnostic = "energy balance bisection stalled";
      return lc;
    }
    prev = b;
  }
  if (first_pos == grid.size()) {
    lc.status = LimitCycleStatus::no_cycle;
    lc.diagnostic = "optical work below dissipation at every amplitude";
    return lc;
  }
  lc.status = LimitCycleStatus::range_exceeded;
  lc.amplitude = prev.amplitude;
  lc.center = prev.center;
  lc.work = prev.work;
  lc.dissipation = prev.dissipation;
  std::ostringstream os;
  os << "optical work exceeds dissipation up to the map range (amplitude " << prev.amplitude << " rad)";
  lc.diagnostic = os.str();
  return lc;
}

}  // namespace

LimitCycle find_limit_cycle(const DeviceParams& params, const DriveConfig& drive, ModeKind mode,
                            const LimitCycleOptions& opt) {
  return solve_cycle(params, drive, mode, opt, true);
}

ThresholdResult find_threshold(const DeviceParams& params, const DriveConfig& drive_template, ModeKind mode,
                               double p_lo, double p_hi, const LimitCycleOptions& opt) {
  if (!(p_lo > 0.0) || !(p_hi > p_lo)) throw ValidationError("find_threshold: need 0 < p_lo < p_hi");
  DriveConfig drive = drive_template;
  drive.pump.enabled = true;
  drive.pump.waveform = Waveform::cw;
  auto exists = [&](double p) {
    drive.pump.power = p;
    return solve_cycle(params, drive, mode, opt, false).status != LimitCycleStatus::no_cycle;
  };
  ThresholdResult r;
  r.lo = p_lo;
  r.hi = p_hi;
  if (exists(p_lo)) {
    r.diagnostic = "limit cycle already exists at the lower bracket";
    return r;
  }
  if (!exists(p_hi)) {
    r.diagnostic = "no limit cycle up to the upper bracket";
    return r;
  }
  double lo = p_lo, hi = p_hi;
  while (hi / lo - 1.0 > 1e-6) {
    const double mid = std::sqrt(lo * hi);
    if (exists(mid))
      hi = mid;
    else
      lo = mid;
  }
  r.found = true;
  r.power = hi;
  r.lo = lo;
  r.hi = hi;
  drive.pump.power = hi;
  r.amplitude = solve_cycle(params, drive, mode, opt, true).amplitude;
  return r;
}

double calibrate_photothermal_gain(const DeviceParams& params, const DriveConfig& drive_template, double target_power,
                                   const LimitCycleOptions& opt) {
  if (!(target_power > 0.0)) throw ValidationError("calibrate_photothermal_gain: target power must be > 0");
  DriveConfig drive = drive_template;
  drive.probe.enabled = false;
  drive.pump.enabled = true;
  drive.pump.waveform = Waveform::cw;
  drive.pump.power = 1.0;

  DeviceParams unit = params;
  unit.photothermal.gain = 1.0;
  if (!(unit.photothermal.delay > 0.0)) unit.photothermal.delay = 1.0 / params.torsion().omega_m;

  // Work is linear in pump power and in the gain, so the threshold follows
  // from per-amplitude components at unit power (static offset neglected).
  // Amplitude grid from the radiation-only device at the target power.
  DeviceParams no_offset = params;
  no_offset.photothermal.gain = 0.0;
  DriveConfig at_target = drive;
  at_target.pump.power = target_power;
  const Balance bal(no_offset, at_target, ModeKind::torsional, opt);
  const MechMode& mode = bal.mode();
  std::vector<double> w_rp, w_pt, diss;
  for (double a : bal.grid()) {
    const CycleWork w = cycle_work(unit, drive, ModeKind::torsional, a, 0.0, opt.samples);
    w_rp.push_back(w.radiation);
    w_pt.push_back(w.photothermal);
    diss.push_back(pi * mode.inertia * mode.damping() * mode.omega_m * a * a);
  }
  auto threshold = [&](double g) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < diss.size(); ++i) {
      const double w = w_rp[i] + g * w_pt[i];
      if (w > 0.0) best = std::min(best, diss[i] / w);
    }
    return best;
  };
  if (threshold(0.0) <= target_power) return 0.0;
  double hi = 1e-12;
  while (threshold(hi) > target_power) {
    hi *= 10.0;
    if (hi > 1e12) throw NumericalError("calibrate_photothermal_gain: no gain reaches the target threshold");
  }
  double lo = hi / 10.0;
  while (hi / lo - 1.0 > 1e-10) {
    const double mid = std::sqrt(lo * hi);
    if (threshold(mid) > target_power)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

}  // namespace seesaw
