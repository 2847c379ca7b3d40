#include "seesaw/optics.hpp"

#include <cmath>

#include "seesaw/constants.hpp"
#include "seesaw/errors.hpp"

namespace seesaw {

using constants::hbar;

double laser_frequency(const DeviceParams& params, const Laser& laser) {
  const auto& o = params.optics;
  switch (laser.reference) {
    case FrequencyReference::left:
      return o.omega_l0 + laser.detuning / o.tau(Cavity::left);
    case FrequencyReference::right:
      return o.omega_r0 + laser.detuning / o.tau(Cavity::right);
    case FrequencyReference::crossing:
      return resonance_crossing(params).omega + laser.detuning / o.tau(laser.port);
  }
  return 0.0;
}

DriveConfig default_drive() {
  DriveConfig d;
  d.pump.port = Cavity::left;
  d.pump.reference = FrequencyReference::left;
  d.probe.port = Cavity::right;
  d.probe.reference = FrequencyReference::right;
  return d;
}

Detunings make_detunings(const OpticalParams& optics, double omega_laser, double omega_l, double omega_r) {
  Detunings d;
  d.omega_laser = omega_laser;
  d.Delta_l = omega_laser - omega_l;
  d.Delta_r = omega_laser - omega_r;
  d.delta_l = d.Delta_l * optics.tau(Cavity::left);
  d.delta_r = d.Delta_r * optics.tau(Cavity::right);
  return d;
}

Detunings cavity_detunings(const DeviceParams& params, double theta, double omega_laser,
                           const CavityShifts& extra) {
  const auto& o = params.optics;
  const double wl = o.omega_l0 + params.map.shift(Cavity::left, theta) + extra.left;
  const double wr = o.omega_r0 + params.map.shift(Cavity::right, theta) + extra.right;
  return make_detunings(o, omega_laser, wl, wr);
}

FieldPair steady_state_fields(const OpticalParams& o, const Detunings& det, double power_left,
                              double power_right) {
  const double f = o.input_fraction();
  const cplx i1{0.0, 1.0};
  // M a = -b
  const cplx m11 = i1 * det.Delta_l - 0.5 * o.gamma(Cavity::left);
  const cplx m22 = i1 * det.Delta_r - 0.5 * o.gamma(Cavity::right);
  const cplx m12 = i1 * o.kappa;
  const cplx b1 = std::sqrt(f * o.gamma_e_l * power_left);
  const cplx b2 = std::sqrt(f * o.gamma_e_r * power_right);
  const cplx det_m = m11 * m22 - m12 * m12;
  if (std::abs(det_m) == 0.0) throw NumericalError("steady_state_fields: singular coupled-mode matrix");
  FieldPair out;
  out.a_l = -(m22 * b1 - m12 * b2) / det_m;
  out.a_r = -(m11 * b2 - m12 * b1) / det_m;
  return out;
}

FieldPair steady_state_fields(const DeviceParams& params, const Detunings& det, const Laser& laser) {
  if (laser.waveform != Waveform::cw) throw ValidationError("steady_state_fields: CW drive required");
  const double p = laser.enabled ? laser.power : 0.0;
  return laser.port == Cavity::left ? steady_state_fields(params.optics, det, p, 0.0)
                                    : steady_state_fields(params.optics, det, 0.0, p);
}

double photon_number(double energy, double omega_laser) { return energy / (hbar * omega_laser); }

double photon_number_right(const OpticalParams& o, const Detunings& det, double power_in) {
  const double tau_l = o.tau(Cavity::left);
  const double tau_r = o.tau(Cavity::right);
  const double tau_le = 2.0 / o.gamma_e_l;
  const double k = o.kappa * tau_r * tau_l;
  const double lor = (det.delta_r * det.delta_r + 1.0) * (det.delta_l * det.delta_l + 1.0);
  return (k * k / tau_le) / lor * (power_in / (hbar * det.omega_laser));
}

double closed_form_convention_factor(CouplingTopology topology) {
  return topology == CouplingTopology::standing_wave ? 1.0 : 2.0;
}

double closed_form_ratio(const OpticalParams& o, const Detunings& det) {
  const cplx i1{0.0, 1.0};
  const cplx denom = (1.0 - i1 * det.delta_l) * (1.0 - i1 * det.delta_r);
  const double kk = o.kappa * o.kappa * o.tau(Cavity::left) * o.tau(Cavity::right);
  return closed_form_convention_factor(o.topology) / std::norm(1.0 + kk / denom);
}

double waveguide_transmission(const OpticalParams& o, Cavity c, double delta) {
  const double gi = o.gamma_i(c);
  const double ge = o.gamma_e(c);
  const double D = delta / o.tau(c);
  const double D2 = D * D;
  if (o.topology == CouplingTopology::traveling_wave) {
    return ((gi - ge) * (gi - ge) / 4.0 + D2) / ((gi + ge) * (gi + ge) / 4.0 + D2);
  }
  return (gi * gi / 4.0 + D2) / ((gi + ge) * (gi + ge) / 4.0 + D2);
}

double waveguide_reflection(const OpticalParams& o, Cavity c, double delta) {
  if (o.topology == CouplingTopology::traveling_wave) return 0.0;
  const double g = o.gamma(c);
  const double ge = o.gamma_e(c);
  const double D = delta / o.tau(c);
  return (ge * ge / 4.0) / (g * g / 4.0 + D * D);
}

PortOutput port_output(const OpticalParams& o, Cavity port, cplx s_in, cplx a) {
  const double k = std::sqrt(o.input_fraction() * o.gamma_e(port));
  PortOutput out;
  out.forward = s_in - k * a;
  if (o.topology == CouplingTopology::standing_wave) out.backward = -k * a;
  return out;
}

PowerBudget power_budget(const OpticalParams& o, const FieldPair& f, double power_left, double power_right) {
  PowerBudget b;
  b.input = power_left + power_right;
  const auto out_l = port_output(o, Cavity::left, std::sqrt(power_left), f.a_l);
  const auto out_r = port_output(o, Cavity::right, std::sqrt(power_right), f.a_r);
  b.transmitted = std::norm(out_l.forward) + std::norm(out_r.forward);
  b.reflected = std::norm(out_l.backward) + std::norm(out_r.backward);
  b.dissipated = o.gamma_i_l * f.energy(Cavity::left) + o.gamma_i_r * f.energy(Cavity::right);
  return b;
}

namespace {

void check_grid(std::span<const double> g, const char* name) {
  if (g.empty()) throw RangeError(std::string("shuttle_map: empty ") + name + " grid");
  for (std::size_t i = 1; i < g.size(); ++i) {
    if (!(g[i] > g[i - 1])) throw RangeError(std::string("shuttle_map: ") + name + " grid not increasing");
  }
}

}  // namespace

ShuttleMap shuttle_map(const DeviceParams& params, std::span<const double> delta_l_grid,
                       std::span<const double> delta_r_grid, double power_in, bool normalize) {
  check_grid(delta_l_grid, "delta_L");
  check_grid(delta_r_grid, "delta_R");
  const auto& o = params.optics;
  ShuttleMap m;
  m.delta_l.assign(delta_l_grid.begin(), delta_l_grid.end());
  m.delta_r.assign(delta_r_grid.begin(), delta_r_grid.end());
  m.normalized = normalize;
  m.values.reserve(m.delta_l.size() * m.delta_r.size());

  Detunings peak;
  peak.omega_laser = o.omega_l0;
  const double n_peak = photon_number_right(o, peak, power_in);
  for (double dl : m.delta_l) {
    for (double dr : m.delta_r) {
      Detunings d;
      d.omega_laser = o.omega_l0;
      d.delta_l = dl;
      d.delta_r = dr;
      d.Delta_l = dl / o.tau(Cavity::left);
      d.Delta_r = dr / o.tau(Cavity::right);
      const double n = photon_number_right(o, d, power_in);
      m.values.push_back(normalize ? n / n_peak : n);
    }
  }
  return m;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = lo;
    return v;
  }
  for (std::size_t i = 0; i < n; ++i) v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

}  // namespace seesaw
