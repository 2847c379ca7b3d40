#include "seesaw/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "seesaw/constants.hpp"
#include "seesaw/errors.hpp"

namespace seesaw {

using constants::hbar;
using constants::two_pi;

namespace {

double poly_value(const std::vector<double>& c, double x) {
  // Horner on coefficients of x^1..x^n.
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = (acc + *it) * x;
  return acc;
}

double poly_slope(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + static_cast<double>(k + 1) * c[k];
  return acc;
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

bool DispersiveMap::in_range(double theta) const { return std::abs(theta) <= range; }

double DispersiveMap::shift(Cavity c, double theta) const {
  if (!allow_extrapolation && !in_range(theta)) {
    std::ostringstream os;
    os << "rotation angle " << theta << " rad outside dispersive map range +/-" << range;
    throw RangeError(os.str());
  }
  return poly_value(coefficients(c), theta);
}

double DispersiveMap::slope(Cavity c, double theta) const { return poly_slope(coefficients(c), theta); }

bool ValidationReport::ok() const {
  return std::none_of(issues.begin(), issues.end(), [](const ValidationIssue& i) {
    return i.severity == ValidationIssue::Severity::error;
  });
}

bool ValidationReport::has(const std::string& invariant) const {
  return std::any_of(issues.begin(), issues.end(),
                     [&](const ValidationIssue& i) { return i.invariant == invariant; });
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (const auto& i : issues) {
    os << (i.severity == ValidationIssue::Severity::error ? "error: " : "warning: ") << i.invariant;
    if (!i.message.empty()) os << " (" << i.message << ")";
    os << '\n';
  }
  return os.str();
}

ValidationReport validate_params(const DeviceParams& p) {
  ValidationReport r;
  auto error = [&](std::string inv, std::string msg = {}) {
    r.issues.push_back({ValidationIssue::Severity::error, std::move(inv), std::move(msg)});
  };
  auto warn = [&](std::string inv, std::string msg = {}) {
    r.issues.push_back({ValidationIssue::Severity::warning, std::move(inv), std::move(msg)});
  };

  const auto& o = p.optics;
  if (!finite_positive(o.omega_l0) || !finite_positive(o.omega_r0)) error("cavity frequencies > 0");
  for (double g : {o.gamma_i_l, o.gamma_e_l, o.gamma_i_r, o.gamma_e_r}) {
    if (!finite_positive(g)) {
      error("optical rates > 0", "intrinsic and external decay rates must be positive");
      break;
    }
  }
  if (!finite_positive(o.kappa)) error("optical rates > 0", "kappa must be positive");
  if (r.ok()) {
    const double gmin = std::min(o.gamma(Cavity::left), o.gamma(Cavity::right));
    if (o.kappa >= gmin / 10.0) warn("weak inter-cavity coupling", "kappa >= min(gamma)/10");
  }

  for (const auto& m : p.modes) {
    const std::string name = m.kind == ModeKind::torsional ? "torsional" : "flapping";
    if (!finite_positive(m.omega_m)) error("Omega_m > 0", name);
    if (!(std::isfinite(m.q_m) && m.q_m > 0.0) || !(m.omega_m / m.q_m > 0.0)) error("Gamma_m > 0", name);
    if (!finite_positive(m.q_air)) error("Gamma_m > 0", name + " air damping");
    if (!finite_positive(m.inertia)) error("inertia > 0", name);
    if (m.kind == ModeKind::torsional) {
      if (!(m.ga_l * m.ga_r < 0.0)) error("anti-symmetric signs", "torsional gA_L and gA_R must have opposite signs");
    } else {
      if (!(m.ga_l * m.ga_r > 0.0)) error("symmetric signs", "flapping gA_L and gA_R must share a sign");
    }
  }
  if (p.torsion().ga_l > 0.0) {
    warn("angle sign convention", "theta > 0 should red-shift the left cavity (gA_L < 0)");
  }

  const auto& map = p.map;
  if (map.left.empty() || map.right.empty()) {
    error("dispersive map defined");
  } else {
    if (map.left[0] != p.torsion().ga_l || map.right[0] != p.torsion().ga_r)
      error("map slope matches torsional coupling", "linear map coefficients must equal torsional gA");
  }
  if (!finite_positive(map.range)) error("map range > 0");

  const auto& t = p.thermal;
  if (!finite_positive(t.tau_local) || !finite_positive(t.tau_cross)) error("thermal times > 0");
  if (!(t.eta_abs >= 0.0 && t.eta_abs <= 1.0)) error("0 <= eta_abs <= 1");
  if (!finite_positive(t.c_heat)) error("heat capacity > 0");
  if (!std::isfinite(t.dw_dT)) error("thermo-optic coefficient finite");
  if (!(p.photothermal.gain >= 0.0) || !std::isfinite(p.photothermal.gain)) error("photothermal gain >= 0");
  if (p.photothermal.gain > 0.0 && !finite_positive(p.photothermal.delay)) error("photothermal delay > 0");

  if (!finite_positive(p.k_eff)) error("k_eff > 0");
  if (!finite_positive(p.lever_arm)) error("lever arm > 0");
  if (!finite_positive(p.g_om)) error("g_OM > 0");
  if (!(p.temperature >= 0.0)) error("temperature >= 0");
  return r;
}

DerivedQuantities derive_quantities(const DeviceParams& p) {
  if (!finite_positive(p.k_eff)) throw ValidationError("derive_quantities: k_eff must be positive");
  const MechMode& m = p.torsion();
  if (!finite_positive(m.inertia)) throw ValidationError("derive_quantities: inertia must be positive");
  if (!finite_positive(m.omega_m)) throw ValidationError("derive_quantities: Omega_m must be positive");

  DerivedQuantities d;
  d.gamma_l = p.optics.gamma(Cavity::left);
  d.gamma_r = p.optics.gamma(Cavity::right);
  d.tau_l = 2.0 / d.gamma_l;
  d.tau_r = 2.0 / d.gamma_r;
  d.k_eff = p.k_eff;
  d.lever_arm = p.lever_arm;
  d.ga = p.g_om * p.lever_arm;
  d.m_eff = p.k_eff / (m.omega_m * m.omega_m);
  d.x_zpf = std::sqrt(hbar / (2.0 * d.m_eff * m.omega_m));
  d.g_0 = p.g_om * d.x_zpf;
  d.delta_omega_c = hbar * p.g_om * p.g_om / p.k_eff;
  d.delta_omega_c_zpf = 2.0 * d.g_0 * d.g_0 / m.omega_m;
  d.sideband_ratio = m.omega_m / std::min(d.gamma_l, d.gamma_r);
  return d;
}

double gamma_from_q(double omega, double q) { return omega / q; }
double q_from_gamma(double omega, double gamma) { return omega / gamma; }
double omega_from_wavelength(double lambda) { return two_pi * constants::c_light / lambda; }

double inertia_from_stiffness(double k_eff, double lever_arm, double omega_m) {
  return k_eff * lever_arm * lever_arm / (omega_m * omega_m);
}

DeviceParams paper_device() {
  DeviceParams p;
  auto& o = p.optics;
  o.omega_l0 = omega_from_wavelength(reference::lambda_l0);
  o.omega_r0 = omega_from_wavelength(reference::lambda_r0);
  // gamma_e = gamma_loaded - gamma_i.
  o.gamma_i_l = gamma_from_q(o.omega_l0, reference::q_intrinsic);
  o.gamma_e_l = gamma_from_q(o.omega_l0, reference::q_loaded) - o.gamma_i_l;
  o.gamma_i_r = gamma_from_q(o.omega_r0, reference::q_intrinsic);
  o.gamma_e_r = gamma_from_q(o.omega_r0, reference::q_loaded) - o.gamma_i_r;
  o.kappa = reference::kappa_hz * two_pi;
  o.topology = CouplingTopology::standing_wave;

  p.g_om = reference::g_om_hz * two_pi;
  p.lever_arm = reference::lever_arm;
  p.k_eff = reference::k_eff;
  p.temperature = reference::temperature;
  const double ga = p.g_om * p.lever_arm;

  auto& t = p.torsion();
  t.kind = ModeKind::torsional;
  t.omega_m = reference::torsion_hz * two_pi;
  t.q_m = reference::torsion_q;
  t.q_air = reference::q_air;
  t.inertia = inertia_from_stiffness(p.k_eff, p.lever_arm, t.omega_m);
  t.ga_l = -ga;
  t.ga_r = ga;

  auto& f = p.flap();
  f.kind = ModeKind::flapping;
  f.omega_m = reference::flap_hz * two_pi;
  f.q_m = reference::flap_q;
  f.q_air = reference::q_air;
  f.inertia = inertia_from_stiffness(p.k_eff, p.lever_arm, f.omega_m);
  f.ga_l = -ga;
  f.ga_r = -ga;

  p.map.left = {t.ga_l};
  p.map.right = {t.ga_r};
  p.map.range = reference::map_range;

  p.thermal.tau_local = reference::tau_local;
  p.thermal.tau_cross = reference::tau_cross;
  p.thermal.eta_abs = reference::eta_abs;
  p.thermal.c_heat = reference::c_heat;
  p.thermal.dw_dT = reference::dw_dT_hz * two_pi;

  p.photothermal.gain = 0.0;
  p.photothermal.delay = 1.0 / t.omega_m;
  return p;
}

DeviceParams reduced_stiffness(const DeviceParams& params, double ratio) {
  DeviceParams p = params;
  const double target = ratio * p.torsion().omega_m;
  const double scale = target / p.optics.gamma(Cavity::left);
  p.optics.gamma_i_l *= scale;
  p.optics.gamma_e_l *= scale;
  p.optics.gamma_i_r *= scale;
  p.optics.gamma_e_r *= scale;
  p.optics.kappa *= scale;
  return p;
}

Crossing resonance_crossing(const DeviceParams& p) {
  // f(theta) = omega_L(theta) - omega_R(theta); bisection on a scanned bracket.
  const auto f = [&](double th) {
    return (p.optics.omega_l0 + p.map.shift(Cavity::left, th)) -
           (p.optics.omega_r0 + p.map.shift(Cavity::right, th));
  };
  const double r = p.map.range;
  constexpr int n_scan = 400;
  double best = 0.0;
  bool found = false;
  double prev_th = -r;
  double prev_f = f(prev_th);
  for (int i = 1; i <= n_scan; ++i) {
    const double th = -r + 2.0 * r * i / n_scan;
    const double v = f(th);
    if (prev_f == 0.0 || (prev_f < 0.0) != (v < 0.0)) {
      double lo = prev_th, hi = th, flo = prev_f;
      for (int it = 0; it < 200 && hi - lo > 1e-18; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      const double root = 0.5 * (lo + hi);
      if (!found || std::abs(root) < std::abs(best)) best = root;
      found = true;
    }
    prev_th = th;
    prev_f = v;
  }
  if (!found) throw RangeError("resonances do not cross within the dispersive map range");
  return {best, p.optics.omega_l0 + p.map.shift(Cavity::left, best)};
}

}  // namespace seesaw
