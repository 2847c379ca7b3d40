#include "seesaw/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "json.hpp"
#include "seesaw/constants.hpp"
#include "seesaw/errors.hpp"
#include "seesaw/io.hpp"

namespace seesaw {

using constants::two_pi;

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

// Quantities a key sets; keys sharing a quantity replace each other across layers.
std::set<std::string> quantities(const std::string& key) {
  std::string k = key;
  if (k == "q_mech") return {"torsion.q_mech"};
  if (ends_with(k, "_hz")) k = k.substr(0, k.size() - 3);
  if (k == "optics.lambda_l0") return {"optics.omega_l0"};
  if (k == "optics.lambda_r0") return {"optics.omega_r0"};
  for (const char* side : {"l", "r"}) {
    const std::string s(side);
    for (const char* stem : {"optics.gamma_i_", "optics.gamma_e_", "optics.q_intrinsic_", "optics.q_loaded_"})
      if (k == stem + s) return {"optics.gamma_" + s};
  }
  if (k == "optics.q_intrinsic" || k == "optics.q_loaded") return {"optics.gamma_l", "optics.gamma_r"};
  return {k};
}

std::string where(const ConfigBuilder::Entry& e) { return " (" + e.source + ")"; }

class Reader {
 public:
  explicit Reader(const std::vector<ConfigBuilder::Entry>& entries) {
    for (const auto& e : entries) map_[e.key] = &e;
  }

  const ConfigBuilder::Entry* find(const std::string& key) {
    auto it = map_.find(key);
    if (it == map_.end()) return nullptr;
    used_.insert(key);
    return it->second;
  }

  [[noreturn]] void fail(const ConfigBuilder::Entry& e, const std::string& msg) const {
    throw ConfigError(msg + " for key '" + e.key + "'" + where(e), e.line);
  }

  double parse_number(const ConfigBuilder::Entry& e, const std::string& text) const {
    const std::string t = trim(text);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v)) fail(e, "expected a finite number, got '" + text + "'");
    return v;
  }

  std::optional<double> number(const std::string& key) {
    const auto* e = find(key);
    if (!e) return std::nullopt;
    return parse_number(*e, e->value);
  }

  /// key in rad/s or key_hz in Hz.
  std::optional<double> rate(const std::string& key) {
    const auto* e = find(key);
    const auto* h = find(key + "_hz");
    if (e && h) fail(*h, "conflicts with '" + key + "'");
    if (e) return parse_number(*e, e->value);
    if (h) return parse_number(*h, h->value) * two_pi;
    return std::nullopt;
  }

  double required(const std::optional<double>& v, const std::string& key) const {
    if (!v) throw ConfigError("missing required key '" + key + "'", 0);
    return *v;
  }

  std::optional<std::vector<double>> rate_list(const std::string& key) {
    const auto* e = find(key);
    const auto* h = find(key + "_hz");
    if (e && h) fail(*h, "conflicts with '" + key + "'");
    const auto* src = e ? e : h;
    if (!src) return std::nullopt;
    std::vector<double> out;
    std::stringstream ss(src->value);
    for (std::string item; std::getline(ss, item, ',');) out.push_back(parse_number(*src, item) * (h ? two_pi : 1.0));
    if (out.empty()) fail(*src, "expected a comma-separated list");
    return out;
  }

  bool boolean(const std::string& key, bool def) {
    const auto* e = find(key);
    if (!e) return def;
    const std::string v = trim(e->value);
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    fail(*e, "expected true/false, got '" + v + "'");
  }

  std::string choice(const std::string& key, const std::string& def, std::initializer_list<const char*> allowed) {
    const auto* e = find(key);
    if (!e) return def;
    const std::string v = trim(e->value);
    for (const char* a : allowed)
      if (v == a) return v;
    std::string list;
    for (const char* a : allowed) list += std::string(list.empty() ? "" : "|") + a;
    fail(*e, "expected one of " + list + ", got '" + v + "'");
  }

  long long integer(const std::string& key, long long def) {
    const auto* e = find(key);
    if (!e) return def;
    const std::string v = trim(e->value);
    char* end = nullptr;
    errno = 0;
    const long long x = std::strtoll(v.c_str(), &end, 10);
    if (v.empty() || end != v.c_str() + v.size() || errno) fail(*e, "expected an integer, got '" + v + "'");
    return x;
  }

  std::uint64_t unsigned_integer(const std::string& key, std::uint64_t def) {
    const auto* e = find(key);
    if (!e) return def;
    const std::string v = trim(e->value);
    char* end = nullptr;
    errno = 0;
    const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
    if (v.empty() || v[0] == '-' || end != v.c_str() + v.size() || errno)
      fail(*e, "expected a non-negative integer, got '" + v + "'");
    return x;
  }

  void finish() const {
    for (const auto& [k, e] : map_)
      if (!used_.count(k)) throw ConfigError("unknown key '" + k + "'" + where(*e), e->line);
  }

 private:
  std::map<std::string, const ConfigBuilder::Entry*> map_;
  std::set<std::string> used_;
};

void read_optics(Reader& r, OpticalParams& o) {
  auto omega = [&](const std::string& side) {
    auto w = r.rate("optics.omega_" + side + "0");
    auto lam = r.number("optics.lambda_" + side + "0");
    if (w && lam) throw ConfigError("optics.omega_" + side + "0 and optics.lambda_" + side + "0 both given", 0);
    if (lam) return omega_from_wavelength(*lam);
    return r.required(w, "optics.omega_" + side + "0");
  };
  o.omega_l0 = omega("l");
  o.omega_r0 = omega("r");

  const auto qi_shared = r.number("optics.q_intrinsic");
  const auto ql_shared = r.number("optics.q_loaded");
  auto rates = [&](const std::string& side, double w, double& gi, double& ge) {
    const auto gi_v = r.rate("optics.gamma_i_" + side);
    const auto ge_v = r.rate("optics.gamma_e_" + side);
    auto qi = r.number("optics.q_intrinsic_" + side);
    auto ql = r.number("optics.q_loaded_" + side);
    if ((qi && qi_shared) || (ql && ql_shared))
      throw ConfigError("optics.q_*_" + side + " conflicts with the shared optics.q_* key", 0);
    if (!qi) qi = qi_shared;
    if (!ql) ql = ql_shared;
    if (gi_v || ge_v) {
      if (qi || ql) throw ConfigError("cavity " + side + ": give either gamma_i/gamma_e or Q values, not both", 0);
      gi = r.required(gi_v, "optics.gamma_i_" + side);
      ge = r.required(ge_v, "optics.gamma_e_" + side);
      return;
    }
    const double q_i = r.required(qi, "optics.q_intrinsic_" + side);
    const double q_l = r.required(ql, "optics.q_loaded_" + side);
    gi = gamma_from_q(w, q_i);
    ge = gamma_from_q(w, q_l) - gi;
  };
  rates("l", o.omega_l0, o.gamma_i_l, o.gamma_e_l);
  rates("r", o.omega_r0, o.gamma_i_r, o.gamma_e_r);
  o.kappa = r.required(r.rate("optics.kappa"), "optics.kappa");
  o.topology = r.choice("optics.coupling", "standing", {"standing", "traveling"}) == "standing"
                   ? CouplingTopology::standing_wave
                   : CouplingTopology::traveling_wave;
}

void read_mode(Reader& r, const std::string& name, MechMode& m, const DeviceParams& p, double ga_l_def,
               double ga_r_def) {
  m.enabled = r.boolean(name + ".enabled", true);
  m.omega_m = r.required(r.rate(name + ".omega_m"), name + ".omega_m");
  auto q = r.number(name + ".q_mech");
  if (name == "torsion") {
    const auto top = r.number("q_mech");
    if (q && top) throw ConfigError("q_mech and torsion.q_mech both given", 0);
    if (!q) q = top;
  }
  m.q_m = r.required(q, name + ".q_mech");
  m.q_air = r.number(name + ".q_air").value_or(0.5);
  const auto inertia = r.number(name + ".inertia");
  m.inertia = inertia ? *inertia : inertia_from_stiffness(p.k_eff, p.lever_arm, m.omega_m);
  m.ga_l = r.rate(name + ".ga_l").value_or(ga_l_def);
  m.ga_r = r.rate(name + ".ga_r").value_or(ga_r_def);
}

void read_laser(Reader& r, const std::string& name, Laser& l) {
  l.enabled = r.boolean(name + ".enabled", l.enabled);
  l.port = r.choice(name + ".port", l.port == Cavity::left ? "left" : "right", {"left", "right"}) == "left"
               ? Cavity::left
               : Cavity::right;
  l.power = r.number(name + ".power_w").value_or(l.power);
  l.detuning = r.number(name + ".detuning").value_or(l.detuning);
  const std::string ref_def = l.reference == FrequencyReference::left    ? "left"
                              : l.reference == FrequencyReference::right ? "right"
                                                                         : "crossing";
  const std::string ref = r.choice(name + ".reference", ref_def, {"left", "right", "crossing"});
  l.reference = ref == "left" ? FrequencyReference::left
                : ref == "right" ? FrequencyReference::right
                                 : FrequencyReference::crossing;
  l.waveform = r.choice(name + ".waveform", l.waveform == Waveform::cw ? "cw" : "pulse", {"cw", "pulse"}) == "cw"
                   ? Waveform::cw
                   : Waveform::pulse;
  l.pulse_width = r.number(name + ".pulse_width").value_or(l.pulse_width);
  l.pulse_delay = r.number(name + ".pulse_delay").value_or(l.pulse_delay);
}

std::vector<ConfigBuilder::Entry> parse_lines(std::string_view text, const std::string& source) {
  std::vector<ConfigBuilder::Entry> out;
  const std::string t = trim(text);
  if (!t.empty() && t.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(t);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(std::string("JSON parse error: ") + e.what() + " (" + source + ")", 0);
    }
    if (!j.is_object()) throw ConfigError("JSON config must be an object (" + source + ")", 0);
    for (const auto& [k, v] : j.items()) {
      std::string value;
      if (v.is_boolean())
        value = v.get<bool>() ? "true" : "false";
      else if (v.is_number_integer())
        value = std::to_string(v.get<long long>());
      else if (v.is_number())
        value = format_double(v.get<double>());
      else if (v.is_string())
        value = v.get<std::string>();
      else if (v.is_array()) {
        for (const auto& x : v) {
          if (!x.is_number()) throw ConfigError("JSON list '" + k + "' must hold numbers (" + source + ")", 0);
          value += (value.empty() ? "" : ",") + format_double(x.get<double>());
        }
      } else {
        throw ConfigError("JSON value for '" + k + "' must be a scalar or list (" + source + ")", 0);
      }
      out.push_back({k, value, source, 0, 0});
    }
    return out;
  }
  std::istringstream is{std::string(text)};
  int line_no = 0;
  for (std::string line; std::getline(is, line);) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const std::string s = trim(line);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value' (" + source + ")", line_no);
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key (" + source + ")", line_no);
    if (value.empty()) throw ConfigError("empty value for '" + key + "' (" + source + ")", line_no);
    out.push_back({key, value, source, line_no, 0});
  }
  return out;
}

}  // namespace

void ConfigBuilder::add(Entry e) {
  const auto q_new = quantities(e.key);
  std::vector<Entry> kept;
  for (auto& old : entries_) {
    if (old.layer == e.layer) {
      if (old.key == e.key)
        throw ConfigError("duplicate key '" + e.key + "' (" + e.source + ")", e.line);
      kept.push_back(old);
      continue;
    }
    const auto q_old = quantities(old.key);
    std::set<std::string> remaining;
    std::set_difference(q_old.begin(), q_old.end(), q_new.begin(), q_new.end(),
                        std::inserter(remaining, remaining.begin()));
    if (remaining.size() == q_old.size()) {
      kept.push_back(old);
    } else if (!remaining.empty()) {
      // Shared Q keys survive for the cavity the new layer does not touch.
      for (const auto& q : remaining) {
        Entry split = old;
        split.key = old.key + (q == "optics.gamma_l" ? "_l" : "_r");
        kept.push_back(split);
      }
    }
  }
  kept.push_back(std::move(e));
  entries_ = std::move(kept);
}

ConfigBuilder& ConfigBuilder::preset(std::string_view name) { return text(preset_text(name), "preset " + std::string(name)); }

ConfigBuilder& ConfigBuilder::text(std::string_view text, std::string_view source) {
  const int layer = ++layer_;
  for (auto& e : parse_lines(text, std::string(source))) {
    e.layer = layer;
    add(std::move(e));
  }
  return *this;
}

ConfigBuilder& ConfigBuilder::file(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw ConfigError("config file not found: " + path.string(), 0);
  return text(read_text(path), path.string());
}

ConfigBuilder& ConfigBuilder::set(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) throw ConfigError("--set expects key=value, got '" + std::string(assignment) + "'", 0);
  Entry e{trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)), "--set", 0, ++layer_};
  if (e.key.empty() || e.value.empty()) throw ConfigError("--set expects key=value, got '" + std::string(assignment) + "'", 0);
  add(std::move(e));
  return *this;
}

RunConfig ConfigBuilder::resolve() const {
  Reader r(entries_);
  RunConfig cfg;
  DeviceParams& p = cfg.params;

  read_optics(r, p.optics);
  p.g_om = r.required(r.rate("device.g_om"), "device.g_om");
  p.lever_arm = r.required(r.number("device.lever_arm"), "device.lever_arm");
  p.k_eff = r.required(r.number("device.k_eff"), "device.k_eff");
  p.temperature = r.number("device.temperature").value_or(300.0);
  const double ga = p.g_om * p.lever_arm;

  p.torsion().kind = ModeKind::torsional;
  read_mode(r, "torsion", p.torsion(), p, -ga, ga);
  p.flap().kind = ModeKind::flapping;
  read_mode(r, "flap", p.flap(), p, -ga, -ga);

  p.map.left = r.rate_list("map.left").value_or(std::vector<double>{p.torsion().ga_l});
  p.map.right = r.rate_list("map.right").value_or(std::vector<double>{p.torsion().ga_r});
  p.map.range = r.number("map.range").value_or(5e-3);
  p.map.allow_extrapolation = r.boolean("map.extrapolate", false);

  auto& th = p.thermal;
  th.tau_local = r.required(r.number("thermal.tau_local"), "thermal.tau_local");
  th.tau_cross = r.required(r.number("thermal.tau_cross"), "thermal.tau_cross");
  th.eta_abs = r.number("thermal.eta_abs").value_or(1.0);
  th.c_heat = r.required(r.number("thermal.c_heat"), "thermal.c_heat");
  th.dw_dT = r.required(r.rate("thermal.dw_dt"), "thermal.dw_dt");

  p.photothermal.gain = r.number("photothermal.gain").value_or(0.0);
  p.photothermal.delay = r.number("photothermal.delay").value_or(1.0 / p.torsion().omega_m);

  cfg.drive = default_drive();
  read_laser(r, "pump", cfg.drive.pump);
  read_laser(r, "probe", cfg.drive.probe);
  cfg.drive.output_sum = r.choice("output.sum", "incoherent", {"incoherent", "coherent"}) == "incoherent"
                             ? OutputSum::incoherent
                             : OutputSum::coherent;

  SimConfig& s = cfg.sim;
  s.method = r.choice("sim.method", "quasistatic", {"quasistatic", "full"}) == "full" ? Method::full : Method::quasistatic;
  s.dt = r.number("sim.dt").value_or(s.dt);
  s.duration = r.number("sim.duration").value_or(s.duration);
  s.output_stride = static_cast<int>(r.integer("sim.output_stride", s.output_stride));
  s.environment = r.choice("sim.environment", "vacuum", {"vacuum", "air"}) == "air" ? Environment::air : Environment::vacuum;
  s.thermal_enabled = r.boolean("sim.thermal", s.thermal_enabled);
  s.retardation_enabled = r.boolean("sim.retardation", s.retardation_enabled);
  s.allow_many_steps = r.boolean("sim.allow_long", s.allow_many_steps);
  s.start_at_equilibrium = r.boolean("sim.start_at_equilibrium", s.start_at_equilibrium);
  s.theta0 = r.number("sim.theta0").value_or(s.theta0);
  s.theta_dot0 = r.number("sim.theta_dot0").value_or(s.theta_dot0);
  s.flap0 = r.number("sim.flap0").value_or(s.flap0);
  s.noise.enabled = r.boolean("noise.enabled", s.noise.enabled);
  s.noise.temperature = r.number("noise.temperature").value_or(p.temperature);
  s.noise.seed = r.unsigned_integer("noise.seed", s.noise.seed);

  r.finish();

  const ValidationReport rep = validate_params(p);
  if (!rep.ok()) throw ValidationError("invalid parameters:\n" + rep.summary());
  return cfg;
}

std::vector<std::string> preset_names() { return {"paper_device"}; }

std::string preset_text(std::string_view name) {
  if (name != "paper_device") throw ValidationError("unknown preset '" + std::string(name) + "'");
  auto f = format_double;
  std::ostringstream os;
  os << "# Fabricated see-saw device as quoted; thermal values are a fitted calibration.\n";
  os << "optics.lambda_l0 = " << f(reference::lambda_l0) << '\n';
  os << "optics.lambda_r0 = " << f(reference::lambda_r0) << '\n';
  os << "optics.q_loaded = " << f(reference::q_loaded) << '\n';
  os << "optics.q_intrinsic = " << f(reference::q_intrinsic) << '\n';
  os << "optics.kappa_hz = " << f(reference::kappa_hz) << '\n';
  os << "optics.coupling = standing\n";
  os << "device.g_om_hz = " << f(reference::g_om_hz) << '\n';
  os << "device.lever_arm = " << f(reference::lever_arm) << '\n';
  os << "device.k_eff = " << f(reference::k_eff) << '\n';
  os << "device.temperature = " << f(reference::temperature) << '\n';
  os << "torsion.omega_m_hz = " << f(reference::torsion_hz) << '\n';
  os << "torsion.q_mech = " << f(reference::torsion_q) << '\n';
  os << "torsion.q_air = " << f(reference::q_air) << '\n';
  os << "flap.omega_m_hz = " << f(reference::flap_hz) << '\n';
  os << "flap.q_mech = " << f(reference::flap_q) << '\n';
  os << "flap.q_air = " << f(reference::q_air) << '\n';
  os << "map.range = " << f(reference::map_range) << '\n';
  os << "thermal.tau_local = " << f(reference::tau_local) << '\n';
  os << "thermal.tau_cross = " << f(reference::tau_cross) << '\n';
  os << "thermal.eta_abs = " << f(reference::eta_abs) << '\n';
  os << "thermal.c_heat = " << f(reference::c_heat) << '\n';
  os << "thermal.dw_dt_hz = " << f(reference::dw_dT_hz) << '\n';
  os << "photothermal.gain = 0\n";
  return os.str();
}

RunConfig load_preset(std::string_view name) { return ConfigBuilder().preset(name).resolve(); }

std::string canonical_config(const RunConfig& cfg) {
  const auto& p = cfg.params;
  const auto& o = p.optics;
  std::ostringstream os;
  auto num = [&](const std::string& k, double v) { os << k << " = " << format_double(v) << '\n'; };
  auto str = [&](const std::string& k, const std::string& v) { os << k << " = " << v << '\n'; };
  auto flag = [&](const std::string& k, bool v) { str(k, v ? "true" : "false"); };
  auto list = [&](const std::string& k, const std::vector<double>& v) {
    std::string s;
    for (double x : v) s += (s.empty() ? "" : ",") + format_double(x);
    str(k, s);
  };

  num("optics.omega_l0", o.omega_l0);
  num("optics.omega_r0", o.omega_r0);
  num("optics.gamma_i_l", o.gamma_i_l);
  num("optics.gamma_e_l", o.gamma_e_l);
  num("optics.gamma_i_r", o.gamma_i_r);
  num("optics.gamma_e_r", o.gamma_e_r);
  num("optics.kappa", o.kappa);
  str("optics.coupling", o.topology == CouplingTopology::standing_wave ? "standing" : "traveling");
  num("device.g_om", p.g_om);
  num("device.lever_arm", p.lever_arm);
  num("device.k_eff", p.k_eff);
  num("device.temperature", p.temperature);
  const char* names[2] = {"torsion", "flap"};
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& m = p.modes[i];
    const std::string n = names[i];
    flag(n + ".enabled", m.enabled);
    num(n + ".omega_m", m.omega_m);
    num(n + ".q_mech", m.q_m);
    num(n + ".q_air", m.q_air);
    num(n + ".inertia", m.inertia);
    num(n + ".ga_l", m.ga_l);
    num(n + ".ga_r", m.ga_r);
  }
  list("map.left", p.map.left);
  list("map.right", p.map.right);
  num("map.range", p.map.range);
  flag("map.extrapolate", p.map.allow_extrapolation);
  num("thermal.tau_local", p.thermal.tau_local);
  num("thermal.tau_cross", p.thermal.tau_cross);
  num("thermal.eta_abs", p.thermal.eta_abs);
  num("thermal.c_heat", p.thermal.c_heat);
  num("thermal.dw_dt", p.thermal.dw_dT);
  num("photothermal.gain", p.photothermal.gain);
  num("photothermal.delay", p.photothermal.delay);

  auto laser = [&](const std::string& n, const Laser& l) {
    flag(n + ".enabled", l.enabled);
    str(n + ".port", l.port == Cavity::left ? "left" : "right");
    num(n + ".power_w", l.power);
    num(n + ".detuning", l.detuning);
    str(n + ".reference", l.reference == FrequencyReference::left    ? "left"
                          : l.reference == FrequencyReference::right ? "right"
                                                                     : "crossing");
    str(n + ".waveform", l.waveform == Waveform::cw ? "cw" : "pulse");
    num(n + ".pulse_width", l.pulse_width);
    num(n + ".pulse_delay", l.pulse_delay);
  };
  laser("pump", cfg.drive.pump);
  laser("probe", cfg.drive.probe);
  str("output.sum", cfg.drive.output_sum == OutputSum::incoherent ? "incoherent" : "coherent");

  const auto& s = cfg.sim;
  str("sim.method", s.method == Method::full ? "full" : "quasistatic");
  num("sim.dt", s.dt);
  num("sim.duration", s.duration);
  str("sim.output_stride", std::to_string(s.output_stride));
  str("sim.environment", s.environment == Environment::air ? "air" : "vacuum");
  flag("sim.thermal", s.thermal_enabled);
  flag("sim.retardation", s.retardation_enabled);
  flag("sim.allow_long", s.allow_many_steps);
  flag("sim.start_at_equilibrium", s.start_at_equilibrium);
  num("sim.theta0", s.theta0);
  num("sim.theta_dot0", s.theta_dot0);
  num("sim.flap0", s.flap0);
  flag("noise.enabled", s.noise.enabled);
  num("noise.temperature", s.noise.temperature);
  str("noise.seed", std::to_string(s.noise.seed));
  return os.str();
}

const std::vector<KeyDoc>& config_schema() {
  static const std::vector<KeyDoc> docs = {
      {"optics.omega_l0 | optics.omega_l0_hz | optics.lambda_l0", "left cavity rest frequency (rad/s | Hz | m)"},
      {"optics.omega_r0 | optics.omega_r0_hz | optics.lambda_r0", "right cavity rest frequency"},
      {"optics.gamma_i_l, optics.gamma_e_l (+_hz)", "left intrinsic / external energy decay rates"},
      {"optics.gamma_i_r, optics.gamma_e_r (+_hz)", "right intrinsic / external energy decay rates"},
      {"optics.q_intrinsic[_l|_r], optics.q_loaded[_l|_r]", "alternative to the gamma keys; gamma_e = gamma_loaded - gamma_i"},
      {"optics.kappa (+_hz)", "inter-cavity field coupling rate"},
      {"optics.coupling", "standing | traveling waveguide coupling"},
      {"device.g_om (+_hz)", "dispersive coupling, rad/s per m"},
      {"device.lever_arm", "cavity distance from the torsion axis, m"},
      {"device.k_eff", "linear spring constant at the cavity, N/m"},
      {"device.temperature", "bath temperature, K"},
      {"torsion.* / flap.*", "enabled, omega_m (+_hz), q_mech, q_air, inertia (default k_eff l^2/Omega^2), ga_l, ga_r (+_hz)"},
      {"q_mech", "shorthand for torsion.q_mech"},
      {"map.left, map.right (+_hz)", "shift polynomial coefficients of theta^1.. (default: torsional ga)"},
      {"map.range, map.extrapolate", "valid |theta| range in rad; allow evaluation outside it"},
      {"thermal.tau_local, thermal.tau_cross, thermal.eta_abs, thermal.c_heat, thermal.dw_dt (+_hz)", "two-compartment thermo-optic model"},
      {"photothermal.gain, photothermal.delay", "delayed absorbed-power torque, N m/W and s (default off)"},
      {"pump.* / probe.*", "enabled, port (left|right), power_w, detuning, reference (left|right|crossing), waveform (cw|pulse), pulse_width, pulse_delay"},
      {"output.sum", "incoherent | coherent combination of lasers at the right output"},
      {"sim.*", "method (quasistatic|full), dt, duration, output_stride, environment (vacuum|air), thermal, retardation, allow_long, start_at_equilibrium, theta0, theta_dot0, flap0"},
      {"noise.*", "enabled, temperature, seed"},
  };
  return docs;
}

}  // namespace seesaw
