#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "seesaw/analysis.hpp"
#include "seesaw/config.hpp"
#include "seesaw/errors.hpp"
#include "seesaw/experiments.hpp"
#include "seesaw/io.hpp"
#include "seesaw/optics.hpp"

namespace py = pybind11;
using namespace seesaw;

namespace {

// Layers as the CLI does: preset, scenario defaults, config text, overrides.
RunConfig resolve(const std::string& preset, const std::string& experiment, const std::string& variant,
                  const std::string& text, const std::vector<std::string>& sets) {
  ConfigBuilder b;
  if (!preset.empty() && preset != "none") b.preset(preset);
  if (!experiment.empty()) b.text(scenario_defaults(experiment, variant), experiment + " defaults");
  if (!text.empty()) b.text(text, "python");
  for (const auto& s : sets) b.set(s);
  return b.resolve();
}

py::object to_python(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

py::array_t<double> to_array(std::span<const double> v) {
  py::array_t<double> a(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), a.mutable_data());
  return a;
}

py::dict series_dict(const TimeSeries& ts) {
  py::dict d;
  for (const auto& n : ts.names) d[py::str(n)] = to_array(ts.column(n));
  return d;
}

py::dict limit_cycle_dict(const LimitCycle& lc) {
  py::dict d;
  d["amplitude"] = lc.amplitude;
  d["center"] = lc.center;
  d["frequency"] = lc.frequency;
  d["work"] = lc.work;
  d["dissipation"] = lc.dissipation;
  d["converged"] = lc.converged;
  d["diagnostic"] = lc.diagnostic;
  return d;
}

}  // namespace

PYBIND11_MODULE(_seesaw, m) {
  m.doc() = "Two-cavity torsional optomechanics simulator";

  auto validation = py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", validation.ptr());
  py::register_exception<RangeError>(m, "RangeError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

  m.def("experiment_names", &experiment_names);
  m.def("preset_names", &preset_names);

  m.def(
      "resolve_config",
      [](const std::string& preset, const std::string& config, const std::vector<std::string>& sets,
         const std::string& experiment, const std::string& variant) {
        return canonical_config(resolve(preset, experiment, variant, config, sets));
      },
      py::arg("preset") = "paper_device", py::arg("config") = "", py::arg("sets") = std::vector<std::string>{},
      py::arg("experiment") = "", py::arg("variant") = "",
      "Canonical config text after layering preset, scenario defaults, config text and key=value overrides.");

  m.def(
      "derive_quantities",
      [](const std::string& preset, const std::string& config, const std::vector<std::string>& sets) {
        const auto q = derive_quantities(resolve(preset, "", "", config, sets).params);
        py::dict d;
        d["gamma_l"] = q.gamma_l;
        d["gamma_r"] = q.gamma_r;
        d["tau_l"] = q.tau_l;
        d["tau_r"] = q.tau_r;
        d["k_eff"] = q.k_eff;
        d["lever_arm"] = q.lever_arm;
        d["ga"] = q.ga;
        d["m_eff"] = q.m_eff;
        d["x_zpf"] = q.x_zpf;
        d["g_0"] = q.g_0;
        d["delta_omega_c"] = q.delta_omega_c;
        d["delta_omega_c_zpf"] = q.delta_omega_c_zpf;
        d["sideband_ratio"] = q.sideband_ratio;
        return d;
      },
      py::arg("preset") = "paper_device", py::arg("config") = "", py::arg("sets") = std::vector<std::string>{});

  m.def(
      "simulate",
      [](const std::string& preset, const std::string& config, const std::vector<std::string>& sets) {
        const auto cfg = resolve(preset, "", "", config, sets);
        TimeSeries ts;
        {
          py::gil_scoped_release release;
          ts = simulate(cfg.params, cfg.drive, cfg.sim);
        }
        return series_dict(ts);
      },
      py::arg("preset") = "paper_device", py::arg("config") = "", py::arg("sets") = std::vector<std::string>{},
      "Time series of the resolved config as a dict of numpy arrays.");

  m.def(
      "run_experiment",
      [](const std::string& name, const std::string& preset, const std::string& config,
         const std::vector<std::string>& sets, const std::string& env, bool fit_gain, double threshold_target,
         std::optional<double> amplitude) {
        ExperimentOptions opt;
        opt.env = env;
        opt.fit_gain = fit_gain;
        opt.threshold_target = threshold_target;
        opt.amplitude = amplitude;
        const auto cfg = resolve(preset, name, name == "impulse" ? env : "", config, sets);
        ExperimentOutput out;
        {
          py::gil_scoped_release release;
          out = run_experiment(name, cfg, opt);
        }
        py::dict files;
        for (const auto& a : out.artifacts) files[py::str(a.filename)] = a.content;
        return py::make_tuple(to_python(out.summary), files);
      },
      py::arg("name"), py::arg("preset") = "paper_device", py::arg("config") = "",
      py::arg("sets") = std::vector<std::string>{}, py::arg("env") = "vacuum", py::arg("fit_gain") = true,
      py::arg("threshold_target") = 0.135e-6, py::arg("amplitude") = py::none(),
      "Runs a named scenario; returns (summary dict, {filename: csv text}).");

  m.def(
      "shuttle_map",
      [](const std::vector<double>& delta_l, const std::vector<double>& delta_r, double power, bool normalize,
         const std::string& preset, const std::string& config, const std::vector<std::string>& sets) {
        const auto cfg = resolve(preset, "", "", config, sets);
        const auto map = shuttle_map(cfg.params, delta_l, delta_r, power, normalize);
        py::array_t<double> a({delta_l.size(), delta_r.size()});
        std::copy(map.values.begin(), map.values.end(), a.mutable_data());
        return a;
      },
      py::arg("delta_l"), py::arg("delta_r"), py::arg("power") = 0.135e-6, py::arg("normalize") = true,
      py::arg("preset") = "paper_device", py::arg("config") = "", py::arg("sets") = std::vector<std::string>{},
      "Right-cavity photon number over normalized detunings; rows follow delta_l.");

  m.def(
      "find_limit_cycle",
      [](const std::string& preset, const std::string& config, const std::vector<std::string>& sets) {
        const auto cfg = resolve(preset, "", "", config, sets);
        return limit_cycle_dict(find_limit_cycle(cfg.params, cw_pump_drive(cfg)));
      },
      py::arg("preset") = "paper_device", py::arg("config") = "", py::arg("sets") = std::vector<std::string>{});

  m.def(
      "find_threshold",
      [](double p_lo, double p_hi, const std::string& preset, const std::string& config,
         const std::vector<std::string>& sets) {
        const auto cfg = resolve(preset, "", "", config, sets);
        const auto r = find_threshold(cfg.params, cw_pump_drive(cfg), ModeKind::torsional, p_lo, p_hi);
        py::dict d;
        d["found"] = r.found;
        d["power"] = r.power;
        d["amplitude"] = r.amplitude;
        d["diagnostic"] = r.diagnostic;
        return d;
      },
      py::arg("p_lo") = 1e-12, py::arg("p_hi") = 1.0, py::arg("preset") = "paper_device", py::arg("config") = "",
      py::arg("sets") = std::vector<std::string>{});

  m.def(
      "backaction_rates",
      [](const std::string& cavity, double delta, double n_cav, const std::string& preset, const std::string& config,
         const std::vector<std::string>& sets) {
        if (cavity != "left" && cavity != "right") throw ValidationError("cavity must be 'left' or 'right'");
        const auto cfg = resolve(preset, "", "", config, sets);
        const auto r = backaction_rates(cfg.params, cavity == "left" ? Cavity::left : Cavity::right, delta, n_cav,
                                        cfg.params.torsion());
        return py::make_tuple(r.gamma_opt, r.omega_shift);
      },
      py::arg("cavity"), py::arg("delta"), py::arg("n_cav"), py::arg("preset") = "paper_device",
      py::arg("config") = "", py::arg("sets") = std::vector<std::string>{},
      "(gamma_opt, omega_shift) in 1/s and rad/s for the torsional mode.");

  m.def(
      "fft_peaks",
      [](const std::vector<double>& y, double dt, std::size_t max_peaks, double f_min) {
        const auto s = fft_spectrum(y, dt);
        std::vector<std::pair<double, double>> out;
        for (const auto& p : find_peaks(s, max_peaks, 0.05, f_min)) out.emplace_back(p.frequency, p.magnitude);
        return out;
      },
      py::arg("y"), py::arg("dt"), py::arg("max_peaks") = 8, py::arg("f_min") = 0.0,
      "[(frequency_hz, magnitude)] of the Hann-windowed spectrum, strongest first.");

  m.def("git_blob_sha1", [](const std::string& s) { return git_blob_sha1(s); });
  m.def("embedded_config", [](const std::string& csv) { return embedded_config(csv); });
}
