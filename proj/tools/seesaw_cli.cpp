#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "seesaw/config.hpp"
#include "seesaw/errors.hpp"
#include "seesaw/experiments.hpp"
#include "seesaw/io.hpp"

namespace fs = std::filesystem;
using namespace seesaw;

namespace {

struct Globals {
  std::string preset = "paper_device";
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::vector<std::string> sets;
};

void add_globals(CLI::App& app, Globals& g) {
  app.add_option("--preset", g.preset, "Named parameter preset, or 'none'")->capture_default_str();
  app.add_option("--config", g.config, "Config file (flat key = value or JSON)");
  app.add_option("--seed", g.seed, "Noise seed (sets noise.seed)");
  app.add_option("--out", g.out, "Output directory (default out/<command>)");
  app.add_option("--set", g.sets, "Override key=value, repeatable")->allow_extra_args(false);
}

RunConfig resolve(const Globals& g, const std::string& experiment, const std::string& variant) {
  ConfigBuilder b;
  if (g.preset != "none") b.preset(g.preset);
  if (!experiment.empty()) b.text(scenario_defaults(experiment, variant), experiment + " defaults");
  if (!g.config.empty()) b.file(g.config);
  for (const auto& s : g.sets) b.set(s);
  if (g.seed) b.set("noise.seed=" + std::to_string(*g.seed));
  return b.resolve();
}

void write_outputs(const fs::path& dir, const std::string& command, const RunConfig& cfg, ExperimentOutput out,
                   const std::vector<std::string>& argv) {
  nlohmann::json files = nlohmann::json::array();
  for (const auto& a : out.artifacts) {
    write_text(dir / a.filename, a.content);
    files.push_back({{"file", a.filename}, {"content_sha1", parse_csv(a.content).content_hash}});
  }
  std::string cmdline;
  for (const auto& s : argv) cmdline += (cmdline.empty() ? "" : " ") + s;
  out.summary["command"] = command;
  out.summary["argv"] = cmdline;
  out.summary["seed"] = cfg.sim.noise.seed;
  out.summary["artifacts"] = files;
  write_text(dir / "summary.json", out.summary.dump(2) + "\n");
  std::cout << out.summary.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-cavity torsional optomechanics simulator"};
  app.require_subcommand(1);
  Globals g;
  add_globals(app, g);

  ExperimentOptions opt;
  std::optional<double> pump_power;
  std::string amplitude;
  bool no_fit = false;

  std::vector<std::pair<std::string, CLI::App*>> subs;
  auto sub = [&](const std::string& name, const std::string& doc) {
    CLI::App* s = app.add_subcommand(name, doc);
    add_globals(*s, g);
    subs.emplace_back(name, s);
    return s;
  };

  sub("spectrum", "Optical transmission spectra of both ports at rest");
  sub("impulse", "Pulsed-pump impulse response read out by the probe")
      ->add_option("--env", opt.env, "vacuum or air")
      ->check(CLI::IsMember({"vacuum", "air"}))
      ->capture_default_str();
  auto* selfosc = sub("selfosc", "Limit cycle under a CW pump and its verification run");
  auto* shuttle = sub("shuttle", "Photon shuttling statistics over an oscillation");
  shuttle->add_option("--pump-power", pump_power, "Pump power in W; amplitude then follows the limit cycle");
  shuttle->add_option("--amplitude", amplitude, "Oscillation amplitude in rad, or 'align' for the crossing");
  sub("map", "Normalized right-cavity photon map over both detunings, with trajectory");
  sub("noise", "Thermomechanical Langevin run and equipartition check");
  auto* threshold = sub("threshold", "Self-oscillation threshold, radiation pressure only and with the fitted channel");
  auto* strobo = sub("strobo", "Stroboscopic reconstruction of both resonance trajectories");
  for (auto* s : {selfosc, shuttle, threshold, strobo}) {
    s->add_flag("--no-fit-gain", no_fit, "Keep the configured photothermal gain (no fit)");
    s->add_option("--threshold-target", opt.threshold_target, "Threshold power the gain fit targets, W")
        ->capture_default_str();
  }
  auto* sim = app.add_subcommand("simulate", "Free-form simulation of the resolved config");
  add_globals(*sim, g);
  auto* show = app.add_subcommand("config", "Print the resolved canonical config");
  add_globals(*show, g);
  std::string show_for;
  show->add_option("--experiment", show_for, "Include this experiment's defaults layer");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  const std::vector<std::string> args(argv, argv + argc);
  try {
    if (show->parsed()) {
      std::cout << canonical_config(resolve(g, show_for, show_for == "impulse" ? opt.env : ""));
      return 0;
    }
    if (sim->parsed()) {
      const auto cfg = resolve(g, "", "");
      const auto ts = simulate(cfg.params, cfg.drive, cfg.sim);
      const fs::path dir = g.out.empty() ? fs::path("out/simulate") : fs::path(g.out);
      ExperimentOutput out;
      out.summary = {{"experiment", "simulate"}, {"samples", ts.size()}};
      const auto diag = ts.meta("diagnostic.map_range_exceeded_at");
      if (!diag.empty()) out.summary["map_range_exceeded_at"] = diag;
      out.artifacts.push_back({"timeseries.csv", render_csv(ts, canonical_config(cfg), cfg.sim.noise.seed)});
      write_outputs(dir, "simulate", cfg, std::move(out), args);
      return 0;
    }
    for (const auto& [name, s] : subs) {
      if (!s->parsed()) continue;
      if (name == "shuttle") {
        if (pump_power) {
          g.sets.insert(g.sets.begin(), "pump.power_w=" + format_double(*pump_power));
          opt.amplitude_from_limit_cycle = true;
        }
        if (!amplitude.empty() && amplitude != "align") {
          std::size_t used = 0;
          double a = 0.0;
          try {
            a = std::stod(amplitude, &used);
          } catch (const std::exception&) {
            used = 0;
          }
          if (used != amplitude.size()) throw ValidationError("--amplitude must be a number or 'align'");
          opt.amplitude = a;
        } else if (amplitude == "align") {
          opt.amplitude_from_limit_cycle = false;
        }
      }
      opt.fit_gain = !no_fit;
      const auto cfg = resolve(g, name, name == "impulse" ? opt.env : "");
      auto out = run_experiment(name, cfg, opt);
      const fs::path dir = g.out.empty() ? fs::path("out") / name : fs::path(g.out);
      write_outputs(dir, name, cfg, std::move(out), args);
      return 0;
    }
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 3;
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const RangeError& e) {
    std::cerr << "out of range: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
