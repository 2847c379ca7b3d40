#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "seesaw/analysis.hpp"
#include "seesaw/constants.hpp"
#include "seesaw/dynamics.hpp"
#include "seesaw/errors.hpp"
#include "seesaw/optics.hpp"

using namespace seesaw;
using constants::two_pi;

namespace {

double period(const DeviceParams& p) { return two_pi / p.torsion().omega_m; }

DriveConfig pump_at_crossing(double power) {
  DriveConfig d = default_drive();
  d.pump.enabled = true;
  d.pump.reference = FrequencyReference::crossing;
  d.pump.power = power;
  return d;
}

DeviceParams torsion_only() {
  auto p = paper_device();
  p.flap().enabled = false;
  return p;
}

}  // namespace

TEST_CASE("free ring-down at Omega_m with amplitude decay Gamma_m/2") {
  auto p = torsion_only();
  p.torsion().q_m = 200.0;
  SimConfig sim;
  sim.dt = period(p) / 400;
  sim.duration = 60 * period(p);
  sim.start_at_equilibrium = false;
  sim.theta0 = 1e-4;
  const auto ts = simulate(p, default_drive(), sim);
  const auto t = ts.column("t");
  const auto th = ts.column("theta_t");
  const auto& m = p.torsion();
  // Closed-form damped oscillator from rest.
  const double g = m.damping() / 2.0;
  const double wd = std::sqrt(m.omega_m * m.omega_m - g * g);
  double worst = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double exact = 1e-4 * std::exp(-g * t[i]) * (std::cos(wd * t[i]) + g / wd * std::sin(wd * t[i]));
    worst = std::max(worst, std::abs(th[i] - exact));
  }
  CHECK(worst / 1e-4 < 1e-6);
}

TEST_CASE("undamped oscillation conserves energy over 1000 periods") {
  auto p = torsion_only();
  p.torsion().q_m = 1e300;
  SimConfig sim;
  sim.dt = period(p) / 1000;
  sim.duration = 1000 * period(p);
  sim.output_stride = 1000;
  sim.start_at_equilibrium = false;
  sim.theta0 = 1e-4;
  const auto ts = simulate(p, default_drive(), sim);
  const auto th = ts.column("theta_t");
  // Sampled once per period at the turning point.
  double worst = 0.0;
  for (double v : th) worst = std::max(worst, std::abs(v * v / (1e-4 * 1e-4) - 1.0));
  CHECK(worst < 1e-8);
}

TEST_CASE("identical config and seed give bit-identical records") {
  auto p = torsion_only();
  SimConfig sim;
  sim.dt = period(p) / 200;
  sim.duration = 20 * period(p);
  sim.noise = {300.0, 11, true};
  const auto d = pump_at_crossing(1e-6);
  const auto a = simulate(p, d, sim);
  const auto b = simulate(p, d, sim);
  CHECK(a.columns == b.columns);
  sim.noise.seed = 12;
  CHECK(simulate(p, d, sim).columns != a.columns);
}

TEST_CASE("photon numbers stay non-negative") {
  auto p = torsion_only();
  SimConfig sim;
  sim.dt = period(p) / 500;
  sim.duration = 10 * period(p);
  sim.start_at_equilibrium = false;
  sim.theta0 = 1.5e-3;
  const auto ts = simulate(p, pump_at_crossing(1e-6), sim);
  for (const char* c : {"n_l", "n_r"})
    for (double v : ts.column(c)) CHECK(v >= 0.0);
}

TEST_CASE("sub-threshold drive relaxes to the static solution") {
  auto p = torsion_only();
  p.torsion().q_m = 50.0;
  const auto d = pump_at_crossing(1e-6);
  SimConfig sim;
  sim.dt = period(p) / 200;
  sim.duration = 300 * period(p);
  sim.start_at_equilibrium = false;
  const auto ts = simulate(p, d, sim);
  const auto eq = static_equilibrium(p, d, Environment::vacuum, false);
  const auto det = cavity_detunings(p, eq.theta[0], laser_frequency(p, d.pump));
  const auto f = steady_state_fields(p.optics, det, d.pump.power, 0.0);
  const double n = photon_number(f.energy(Cavity::right), det.omega_laser);
  CHECK(std::abs(ts.column("n_r").back() / n - 1.0) < 1e-6);
  CHECK(std::abs(ts.column("theta_t").back() / eq.theta[0] - 1.0) < 1e-6);
}

TEST_CASE("static angle gives the closed-form photon number in the weak-coupling limit") {
  auto p = torsion_only();
  p.optics.kappa *= 1e-6;
  const auto d = pump_at_crossing(1e-6);
  SimConfig sim;
  sim.dt = period(p) / 200;
  sim.duration = period(p);
  const auto ts = simulate(p, d, sim);
  const auto eq = static_equilibrium(p, d, Environment::vacuum, false);
  const auto det = cavity_detunings(p, eq.theta[0], laser_frequency(p, d.pump));
  CHECK(ts.column("n_r")[0] == doctest::Approx(photon_number_right(p.optics, det, 1e-6)).epsilon(1e-9));
}

TEST_CASE("equipartition under Langevin noise") {
  auto p = torsion_only();
  p.torsion().q_m = 2.0;
  SimConfig sim;
  sim.dt = period(p) / 100;
  sim.duration = 0.05;
  sim.output_stride = 5;
  sim.noise = {300.0, 2024, true};
  const auto ts = simulate(p, default_drive(), sim);
  const auto th = ts.column("theta_t");
  double s2 = 0.0, s1 = 0.0;
  std::size_t n = 0;
  for (std::size_t i = th.size() / 20; i < th.size(); ++i, ++n) {
    s1 += th[i];
    s2 += th[i] * th[i];
  }
  const double var = s2 / n - (s1 / n) * (s1 / n);
  CHECK(var == doctest::Approx(equipartition_variance(p.torsion(), 300.0)).epsilon(0.05));
}

TEST_CASE("retardation off removes backaction from the ring-down") {
  auto p = reduced_stiffness(torsion_only(), 1e3);
  p.torsion().q_m = 100.0;
  DriveConfig d = default_drive();
  d.probe.enabled = true;
  d.probe.port = Cavity::right;
  d.probe.reference = FrequencyReference::right;
  d.probe.power = 30e-9;
  SimConfig sim;
  sim.dt = period(p) / 200;
  sim.duration = 60 * period(p);
  sim.retardation_enabled = false;
  sim.theta0 = 1e-7;
  for (double delta : {-0.8, 0.8}) {
    d.probe.detuning = delta;
    const auto ts = simulate(p, d, sim);
    const auto fit = ringdown_fit(ts.column("t"), ts.column("theta_t"));
    CHECK(fit.gamma == doctest::Approx(p.torsion().damping()).epsilon(0.01));
  }
}

TEST_CASE("integrator preconditions") {
  auto p = paper_device();
  SimConfig sim;
  sim.method = Method::full;
  sim.dt = 1e-9;
  CHECK_THROWS_AS(check_sim_config(p, sim), ValidationError);
  sim.method = Method::quasistatic;
  sim.dt = period(p);
  CHECK_THROWS_AS(check_sim_config(p, sim), ValidationError);
  sim.dt = 1e-12;
  sim.duration = 1.0;
  CHECK_THROWS_AS(check_sim_config(p, sim), ValidationError);
  sim.allow_many_steps = true;
  CHECK_NOTHROW(check_sim_config(p, sim));
  auto q = reduced_stiffness(p, 10.0);
  SimConfig qs;
  qs.dt = period(q) / 200;
  CHECK_THROWS_AS(check_sim_config(q, qs), ValidationError);
}

TEST_CASE("zero-amplitude pulse leaves the probe at its baseline") {
  const auto p = torsion_only();
  Laser probe;
  probe.enabled = true;
  probe.port = Cavity::right;
  probe.reference = FrequencyReference::right;
  probe.detuning = -0.8;
  probe.power = 30e-9;
  PulseSpec pulse;
  pulse.peak_power = 0.0;
  SimConfig sim;
  sim.dt = 2.5e-9;
  sim.duration = 2e-6;
  const auto ts = impulse_response(p, probe, pulse, Environment::vacuum, sim);
  const auto y = ts.column("probe_t");
  for (double v : y) CHECK(std::abs(v - y[0]) <= 1e-12 * y[0]);
}

TEST_CASE("backaction rates") {
  const auto p = paper_device();
  const auto& m = p.torsion();
  CHECK(backaction_rates(p, Cavity::right, 0.0, 100.0, m).gamma_opt == 0.0);
  for (double d : {0.3, 0.8, 2.0}) {
    const auto blue = backaction_rates(p, Cavity::right, d, 100.0, m);
    const auto red = backaction_rates(p, Cavity::right, -d, 100.0, m);
    CHECK(blue.gamma_opt < 0.0);
    CHECK(red.gamma_opt == doctest::Approx(-blue.gamma_opt));
    CHECK(blue.omega_shift > 0.0);
  }
}

TEST_CASE("no pump, no limit cycle") {
  const auto p = torsion_only();
  const auto lc = find_limit_cycle(p, pump_at_crossing(0.0));
  CHECK_FALSE(lc.converged);
  CHECK(lc.status == LimitCycleStatus::no_cycle);
}

TEST_CASE("limit cycle: energy balance, growth with power, steady re-simulation") {
  auto p = torsion_only();
  p.photothermal.gain = 5.5e-11;
  const auto lo = find_limit_cycle(p, pump_at_crossing(1e-6));
  const auto hi = find_limit_cycle(p, pump_at_crossing(3e-6));
  REQUIRE(lo.converged);
  REQUIRE(hi.converged);
  CHECK(std::abs(lo.work - lo.dissipation) < 1e-3 * lo.dissipation);
  CHECK(std::abs(hi.work - hi.dissipation) < 1e-3 * hi.dissipation);
  CHECK(hi.amplitude > lo.amplitude);

  SimConfig sim;
  sim.dt = period(p) / 500;
  sim.duration = 100 * period(p);
  sim.output_stride = 5;
  sim.start_at_equilibrium = false;
  sim.theta0 = lo.center + lo.amplitude;
  const auto ts = simulate(p, pump_at_crossing(1e-6), sim);
  const auto t = ts.column("t");
  const auto th = ts.column("theta_t");
  for (double from : {10.0, 50.0, 95.0}) {
    double a = 0.0, b = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i)
      if (t[i] >= from * period(p) && t[i] < (from + 5.0) * period(p)) {
        a = std::max(a, th[i]);
        b = std::min(b, th[i]);
      }
    CHECK(0.5 * (a - b) == doctest::Approx(lo.amplitude).epsilon(0.03));
  }
}

TEST_CASE("threshold scales with mechanical damping and vanishes without it") {
  // Low-power regime so the static deflection does not move the operating point.
  auto p = torsion_only();
  p.torsion().q_m *= 100.0;
  const auto d = pump_at_crossing(1.0);
  const auto base = find_threshold(p, d);
  REQUIRE(base.found);
  p.torsion().q_m *= 10.0;
  const auto tenth = find_threshold(p, d);
  REQUIRE(tenth.found);
  CHECK(base.power / tenth.power == doctest::Approx(10.0).epsilon(0.02));
  p.torsion().q_m = 1e15;
  const auto tiny = find_threshold(p, d, ModeKind::torsional, 1e-20, 1.0);
  REQUIRE(tiny.found);
  CHECK(tiny.power < 1e-9);
}

TEST_CASE("photothermal gain fit places the threshold") {
  const auto p = torsion_only();
  const auto d = pump_at_crossing(1.0);
  auto q = p;
  q.photothermal.gain = calibrate_photothermal_gain(p, d, 0.135e-6);
  CHECK(q.photothermal.gain > 0.0);
  const auto th = find_threshold(q, d);
  REQUIRE(th.found);
  CHECK(th.power == doctest::Approx(0.135e-6).epsilon(0.01));
}
