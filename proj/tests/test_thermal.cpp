#include <cmath>

#include "doctest.h"
#include "seesaw/thermal.hpp"

using namespace seesaw;

namespace {

ThermalParams tp() { return paper_device().thermal; }

ThermalState step(const ThermalState& s, double pl, double pr, const ThermalParams& t, double dt) {
  auto f = [&](const ThermalState& x) { return thermal_derivatives(x, pl, pr, t); };
  auto add = [](const ThermalState& a, const ThermalState& b, double h) {
    return ThermalState{a.u_l + h * b.u_l, a.u_r + h * b.u_r};
  };
  const auto k1 = f(s);
  const auto k2 = f(add(s, k1, dt / 2));
  const auto k3 = f(add(s, k2, dt / 2));
  const auto k4 = f(add(s, k3, dt));
  return {s.u_l + dt / 6 * (k1.u_l + 2 * k2.u_l + 2 * k3.u_l + k4.u_l),
          s.u_r + dt / 6 * (k1.u_r + 2 * k2.u_r + 2 * k3.u_r + k4.u_r)};
}

}  // namespace

TEST_CASE("zero state without input is a fixed point") {
  const auto d = thermal_derivatives({}, 0.0, 0.0, tp());
  CHECK(d.u_l == 0.0);
  CHECK(d.u_r == 0.0);
}

TEST_CASE("derivatives follow the two-compartment law") {
  const auto t = tp();
  const auto d = thermal_derivatives({2.0, 0.5}, 1e-3, 0.0, t);
  CHECK(d.u_l == doctest::Approx(1e-3 / t.c_heat - 2.0 / t.tau_local - 1.5 / t.tau_cross));
  CHECK(d.u_r == doctest::Approx(-0.5 / t.tau_local + 1.5 / t.tau_cross));
}

TEST_CASE("impulse into the left region gives a single interior maximum on the right") {
  const auto t = tp();
  ThermalState s{1.0, 0.0};
  const double dt = 1e-9;
  double prev = 0.0, t_peak = -1.0;
  int maxima = 0;
  bool rising = true;
  for (int i = 1; i < 40000; ++i) {
    s = step(s, 0.0, 0.0, t, dt);
    if (rising && s.u_r < prev) {
      ++maxima;
      t_peak = (i - 1) * dt;
      rising = false;
    } else if (!rising && s.u_r > prev) {
      rising = true;
    }
    prev = s.u_r;
  }
  CHECK(maxima == 1);
  // Two-exponential closed form: rates 1/tau_l and 1/tau_l + 2/tau_x.
  const double l1 = 1.0 / t.tau_local, l2 = l1 + 2.0 / t.tau_cross;
  CHECK(t_peak == doctest::Approx(std::log(l2 / l1) / (l2 - l1)).epsilon(1e-3));
}

TEST_CASE("steady heating orders the regions") {
  const auto s = thermal_steady_state(1e-6, 0.0, tp());
  CHECK(s.u_l > s.u_r);
  CHECK(s.u_r > 0.0);
  const auto d = thermal_derivatives(s, 1e-6, 0.0, tp());
  CHECK(std::abs(d.u_l) < 1e-9 * s.u_l / tp().tau_local);
  CHECK(std::abs(d.u_r) < 1e-9 * s.u_l / tp().tau_local);
}

TEST_CASE("thermo-optic shift is linear and red for heating") {
  const auto t = tp();
  const auto a = thermo_optic_shift({0.0, 0.0}, t);
  CHECK(a.first == 0.0);
  CHECK(a.second == 0.0);
  const auto b = thermo_optic_shift({0.1, 0.2}, t);
  const auto c = thermo_optic_shift({0.2, 0.4}, t);
  CHECK(b.second < 0.0);
  CHECK(c.first == doctest::Approx(2.0 * b.first));
  CHECK(c.second == doctest::Approx(2.0 * b.second));
}

TEST_CASE("thermal energy never grows without input") {
  const auto t = tp();
  ThermalState s{0.7, -0.1};
  double e = thermal_energy(s, t);
  for (int i = 0; i < 2000; ++i) {
    s = step(s, 0.0, 0.0, t, 5e-9);
    const double e2 = thermal_energy(s, t);
    CHECK(e2 <= e + 1e-18);
    e = e2;
  }
}
