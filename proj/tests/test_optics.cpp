#include <cmath>
#include <random>

#include "doctest.h"
#include "seesaw/constants.hpp"
#include "seesaw/errors.hpp"
#include "seesaw/optics.hpp"

using namespace seesaw;
using constants::hbar;
using constants::two_pi;

namespace {

// Detunings with both cavities placed independently relative to the laser.
Detunings at(const OpticalParams& o, double dl, double dr) {
  const double w = o.omega_l0;
  return make_detunings(o, w, w - dl / o.tau(Cavity::left), w - dr / o.tau(Cavity::right));
}

double n_right(const OpticalParams& o, const Detunings& d, double p) {
  return photon_number(steady_state_fields(o, d, p, 0.0).energy(Cavity::right), d.omega_laser);
}

}  // namespace

TEST_CASE("detunings at rest with the laser on the left resonance") {
  const auto p = paper_device();
  const auto d = cavity_detunings(p, 0.0, p.optics.omega_l0);
  CHECK(d.delta_l == 0.0);
  CHECK(d.Delta_r / two_pi == doctest::Approx(-44.8e9).epsilon(0.001));
  CHECK(d.delta_r == d.Delta_r * p.optics.tau(Cavity::right));
}

TEST_CASE("cavity_detunings refuses angles outside the map") {
  const auto p = paper_device();
  CHECK_THROWS_AS(cavity_detunings(p, 1.0, p.optics.omega_l0), RangeError);
}

TEST_CASE("decoupled cavities leave the undriven one empty") {
  auto o = paper_device().optics;
  o.kappa = 0.0;
  const auto f = steady_state_fields(o, at(o, 0.3, -0.2), 1e-6, 0.0);
  CHECK(std::abs(f.a_r) == 0.0);
  CHECK(std::abs(f.a_l) > 0.0);
}

TEST_CASE("right photon number at zero detunings, 0.135 uW") {
  const auto o = paper_device().optics;
  const auto d = at(o, 0.0, 0.0);
  const double n = n_right(o, d, 0.135e-6);
  // Closed form from the quoted rates.
  const double w = two_pi * constants::c_light / 1541.574e-9;
  const double w_r = two_pi * constants::c_light / 1541.219e-9;
  const double g = w / 1.0e4, gi = w / 1.6e4, ge = g - gi;
  const double k = two_pi * 0.72e9, tau = 2.0 / g, tau_r = 2.0e4 / w_r, tau_e = 2.0 / ge;
  const double closed = std::pow(k * tau * tau_r, 2) / tau_e * 0.135e-6 / (hbar * w);
  CHECK(photon_number_right(o, d, 0.135e-6) == doctest::Approx(closed).epsilon(1e-9));
  // Normal-mode factor of the exact solve.
  const double split = 1.0 / std::pow(1.0 + k * k * tau * tau_r, 2);
  CHECK(n == doctest::Approx(closed * split).epsilon(1e-9));
  CHECK(n > 3e-2);
  CHECK(n < 7e-2);
  CHECK(n == doctest::Approx(0.034858641675063182).epsilon(1e-12));
}

TEST_CASE("closed form and linear solve differ by one constant in weak coupling") {
  auto o = paper_device().optics;
  o.kappa = 1e-6 * o.gamma(Cavity::left);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  std::vector<double> ratios;
  for (int i = 0; i < 100; ++i) {
    const auto d = at(o, u(rng), u(rng));
    const double p = std::pow(10.0, u(rng));
    ratios.push_back(n_right(o, d, p) / photon_number_right(o, d, p));
  }
  double mean = 0.0;
  for (double r : ratios) mean += r / ratios.size();
  double var = 0.0;
  for (double r : ratios) var += (r - mean) * (r - mean) / ratios.size();
  CHECK(std::sqrt(var) / mean < 1e-10);
  CHECK(mean == doctest::Approx(closed_form_convention_factor(o.topology)).epsilon(1e-9));
  o.topology = CouplingTopology::traveling_wave;
  const auto d = at(o, 0.4, -1.1);
  CHECK(n_right(o, d, 1e-6) / photon_number_right(o, d, 1e-6) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("exact ratio equals the normal-mode factor at device coupling") {
  const auto o = paper_device().optics;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 50; ++i) {
    const auto d = at(o, u(rng), u(rng));
    CHECK(n_right(o, d, 1e-6) / photon_number_right(o, d, 1e-6) ==
          doctest::Approx(closed_form_ratio(o, d)).epsilon(1e-12));
  }
}

TEST_CASE("photon numbers vanish far off resonance") {
  const auto o = paper_device().optics;
  const auto d = at(o, 1e6, 0.0);
  const auto f = steady_state_fields(o, d, 1e-6, 0.0);
  CHECK(photon_number(f.energy(Cavity::left), d.omega_laser) < 1e-6);
  CHECK(photon_number(f.energy(Cavity::right), d.omega_laser) < 1e-12);
}

TEST_CASE("closed form is even and peaks at zero detuning") {
  const auto o = paper_device().optics;
  const double peak = photon_number_right(o, at(o, 0, 0), 1e-6);
  for (double dl : {-2.0, -0.5, 0.7, 3.0})
    for (double dr : {-1.5, 0.2, 2.5}) {
      const double v = photon_number_right(o, at(o, dl, dr), 1e-6);
      CHECK(v < peak);
      CHECK(v == doctest::Approx(photon_number_right(o, at(o, -dl, -dr), 1e-6)).epsilon(1e-12));
    }
}

TEST_CASE("n_R decreases monotonically in each detuning magnitude") {
  const auto o = paper_device().optics;
  double prev = n_right(o, at(o, 0.0, 0.3), 1e-6);
  for (double dl = 0.1; dl < 5.0; dl += 0.1) {
    const double v = n_right(o, at(o, dl, 0.3), 1e-6);
    CHECK(v < prev);
    prev = v;
  }
  prev = n_right(o, at(o, -0.2, 0.0), 1e-6);
  for (double dr = -0.1; dr > -5.0; dr -= 0.1) {
    const double v = n_right(o, at(o, -0.2, dr), 1e-6);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("steady-state power balance") {
  for (auto topo : {CouplingTopology::standing_wave, CouplingTopology::traveling_wave}) {
    auto o = paper_device().optics;
    o.topology = topo;
    for (double dl : {-1.0, 0.0, 0.6}) {
      const auto f = steady_state_fields(o, at(o, dl, 0.4), 2e-6, 0.5e-6);
      const auto b = power_budget(o, f, 2e-6, 0.5e-6);
      CHECK(std::abs(b.transmitted + b.reflected + b.dissipated - b.input) / b.input < 1e-9);
    }
  }
}

TEST_CASE("traveling-wave transmission") {
  auto o = paper_device().optics;
  o.topology = CouplingTopology::traveling_wave;
  CHECK(o.gamma_e_l / two_pi == doctest::Approx(7.3e9).epsilon(0.005));
  CHECK(o.gamma_i_l / two_pi == doctest::Approx(12.2e9).epsilon(0.005));
  const double gi = o.gamma_i_l, ge = o.gamma_e_l;
  CHECK(waveguide_transmission(o, Cavity::left, 0.0) == doctest::Approx((gi - ge) * (gi - ge) / ((gi + ge) * (gi + ge))));
  CHECK(waveguide_transmission(o, Cavity::left, 0.0) == doctest::Approx(0.0625).epsilon(1e-9));
  CHECK(waveguide_transmission(o, Cavity::left, 1e9) == doctest::Approx(1.0));
  CHECK(waveguide_reflection(o, Cavity::left, 0.0) == 0.0);
  o.gamma_e_l = o.gamma_i_l;
  CHECK(waveguide_transmission(o, Cavity::left, 0.0) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("standing-wave transmission plus reflection plus loss is unity") {
  const auto o = paper_device().optics;
  for (double d : {-2.0, 0.0, 0.5, 4.0}) {
    const double t = waveguide_transmission(o, Cavity::right, d);
    const double r = waveguide_reflection(o, Cavity::right, d);
    CHECK(t >= 0.0);
    CHECK(t <= 1.0);
    CHECK(t + r <= 1.0);
  }
  CHECK(waveguide_transmission(o, Cavity::right, 1e9) == doctest::Approx(1.0));
}

TEST_CASE("shuttle map half-width points and symmetry") {
  const auto p = paper_device();
  const auto g = linspace(-2.0, 2.0, 41);
  const auto m = shuttle_map(p, g, g, 1e-6, true);
  auto v = [&](double dl, double dr) {
    return m.at(static_cast<std::size_t>(std::lround((dl + 2.0) * 10)), static_cast<std::size_t>(std::lround((dr + 2.0) * 10)));
  };
  CHECK(std::abs(v(0, 0) - 1.0) < 1e-12);
  for (double s : {-1.0, 1.0}) {
    CHECK(std::abs(v(s, 0) - 0.5) < 1e-12);
    CHECK(std::abs(v(0, s) - 0.5) < 1e-12);
    CHECK(std::abs(v(s, s) - 0.25) < 1e-12);
    CHECK(std::abs(v(s, -s) - 0.25) < 1e-12);
  }
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j)
      CHECK(std::abs(m.at(i, j) - m.at(g.size() - 1 - i, g.size() - 1 - j)) < 1e-12);
}

TEST_CASE("shuttle map rejects bad grids") {
  const auto p = paper_device();
  const std::vector<double> empty;
  const std::vector<double> bad{0.0, -1.0};
  const auto g = linspace(-1, 1, 3);
  CHECK_THROWS_AS(shuttle_map(p, empty, g, 1e-6), RangeError);
  CHECK_THROWS_AS(shuttle_map(p, g, bad, 1e-6), RangeError);
}
