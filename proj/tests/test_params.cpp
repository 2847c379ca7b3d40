#include <cmath>
#include <random>

#include "doctest.h"
#include "seesaw/constants.hpp"
#include "seesaw/errors.hpp"
#include "seesaw/params.hpp"

using namespace seesaw;
using constants::two_pi;

TEST_CASE("reference device passes validation") {
  const auto r = validate_params(paper_device());
  CHECK(r.ok());
  CHECK_FALSE(r.has("weak inter-cavity coupling"));
}

TEST_CASE("negative mechanical Q violates Gamma_m > 0") {
  auto p = paper_device();
  p.torsion().q_m = -1.0;
  const auto r = validate_params(p);
  CHECK_FALSE(r.ok());
  CHECK(r.has("Gamma_m > 0"));
}

TEST_CASE("symmetric torsional coupling violates anti-symmetry") {
  auto p = paper_device();
  p.torsion().ga_l = p.torsion().ga_r = 1e12;
  CHECK(validate_params(p).has("anti-symmetric signs"));
}

TEST_CASE("strong inter-cavity coupling is a warning, not an error") {
  auto p = paper_device();
  p.optics.kappa = p.optics.gamma(Cavity::left) / 5.0;
  const auto r = validate_params(p);
  CHECK(r.has("weak inter-cavity coupling"));
  CHECK(r.ok());
}

TEST_CASE("decay rate from loaded Q at the left wavelength") {
  const double w = omega_from_wavelength(1541.574e-9);
  const double g = gamma_from_q(w, 1.0e4);
  CHECK(g / two_pi == doctest::Approx(19.4e9).epsilon(0.005));
  CHECK(q_from_gamma(w, g) == doctest::Approx(1.0e4).epsilon(1e-12));
}

TEST_CASE("derived quantities of the reference device") {
  const auto p = paper_device();
  const auto d = derive_quantities(p);
  // hbar g^2 / k with g = 2 pi 2.13 GHz/nm, k = 0.11 N/m.
  const double g = two_pi * 2.13e18;
  const double expect = constants::hbar * g * g / 0.11;
  CHECK(d.delta_omega_c == doctest::Approx(expect).epsilon(1e-12));
  CHECK(d.delta_omega_c / two_pi == doctest::Approx(27.3e3).epsilon(0.01));
  CHECK(d.delta_omega_c_zpf == doctest::Approx(d.delta_omega_c).epsilon(1e-10));
  CHECK(d.ga / two_pi * 1e-3 == doctest::Approx(24.5e9).epsilon(0.01));
  CHECK(d.tau_l == 2.0 / d.gamma_l);
  CHECK(d.tau_r == 2.0 / d.gamma_r);
  CHECK(d.sideband_ratio == doctest::Approx(2.27e-5).epsilon(0.02));
}

TEST_CASE("single-photon shift identity over random parameters") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  auto p = paper_device();
  for (int i = 0; i < 200; ++i) {
    p.g_om = two_pi * 2.13e18 * std::pow(10.0, u(rng));
    p.k_eff = 0.11 * std::pow(10.0, u(rng));
    p.torsion().omega_m = two_pi * 441e3 * std::pow(10.0, u(rng));
    const auto d = derive_quantities(p);
    CHECK(std::abs(d.delta_omega_c_zpf / d.delta_omega_c - 1.0) < 1e-10);
  }
}

TEST_CASE("derive_quantities rejects non-positive stiffness") {
  auto p = paper_device();
  p.k_eff = 0.0;
  CHECK_THROWS_AS(derive_quantities(p), ValidationError);
}

TEST_CASE("inertia from stiffness") {
  const double w = two_pi * 441e3;
  CHECK(inertia_from_stiffness(0.11, 11.5e-6, w) == doctest::Approx(0.11 * 11.5e-6 * 11.5e-6 / (w * w)));
  CHECK(paper_device().torsion().inertia == doctest::Approx(inertia_from_stiffness(0.11, 11.5e-6, w)));
}

TEST_CASE("dispersive map is zero at rest and guards its range") {
  const auto p = paper_device();
  CHECK(p.map.shift(Cavity::left, 0.0) == 0.0);
  CHECK(p.map.left[0] == -p.map.right[0]);
  CHECK(p.map.left[0] < 0.0);
  CHECK_THROWS_AS(p.map.shift(Cavity::left, 2.0 * p.map.range), RangeError);
  auto q = p;
  q.map.allow_extrapolation = true;
  CHECK(q.map.shift(Cavity::left, 2.0 * p.map.range) == doctest::Approx(2.0 * p.map.range * p.map.left[0]));
}

TEST_CASE("resonance crossing of the linear map") {
  const auto p = paper_device();
  const auto c = resonance_crossing(p);
  const double dw = p.optics.omega_r0 - p.optics.omega_l0;
  CHECK(c.theta == doctest::Approx(-dw / (2.0 * std::abs(p.torsion().ga_l))).epsilon(1e-9));
  CHECK(std::abs(c.theta) == doctest::Approx(0.914e-3).epsilon(0.002));
}

TEST_CASE("reduced stiffness scales the optical rates together") {
  const auto p = paper_device();
  const auto r = reduced_stiffness(p, 1e3);
  CHECK(r.optics.gamma(Cavity::left) == doctest::Approx(1e3 * p.torsion().omega_m));
  CHECK(r.optics.kappa / r.optics.gamma(Cavity::left) == doctest::Approx(p.optics.kappa / p.optics.gamma(Cavity::left)));
  CHECK(r.torsion().omega_m == p.torsion().omega_m);
}
