#include <cmath>
#include <random>

#include "doctest.h"
#include "seesaw/analysis.hpp"
#include "seesaw/constants.hpp"
#include "seesaw/errors.hpp"
#include "seesaw/optics.hpp"

using namespace seesaw;
using constants::two_pi;

namespace {

TimeSeries make_series(const std::vector<double>& t, const std::vector<double>& theta, const std::vector<double>& n_r) {
  TimeSeries ts;
  ts.add_column("t", t);
  ts.add_column("theta_t", theta);
  ts.add_column("n_r", n_r);
  return ts;
}

// Resonance off the center: crossed twice per cycle.
double shuttle_profile(double theta) {
  const double x = (theta - 0.6) / 0.15;
  return 50.0 / (1.0 + x * x);
}

ShuttleStats shuttle_for(const DeviceParams& p, double dt, double t0, int cycles) {
  const double w = p.torsion().omega_m;
  const std::size_t n = static_cast<std::size_t>(cycles * two_pi / w / dt);
  std::vector<double> t(n), th(n), nr(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = t0 + dt * static_cast<double>(i);
    th[i] = std::cos(w * t[i]);
    nr[i] = shuttle_profile(th[i]);
  }
  return count_shuttled_photons(make_series(t, th, nr), p);
}

}  // namespace

TEST_CASE("sinusoid peak lands within a tenth of a bin") {
  const double f0 = 441e3, dt = 2.5e-9;
  std::vector<double> y(80000);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = 0.3 * std::sin(two_pi * f0 * dt * i + 0.4);
  const auto s = fft_spectrum(y, dt);
  const auto peaks = find_peaks(s, 1);
  REQUIRE(peaks.size() == 1);
  CHECK(std::abs(peaks[0].frequency - f0) < 0.1 * s.bin_width);
  CHECK(peaks[0].magnitude == doctest::Approx(0.3).epsilon(0.05));
}

TEST_CASE("zero trace has an all-zero spectrum") {
  const std::vector<double> y(1024, 0.0);
  const auto s = fft_spectrum(y, 1e-6);
  for (double v : s.power) CHECK(v == 0.0);
  CHECK(find_peaks(s).empty());
}

TEST_CASE("spectrum power satisfies Parseval for both windows") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  std::vector<double> y(4097);
  for (auto& v : y) v = g(rng);
  for (auto w : {Window::hann, Window::rectangular}) {
    const auto s = fft_spectrum(y, 1e-6, {w, true});
    CHECK(s.parseval_error < 1e-9);
  }
}

TEST_CASE("non-uniform time axis is rejected") {
  TimeSeries ts;
  ts.add_column("t", {0.0, 1.0, 2.0, 3.5, 4.0});
  ts.add_column("y", {0.0, 1.0, 0.0, -1.0, 0.0});
  CHECK_THROWS_AS(fft_spectrum(ts, "y"), ValidationError);
  CHECK_THROWS_AS(fft_spectrum(std::vector<double>{1.0}, 1.0), ValidationError);
}

TEST_CASE("ring-down fit recovers frequency and decay at SNR 100") {
  const double w = two_pi * 441e3, gamma = two_pi * 441e3 / 300.0, a = 1e-6;
  std::mt19937_64 rng(7);
  std::normal_distribution<double> noise(0.0, a / 100.0);
  std::vector<double> t(20000), y(20000);
  for (std::size_t i = 0; i < t.size(); ++i) {
    t[i] = 1e-5 + 2.5e-8 * i;
    const double s = t[i] - t[0];
    y[i] = a * std::exp(-gamma * s / 2.0) * std::cos(w * s + 0.7) + 2e-7 + noise(rng);
  }
  const auto fit = ringdown_fit(t, y);
  CHECK(fit.omega == doctest::Approx(w).epsilon(1e-3));
  CHECK(fit.gamma == doctest::Approx(gamma).epsilon(1e-3));
  CHECK(fit.amplitude == doctest::Approx(a).epsilon(1e-2));
  CHECK_FALSE(fit.low_confidence);
}

TEST_CASE("constant trace gives a low-confidence fit") {
  std::vector<double> t(200), y(200, 3.0);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = 1e-8 * i;
  try {
    CHECK(ringdown_fit(t, y).low_confidence);
  } catch (const FitError& e) {
    CHECK(e.best().low_confidence);
  }
  CHECK_THROWS_AS(ringdown_fit(std::vector<double>{0, 1}, std::vector<double>{0, 1}), ValidationError);
}

TEST_CASE("stroboscopic reconstruction round trip") {
  const auto p = paper_device();
  const Cavity c = Cavity::right;
  const std::size_t n = 400;
  std::vector<double> t(n), x(n), theta(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = 1e-8 * i;
    x[i] = 1.5 * std::sin(two_pi * i / 200.0);
    theta[i] = 1e-3 * x[i];
  }
  std::vector<StroboTrace> traces;
  for (double db : linspace(-2.5, 2.5, 41)) {
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = strobo_forward(p.optics, c, db, x[i]);
    TimeSeries ts;
    ts.add_column("t", t);
    ts.add_column("theta_t", theta);
    ts.add_column("probe_t", y);
    traces.push_back({db, ts});
  }
  const auto r = strobo_reconstruct(traces, p, c);
  double se = 0.0, ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    se += (r.delta[i] - x[i]) * (r.delta[i] - x[i]);
    ss += x[i] * x[i];
  }
  CHECK(std::sqrt(se / ss) < 0.05);
  CHECK(r.coverage() == 1.0);
  CHECK(r.theta[17] == theta[17]);

  // A motionless resonance reconstructs to a constant.
  for (auto& tr : traces) {
    auto& y = tr.series.column_mut("probe_t");
    for (auto& v : y) v = strobo_forward(p.optics, c, tr.delta_b, 0.4);
  }
  const auto flat = strobo_reconstruct(traces, p, c);
  for (double d : flat.delta) CHECK(d == doctest::Approx(flat.delta[0]).epsilon(1e-9));
  CHECK(flat.delta[0] == doctest::Approx(0.4).epsilon(1e-3));

  traces.resize(4);
  CHECK_THROWS_AS(strobo_reconstruct(traces, p, c), ValidationError);
}

TEST_CASE("static beam shuttles gamma_R n_R per mechanical period") {
  const auto p = paper_device();
  std::vector<double> t(100), th(100, 2e-4), nr(100, 0.0348);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = 1e-8 * i;
  const auto st = count_shuttled_photons(make_series(t, th, nr), p);
  CHECK(st.n_tr == doctest::Approx(p.optics.gamma(Cavity::right) * 0.0348 * two_pi / p.torsion().omega_m).epsilon(1e-12));
  CHECK(st.peaks_per_cycle == 0);
}

TEST_CASE("shuttle count is invariant to time offset and resampling") {
  const auto p = paper_device();
  const double T = two_pi / p.torsion().omega_m;
  const auto ref = shuttle_for(p, T / 2000, 0.0, 12);
  CHECK(ref.peaks_per_cycle == 2);
  CHECK(ref.period == doctest::Approx(T).epsilon(1e-6));
  const auto shifted = shuttle_for(p, T / 2000, 0.37 * T, 12);
  const auto coarse = shuttle_for(p, T / 1000, 0.0, 12);
  const auto coarser = shuttle_for(p, T / 400, 0.11 * T, 12);
  CHECK(shifted.n_tr == doctest::Approx(ref.n_tr).epsilon(0.01));
  CHECK(coarse.n_tr == doctest::Approx(ref.n_tr).epsilon(0.01));
  CHECK(coarser.n_tr == doctest::Approx(ref.n_tr).epsilon(0.01));
  CHECK(coarser.peaks_per_cycle == 2);
  CHECK_THROWS_AS(shuttle_for(p, T / 200, 0.0, 2), NumericalError);
}

TEST_CASE("detuning trajectory") {
  auto p = paper_device();
  p.flap().enabled = false;
  Laser pump;
  pump.enabled = true;
  pump.reference = FrequencyReference::left;

  std::vector<double> t(50), th(50, 0.0), nr(50, 0.0);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = 1e-8 * i;
  CHECK(detuning_trajectory(make_series(t, th, nr), p, pump).t.size() == 1);

  p.map.left = {1e12};
  p.map.right = {-1e12};
  p.optics.gamma_i_r = p.optics.gamma_i_l;
  p.optics.gamma_e_r = p.optics.gamma_e_l;
  for (std::size_t i = 0; i < t.size(); ++i) th[i] = 1e-4 * std::sin(0.3 * i);
  const auto path = detuning_trajectory(make_series(t, th, nr), p, pump);
  REQUIRE(path.t.size() == t.size());
  for (std::size_t i = 1; i < path.t.size(); ++i) {
    const double dl = path.delta_l[i] - path.delta_l[0];
    if (std::abs(dl) < 1e-3) continue;
    CHECK((path.delta_r[i] - path.delta_r[0]) / dl == doctest::Approx(-1.0).epsilon(1e-9));
  }
}
