#include "seesaw/analysis.hpp"

#include <fftw3.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <mutex>
#include <numeric>
#include <unsupported/Eigen/NonLinearOptimization>

#include "seesaw/constants.hpp"
#include "seesaw/optics.hpp"

namespace seesaw {

using constants::pi;
using constants::two_pi;

namespace {

// FFTW planning is not thread-safe; execution on distinct plans is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

std::vector<std::complex<double>> dft(const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  fftw_complex* in = fftw_alloc_complex(x.size());
  fftw_complex* out = fftw_alloc_complex(x.size());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    plan = fftw_plan_dft_1d(n, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  for (int i = 0; i < n; ++i) {
    in[i][0] = x[static_cast<std::size_t>(i)];
    in[i][1] = 0.0;
  }
  fftw_execute(plan);
  std::vector<std::complex<double>> X(x.size());
  for (int i = 0; i < n; ++i) X[static_cast<std::size_t>(i)] = {out[i][0], out[i][1]};
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(in);
  fftw_free(out);
  return X;
}

double check_uniform_stride(std::span<const double> t) {
  if (t.size() < 2) throw ValidationError("spectrum needs at least 2 samples");
  const double dt = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
  if (!(dt > 0.0)) throw ValidationError("time axis must be increasing");
  for (std::size_t i = 1; i < t.size(); ++i) {
    const double d = t[i] - t[i - 1];
    if (std::abs(d - dt) > 1e-9 * dt + 1e-12 * std::abs(t[i]))
      throw ValidationError("non-uniform sample stride");
  }
  return dt;
}

}  // namespace

Spectrum fft_spectrum(std::span<const double> trace, double dt, const SpectrumOptions& opt) {
  const std::size_t n = trace.size();
  if (n < 2) throw ValidationError("spectrum needs at least 2 samples");
  if (!(dt > 0.0)) throw ValidationError("spectrum needs dt > 0");

  std::vector<double> x(trace.begin(), trace.end());
  if (opt.remove_mean) {
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    for (double& v : x) v -= mean;
  }
  double wsum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = opt.window == Window::hann ? 0.5 - 0.5 * std::cos(two_pi * static_cast<double>(i) / static_cast<double>(n)) : 1.0;
    x[i] *= w;
    wsum += w;
  }
  const auto X = dft(x);

  const double nd = static_cast<double>(n);
  double scale = 0.0;
  for (const auto& z : X) scale = std::max(scale, std::abs(z));
  for (std::size_t k = 1; k < n; ++k) {
    if (std::abs(X[k] - std::conj(X[n - k])) > 1e-9 * scale + 1e-300)
      throw NumericalError("FFT of a real trace is not conjugate-symmetric");
  }

  double time_energy = 0.0;
  for (double v : x) time_energy += v * v;
  double freq_energy = 0.0;
  for (const auto& z : X) freq_energy += std::norm(z);
  freq_energy /= nd;

  Spectrum s;
  s.window = opt.window;
  s.bin_width = 1.0 / (nd * dt);
  s.parseval_error = time_energy > 0.0 ? std::abs(freq_energy - time_energy) / time_energy : freq_energy;
  if (s.parseval_error > 1e-9) throw NumericalError("Parseval check failed in fft_spectrum");

  const std::size_t half = n / 2;
  s.frequency.resize(half + 1);
  s.magnitude.resize(half + 1);
  s.power.resize(half + 1);
  for (std::size_t k = 0; k <= half; ++k) {
    const bool paired = k != 0 && !(n % 2 == 0 && k == half);
    s.frequency[k] = static_cast<double>(k) * s.bin_width;
    s.power[k] = (paired ? 2.0 : 1.0) * std::norm(X[k]) / (nd * nd);
    s.magnitude[k] = (paired ? 2.0 : 1.0) * std::abs(X[k]) / wsum;
  }
  return s;
}

Spectrum fft_spectrum(const TimeSeries& ts, std::string_view column, const SpectrumOptions& opt) {
  const double dt = check_uniform_stride(ts.column("t"));
  return fft_spectrum(ts.column(column), dt, opt);
}

std::vector<SpectralPeak> find_peaks(const Spectrum& s, std::size_t max_peaks, double min_relative, double f_min) {
  std::vector<SpectralPeak> peaks;
  const auto& m = s.magnitude;
  if (m.size() < 3) return peaks;
  double top = 0.0;
  for (std::size_t k = 0; k < m.size(); ++k)
    if (s.frequency[k] >= f_min) top = std::max(top, m[k]);
  if (!(top > 0.0)) return peaks;

  for (std::size_t k = 1; k + 1 < m.size(); ++k) {
    if (s.frequency[k] < f_min) continue;
    if (!(m[k] > m[k - 1] && m[k] >= m[k + 1]) || m[k] < min_relative * top) continue;
    double offset = 0.0;
    const double a = m[k - 1], b = m[k], c = m[k + 1];
    if (a > 0.0 && c > 0.0) {
      const double la = std::log(a), lb = std::log(b), lc = std::log(c);
      const double den = la - 2.0 * lb + lc;
      if (den < 0.0) offset = 0.5 * (la - lc) / den;
    } else {
      const double den = a - 2.0 * b + c;
      if (den < 0.0) offset = 0.5 * (a - c) / den;
    }
    peaks.push_back({(static_cast<double>(k) + offset) * s.bin_width, b, k});
  }
  std::sort(peaks.begin(), peaks.end(), [](const auto& x, const auto& y) { return x.magnitude > y.magnitude; });
  if (peaks.size() > max_peaks) peaks.resize(max_peaks);
  return peaks;
}

// ---------------------------------------------------------------------------
// Ring-down fit

namespace {

// Residuals in normalized time s in [0, 1]: x = (A, g = Gamma T, w = Omega T, phi, C).
struct RingdownFunctor {
  using Scalar = double;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;

  const std::vector<double>& s;
  const std::vector<double>& y;

  int inputs() const { return 5; }
  int values() const { return static_cast<int>(s.size()); }

  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& f) const {
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double e = std::exp(-0.5 * x[1] * s[i]);
      f[static_cast<Eigen::Index>(i)] = x[0] * e * std::cos(x[2] * s[i] + x[3]) + x[4] - y[i];
    }
    return 0;
  }

  int df(const Eigen::VectorXd& x, Eigen::MatrixXd& j) const {
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto r = static_cast<Eigen::Index>(i);
      const double e = std::exp(-0.5 * x[1] * s[i]);
      const double c = std::cos(x[2] * s[i] + x[3]);
      const double sn = std::sin(x[2] * s[i] + x[3]);
      j(r, 0) = e * c;
      j(r, 1) = -0.5 * x[0] * s[i] * e * c;
      j(r, 2) = -x[0] * e * sn * s[i];
      j(r, 3) = -x[0] * e * sn;
      j(r, 4) = 1.0;
    }
    return 0;
  }
};

double rms(const Eigen::VectorXd& f) { return std::sqrt(f.squaredNorm() / static_cast<double>(f.size())); }

}  // namespace

RingdownFit ringdown_fit(std::span<const double> t, std::span<const double> y) {
  if (t.size() != y.size()) throw ValidationError("ringdown_fit: t and y differ in length");
  if (t.size() < 8) throw ValidationError("ringdown_fit: need at least 8 samples");
  const std::size_t n = y.size();
  const double t0 = t.front();
  const double T = t.back() - t0;
  if (!(T > 0.0)) throw ValidationError("ringdown_fit: time axis must be increasing");

  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double spread = 0.0;
  for (double v : y) spread = std::max(spread, std::abs(v - mean));

  RingdownFit fit;
  fit.offset = mean;
  if (!(spread > 1e-12 * std::max(std::abs(mean), std::numeric_limits<double>::min()))) {
    fit.low_confidence = true;
    return fit;
  }

  // Scale to O(1) so the tolerances are meaningful.
  std::vector<double> s(n), yn(n);
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = (t[i] - t0) / T;
    yn[i] = (y[i] - mean) / spread;
  }

  // Omega from the FFT peak.
  const double dt = T / static_cast<double>(n - 1);
  const Spectrum sp = fft_spectrum(y, dt);
  const auto peaks = find_peaks(sp, 1, 0.0, 0.0);
  if (peaks.empty()) {
    fit.low_confidence = true;
    return fit;
  }
  const double w0 = two_pi * peaks.front().frequency * T;

  // Gamma from a log-envelope line through per-period maxima.
  double g0 = 0.0;
  {
    const double period_s = two_pi / w0;
    std::vector<double> ts, ls;
    double window_start = 0.0;
    while (window_start + period_s <= 1.0 + 1e-12) {
      double best = 0.0, best_s = window_start;
      for (std::size_t i = 0; i < n; ++i) {
        if (s[i] < window_start || s[i] >= window_start + period_s) continue;
        if (std::abs(yn[i]) > best) {
          best = std::abs(yn[i]);
          best_s = s[i];
        }
      }
      if (best > 0.0) {
        ts.push_back(best_s);
        ls.push_back(std::log(best));
      }
      window_start += period_s;
    }
    if (ts.size() >= 2) {
      const double tm = std::accumulate(ts.begin(), ts.end(), 0.0) / static_cast<double>(ts.size());
      const double lm = std::accumulate(ls.begin(), ls.end(), 0.0) / static_cast<double>(ls.size());
      double num = 0.0, den = 0.0;
      for (std::size_t i = 0; i < ts.size(); ++i) {
        num += (ts[i] - tm) * (ls[i] - lm);
        den += (ts[i] - tm) * (ts[i] - tm);
      }
      if (den > 0.0) g0 = -2.0 * num / den;
    }
  }

  // Amplitude, phase and offset by linear least squares at fixed (g0, w0).
  Eigen::MatrixXd B(static_cast<Eigen::Index>(n), 3);
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    const double e = std::exp(-0.5 * g0 * s[i]);
    B(r, 0) = e * std::cos(w0 * s[i]);
    B(r, 1) = e * std::sin(w0 * s[i]);
    B(r, 2) = 1.0;
    rhs[r] = yn[i];
  }
  const Eigen::Vector3d lin = B.colPivHouseholderQr().solve(rhs);

  Eigen::VectorXd x(5);
  x << std::hypot(lin[0], lin[1]), g0, w0, std::atan2(-lin[1], lin[0]), lin[2];

  RingdownFunctor functor{s, yn};
  Eigen::VectorXd f0(static_cast<Eigen::Index>(n));
  functor(x, f0);
  const double start_rms = rms(f0);

  Eigen::LevenbergMarquardt<RingdownFunctor> lm(functor);
  lm.parameters.maxfev = 4000;
  lm.parameters.xtol = 1e-14;
  lm.parameters.ftol = 1e-14;
  const auto status = lm.minimize(x);

  Eigen::VectorXd f(static_cast<Eigen::Index>(n));
  functor(x, f);
  const double final_rms = rms(f);

  auto to_fit = [&](const Eigen::VectorXd& p, double r) {
    RingdownFit out;
    double amp = p[0] * spread;
    double phase = p[3];
    if (amp < 0.0) {
      amp = -amp;
      phase += pi;
    }
    phase = std::remainder(phase, two_pi);
    out.amplitude = amp;
    out.gamma = p[1] / T;
    out.omega = std::abs(p[2]) / T;
    out.phase = p[2] < 0.0 ? -phase : phase;
    out.offset = mean + p[4] * spread;
    out.residual = r * spread;
    out.iterations = static_cast<int>(lm.iter);
    return out;
  };

  const bool failed = status == Eigen::LevenbergMarquardtSpace::ImproperInputParameters ||
                      status == Eigen::LevenbergMarquardtSpace::TooManyFunctionEvaluation ||
                      !std::isfinite(final_rms) || final_rms > start_rms * (1.0 + 1e-12);
  if (failed) throw FitError("ringdown fit did not converge", to_fit(x, final_rms));

  fit = to_fit(x, final_rms);
  fit.low_confidence = fit.amplitude < 3.0 * fit.residual;
  return fit;
}

// ---------------------------------------------------------------------------
// Stroboscopic reconstruction

double StroboResult::coverage() const {
  if (covered.empty()) return 0.0;
  return static_cast<double>(std::count(covered.begin(), covered.end(), true)) / static_cast<double>(covered.size());
}

double strobo_forward(const OpticalParams& optics, Cavity cavity, double delta_b, double x) {
  return waveguide_transmission(optics, cavity, delta_b - x);
}

StroboResult strobo_reconstruct(const std::vector<StroboTrace>& traces, const DeviceParams& params, Cavity cavity) {
  if (traces.size() < 5) throw ValidationError("strobo_reconstruct needs at least 5 probe detunings");
  std::vector<std::size_t> order(traces.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return traces[a].delta_b < traces[b].delta_b; });

  const auto t_ref = traces.front().series.column("t");
  const std::size_t n = t_ref.size();
  std::vector<double> db;
  std::vector<std::span<const double>> tr;
  for (std::size_t k : order) {
    const auto tk = traces[k].series.column("t");
    if (tk.size() != n) throw ValidationError("strobo traces must share a time axis");
    for (std::size_t i = 0; i < n; ++i)
      if (tk[i] != t_ref[i]) throw ValidationError("strobo traces must share a time axis");
    db.push_back(traces[k].delta_b);
    tr.push_back(traces[k].series.column("probe_t"));
  }
  for (std::size_t k = 1; k < db.size(); ++k)
    if (!(db[k] > db[k - 1])) throw ValidationError("strobo probe detunings must be distinct");

  const auto& o = params.optics;
  const double depth = 1.0 - strobo_forward(o, cavity, 0.0, 0.0);
  const double lo = db.front(), hi = db.back();
  const double spacing = (hi - lo) / static_cast<double>(db.size() - 1);
  const int per_gap = 8;
  const std::size_t n_scan = (db.size() - 1) * per_gap + 1;

  StroboResult r;
  r.cavity = cavity;
  r.t.assign(t_ref.begin(), t_ref.end());
  const auto theta = traces[order.front()].series.column("theta_t");
  r.theta.assign(theta.begin(), theta.end());
  r.delta.resize(n);
  r.omega.resize(n);
  r.confidence.resize(n);
  r.covered.resize(n);

  std::vector<double> obs(db.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < db.size(); ++k) obs[k] = tr[k][i];
    auto cost = [&](double x) {
      double acc = 0.0;
      for (std::size_t k = 0; k < db.size(); ++k) {
        const double d = obs[k] - strobo_forward(o, cavity, db[k], x);
        acc += d * d;
      }
      return acc;
    };
    double best_x = lo, best_c = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n_scan; ++j) {
      const double x = lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(n_scan - 1);
      const double c = cost(x);
      if (c < best_c) {
        best_c = c;
        best_x = x;
      }
    }
    // Golden-section refinement within one scan step.
    const double step = spacing / per_gap;
    double a = best_x - step, b = best_x + step;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
    double f1 = cost(c1), f2 = cost(c2);
    for (int it = 0; it < 80 && b - a > 1e-12 * std::max(1.0, std::abs(best_x)); ++it) {
      if (f1 < f2) {
        b = c2;
        c2 = c1;
        f2 = f1;
        c1 = b - gr * (b - a);
        f1 = cost(c1);
      } else {
        a = c1;
        c1 = c2;
        f1 = f2;
        c2 = a + gr * (b - a);
        f2 = cost(c2);
      }
    }
    const double x = 0.5 * (a + b);
    const double resid = std::sqrt(cost(x) / static_cast<double>(db.size()));
    const double t_min = *std::min_element(obs.begin(), obs.end());
    const bool dip_seen = 1.0 - t_min > 0.5 * depth;
    const bool inside = x >= lo && x <= hi;
    r.delta[i] = x;
    r.omega[i] = o.omega0(cavity) + x / o.tau(cavity);
    r.covered[i] = dip_seen && inside;
    r.confidence[i] = r.covered[i] ? std::clamp(1.0 - resid / depth, 0.0, 1.0) : 0.0;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Shuttle statistics

int count_periodic_peaks(std::span<const double> y, double min_prominence) {
  std::vector<double> v;
  for (double x : y)
    if (v.empty() || x != v.back()) v.push_back(x);
  while (v.size() > 1 && v.front() == v.back()) v.pop_back();
  const std::size_t n = v.size();
  if (n < 3) return n == 2 ? 1 : 0;

  auto at = [&](std::ptrdiff_t i) { return v[static_cast<std::size_t>(((i % static_cast<std::ptrdiff_t>(n)) + static_cast<std::ptrdiff_t>(n)) % static_cast<std::ptrdiff_t>(n))]; };
  const double global_min = *std::min_element(v.begin(), v.end());
  int count = 0;
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    const double h = at(i);
    if (!(h > at(i - 1) && h > at(i + 1))) continue;
    double left_min = h, right_min = h;
    bool left_higher = false, right_higher = false;
    for (std::ptrdiff_t k = 1; k < static_cast<std::ptrdiff_t>(n); ++k) {
      const double x = at(i - k);
      if (x > h) {
        left_higher = true;
        break;
      }
      left_min = std::min(left_min, x);
    }
    for (std::ptrdiff_t k = 1; k < static_cast<std::ptrdiff_t>(n); ++k) {
      const double x = at(i + k);
      if (x > h) {
        right_higher = true;
        break;
      }
      right_min = std::min(right_min, x);
    }
    const double prominence = (left_higher || right_higher) ? h - std::max(left_min, right_min) : h - global_min;
    if (prominence >= min_prominence) ++count;
  }
  return count;
}

ShuttleStats count_shuttled_photons(const TimeSeries& ts, const DeviceParams& params, const ShuttleOptions& opt) {
  const auto t = ts.column("t");
  const auto theta = ts.column("theta_t");
  const auto n_r = ts.column("n_r");
  const std::size_t n = t.size();
  if (n < 2) throw NumericalError("count_shuttled_photons: trace too short");
  const double gamma_r = params.optics.gamma(Cavity::right);
  const double omega_m = params.torsion().omega_m;

  const auto [mn, mx] = std::minmax_element(theta.begin(), theta.end());
  ShuttleStats st;
  if (*mx - *mn <= 1e-12) {
    const double mean_n = std::accumulate(n_r.begin(), n_r.end(), 0.0) / static_cast<double>(n);
    st.period = two_pi / omega_m;
    st.n_tr = gamma_r * mean_n * st.period;
    return st;
  }

  const double centre = std::accumulate(theta.begin(), theta.end(), 0.0) / static_cast<double>(n);
  std::vector<double> crossings;
  std::vector<std::size_t> crossing_index;  // sample after the crossing
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double a = theta[i] - centre, b = theta[i + 1] - centre;
    if (a < 0.0 && b >= 0.0) {
      crossings.push_back(t[i] + (t[i + 1] - t[i]) * (-a) / (b - a));
      crossing_index.push_back(i + 1);
    }
  }
  const std::size_t skip = static_cast<std::size_t>(std::max(0, opt.skip_cycles));
  if (crossings.size() < skip + 4) throw NumericalError("count_shuttled_photons: fewer than 3 full cycles");

  auto interp = [&](double tc, std::size_t i_after) {
    const std::size_t i = i_after - 1;
    const double f = (tc - t[i]) / (t[i + 1] - t[i]);
    return n_r[i] + f * (n_r[i + 1] - n_r[i]);
  };

  std::vector<int> peaks;
  double period_sum = 0.0;
  for (std::size_t c = skip; c + 1 < crossings.size(); ++c) {
    const double ta = crossings[c], tb = crossings[c + 1];
    const std::size_t ia = crossing_index[c], ib = crossing_index[c + 1];
    // Trapezoid over [ta, tb] with interpolated end values.
    double integral = 0.0;
    double prev_t = ta, prev_v = interp(ta, ia);
    std::vector<double> cycle;
    for (std::size_t i = ia; i < ib; ++i) {
      integral += 0.5 * (prev_v + n_r[i]) * (t[i] - prev_t);
      prev_t = t[i];
      prev_v = n_r[i];
      cycle.push_back(n_r[i]);
    }
    const double end_v = interp(tb, ib);
    integral += 0.5 * (prev_v + end_v) * (tb - prev_t);
    st.per_cycle_n_tr.push_back(gamma_r * integral);
    const double top = cycle.empty() ? 0.0 : *std::max_element(cycle.begin(), cycle.end());
    const int p = top > 0.0 ? count_periodic_peaks(cycle, opt.prominence * top) : 0;
    st.per_cycle_peaks.push_back(p);
    peaks.push_back(p);
    period_sum += tb - ta;
  }
  st.cycles = static_cast<int>(st.per_cycle_n_tr.size());
  st.n_tr = std::accumulate(st.per_cycle_n_tr.begin(), st.per_cycle_n_tr.end(), 0.0) / st.cycles;
  st.period = period_sum / st.cycles;

  // Most frequent peak count; ties go to the smaller count.
  std::sort(peaks.begin(), peaks.end());
  int best = peaks.front(), best_run = 0;
  for (std::size_t i = 0; i < peaks.size();) {
    std::size_t j = i;
    while (j < peaks.size() && peaks[j] == peaks[i]) ++j;
    if (static_cast<int>(j - i) > best_run) {
      best_run = static_cast<int>(j - i);
      best = peaks[i];
    }
    i = j;
  }
  st.peaks_per_cycle = best;
  return st;
}

DetuningPath detuning_trajectory(const TimeSeries& ts, const DeviceParams& params, const Laser& pump) {
  const auto t = ts.column("t");
  const auto th = ts.column("theta_t");
  const bool flap = params.flap().enabled && ts.has("theta_f");
  const bool thermal = ts.has("u_l") && ts.has("u_r");
  DispersiveMap map = params.map;
  map.allow_extrapolation = true;
  const auto& o = params.optics;
  const double wp = laser_frequency(params, pump);

  DetuningPath path;
  for (std::size_t i = 0; i < t.size(); ++i) {
    double wl = o.omega_l0 + map.shift(Cavity::left, th[i]);
    double wr = o.omega_r0 + map.shift(Cavity::right, th[i]);
    if (flap) {
      const double qf = ts.column("theta_f")[i];
      wl += params.flap().ga_l * qf;
      wr += params.flap().ga_r * qf;
    }
    if (thermal) {
      wl += params.thermal.dw_dT * ts.column("u_l")[i];
      wr += params.thermal.dw_dT * ts.column("u_r")[i];
    }
    const Detunings d = make_detunings(o, wp, wl, wr);
    if (!path.t.empty() && d.delta_l == path.delta_l.back() && d.delta_r == path.delta_r.back()) continue;
    path.t.push_back(t[i]);
    path.delta_l.push_back(d.delta_l);
    path.delta_r.push_back(d.delta_r);
  }
  return path;
}

}  // namespace seesaw
