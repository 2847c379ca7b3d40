#pragma once

#include <span>
#include <string>
#include <vector>

#include "seesaw/drive.hpp"
#include "seesaw/dynamics.hpp"
#include "seesaw/errors.hpp"
#include "seesaw/params.hpp"

namespace seesaw {

enum class Window { hann, rectangular };

struct SpectrumOptions {
  Window window = Window::hann;
  bool remove_mean = true;
};

/// One-sided spectrum of a real trace.
///
/// power[k] sums to the mean square of the windowed trace (Parseval);
/// magnitude[k] is amplitude-corrected so a sinusoid of amplitude A peaks
/// near A.
struct Spectrum {
  std::vector<double> frequency;  // Hz
  std::vector<double> magnitude;
  std::vector<double> power;
  Window window = Window::hann;
  double bin_width = 0.0;  // Hz
  double parseval_error = 0.0;

  std::string window_name() const { return window == Window::hann ? "hann" : "rectangular"; }
};

/// Throws ValidationError for fewer than 2 samples or dt <= 0.
Spectrum fft_spectrum(std::span<const double> trace, double dt, const SpectrumOptions& opt = {});

/// Uses the t column for the stride; throws ValidationError if it is not
/// uniform to 1e-9 relative.
Spectrum fft_spectrum(const TimeSeries& ts, std::string_view column, const SpectrumOptions& opt = {});

struct SpectralPeak {
  double frequency = 0.0;  // Hz, interpolated
  double magnitude = 0.0;
  std::size_t bin = 0;
};

/// Local maxima above min_relative * global max, strongest first, with
/// Gaussian (log-parabolic) interpolation on the three bins around each.
std::vector<SpectralPeak> find_peaks(const Spectrum& s, std::size_t max_peaks = 8, double min_relative = 0.05,
                                     double f_min = 0.0);

struct RingdownFit {
  double omega = 0.0;  // rad/s
  double gamma = 0.0;  // energy decay rate, 1/s
  double amplitude = 0.0;
  double phase = 0.0;
  double offset = 0.0;
  double residual = 0.0;  // RMS
  int iterations = 0;
  bool low_confidence = false;
};

/// Raised when the refinement fails; carries the best iterate.
class FitError : public NumericalError {
 public:
  FitError(const std::string& msg, RingdownFit best) : NumericalError(msg), best_(best) {}
  const RingdownFit& best() const { return best_; }

 private:
  RingdownFit best_;
};

/// Least squares A exp(-Gamma (t-t0)/2) cos(Omega (t-t0) + phi) + C with t0
/// the first sample time.
RingdownFit ringdown_fit(std::span<const double> t, std::span<const double> y);

/// One probe trace of the stroboscopic set: probe detuning (normalized by
/// the probed cavity's tau, relative to its rest resonance) and the record.
struct StroboTrace {
  double delta_b = 0.0;
  TimeSeries series;
};

struct StroboResult {
  Cavity cavity = Cavity::right;
  std::vector<double> t;
  std::vector<double> delta;       // resonance offset, normalized
  std::vector<double> omega;       // rad/s
  std::vector<double> theta;       // torsional angle from the first trace
  std::vector<double> confidence;  // 0..1
  std::vector<bool> covered;
  double coverage() const;
};

/// Per-sample one-parameter fit of the single-cavity transmission line
/// shape across the probe detunings. Samples whose dip leaves the sampled
/// band are marked uncovered. Throws ValidationError for fewer than 5
/// traces or mismatched time axes.
StroboResult strobo_reconstruct(const std::vector<StroboTrace>& traces, const DeviceParams& params, Cavity cavity);

/// Forward model used by the reconstruction: transmission at normalized
/// probe detuning delta_b when the resonance sits at normalized offset x.
double strobo_forward(const OpticalParams& optics, Cavity cavity, double delta_b, double x);

struct ShuttleOptions {
  double prominence = 0.05;  // fraction of the cycle maximum
  int skip_cycles = 0;       // leading cycles dropped as transient
};

struct ShuttleStats {
  double n_tr = 0.0;  // photons per cycle through the right cavity
  int peaks_per_cycle = 0;
  double period = 0.0;  // s
  int cycles = 0;
  std::vector<double> per_cycle_n_tr;
  std::vector<int> per_cycle_peaks;
};

/// Cycles run between upward crossings of theta_t through its mean.
/// n_tr = mean over cycles of the integral of gamma_R n_R; peaks counted
/// on the periodic cycle with the given prominence. A trace with no
/// oscillation yields gamma_R <n_R> 2 pi / Omega_m and zero peaks. Throws
/// NumericalError when fewer than 3 full cycles are present.
ShuttleStats count_shuttled_photons(const TimeSeries& ts, const DeviceParams& params, const ShuttleOptions& opt = {});

/// Peaks with at least min_prominence in a periodic sequence.
int count_periodic_peaks(std::span<const double> y, double min_prominence);

struct DetuningPath {
  std::vector<double> t;
  std::vector<double> delta_l;
  std::vector<double> delta_r;
};

/// Normalized pump detunings along the recorded motion; consecutive
/// duplicate points are merged.
DetuningPath detuning_trajectory(const TimeSeries& ts, const DeviceParams& params, const Laser& pump);

}  // namespace seesaw
