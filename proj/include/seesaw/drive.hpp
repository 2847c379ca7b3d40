#pragma once

#include "seesaw/params.hpp"

namespace seesaw {

/// Which resonance a laser detuning is measured from.
enum class FrequencyReference { left, right, crossing };

enum class Waveform { cw, pulse };

/// How powers of different lasers combine at a waveguide output.
enum class OutputSum { incoherent, coherent };

/// One laser tone injected into one waveguide.
///
/// Frequency = reference resonance at rest + detuning / tau, where tau is
/// the field decay time of the reference cavity (the port cavity when the
/// reference is the crossing point).
struct Laser {
  bool enabled = false;
  Cavity port = Cavity::left;
  double power = 0.0;  // W at the cavity coupling point (peak for pulses)
  double detuning = 0.0;
  FrequencyReference reference = FrequencyReference::left;
  Waveform waveform = Waveform::cw;
  double pulse_width = 10e-9;
  double pulse_delay = 0.0;

  /// Instantaneous input power; a pulse is rectangular on [delay, delay+width).
  double power_at(double t) const {
    if (!enabled) return 0.0;
    if (waveform == Waveform::cw) return power;
    return (t >= pulse_delay && t < pulse_delay + pulse_width) ? power : 0.0;
  }
};

struct DriveConfig {
  Laser pump;
  Laser probe;
  OutputSum output_sum = OutputSum::incoherent;
};

double laser_frequency(const DeviceParams& params, const Laser& laser);

/// Defaults: pump on the left cavity, probe on the right, both off.
DriveConfig default_drive();

}  // namespace seesaw
