#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vibdiag/signal.hpp"

namespace vibdiag::synth {

struct InterferenceTone {
  double freq_hz = 0.0;
  double amplitude = 0.0;
};

/// Periodic impacts exciting a single lightly damped resonance, plus
/// interference tones and white Gaussian noise. Impact responses are rendered
/// band-limited to fs/2, as behind an ideal anti-aliasing filter.
struct FaultSignalSpec {
  double sample_rate_hz = 0.0;
  double duration_s = 0.0;
  double fault_freq_hz = 0.0;
  double resonance_freq_hz = 0.0;
  double damping_ratio = 0.05;
  double impulse_amplitude = 1.0;
  /// Power of (impacts + tones) over noise power, dB.
  double noise_snr_db = 0.0;
  /// Each impact is displaced uniformly within +/- jitter_frac * period.
  double jitter_frac = 0.0;
  std::vector<InterferenceTone> interference_tones;

  /// Throws InvalidInput on a violated invariant.
  void validate() const;
};

struct SynthTruth {
  double period_samples = 0.0;  // fs / fault_freq, before jitter
  double resonance_hz = 0.0;
  double fault_freq_hz = 0.0;
  double signal_power = 0.0;
  double noise_power = 0.0;
  std::vector<double> impact_times_s;
};

/// Pre-mix components, kept separate so tests can measure the mixing ratio.
struct SynthComponents {
  std::vector<double> impacts;
  std::vector<double> tones;
  std::vector<double> noise;
  SynthTruth truth;
};

struct SynthResult {
  Signal signal;
  SynthTruth truth;
};

SynthComponents synth_components(const FaultSignalSpec& spec, std::uint64_t seed);
SynthResult synth_fault_signal(const FaultSignalSpec& spec, std::uint64_t seed);

/// "conveyor-bearing" (19.2 kHz, 12.6 Hz fault) and "conveyor-gearbox"
/// (8192 Hz, 4.1 Hz fault). Throws Configuration for unknown names.
FaultSignalSpec preset(std::string_view name);
std::span<const std::string_view> preset_names();

}  // namespace vibdiag::synth
