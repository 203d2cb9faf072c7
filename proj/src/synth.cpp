#include "vibdiag/synth.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "vibdiag/coa.hpp"
#include "vibdiag/error.hpp"
#include "vibdiag/fft.hpp"

namespace vibdiag::synth {

namespace {

constexpr std::array<std::string_view, 2> kPresetNames{"conveyor-bearing", "conveyor-gearbox"};

// Padding after the last sample: ring-down until the envelope reaches this.
constexpr double kDecayFloor = 1e-9;

double mean_square(const std::vector<double>& x) {
  if (x.empty()) return 0.0;
  return std::inner_product(x.begin(), x.end(), x.begin(), 0.0) / static_cast<double>(x.size());
}

// Box-Muller on the deterministic stream.
class Gaussian {
 public:
  explicit Gaussian(std::uint64_t seed) : rng_(seed, 0x6E6F697365ULL, 0) {}

  double operator()() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = rng_.uniform();
    while (u1 <= 0.0) u1 = rng_.uniform();
    const double u2 = rng_.uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
    has_spare_ = true;
    return r * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  coa::Rng rng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Sum of damped sinusoids A e^{-a t} sin(w_d t), t >= 0, started at the given
// times, as seen through an ideal anti-aliasing filter. Built from the
// continuous-time transform w_d / ((a + jw)^2 + w_d^2) with an exact delay
// per impact, so onsets between samples neither alias nor change the pulse
// shape. The buffer is padded by the ring-down time so tails do not wrap.
std::vector<double> render_impacts(const std::vector<double>& times_s, std::size_t n, double fs,
                                   double amplitude, double decay, double omega_d,
                                   double ring_s) {
  const std::size_t len = n + static_cast<std::size_t>(std::ceil(ring_s * fs)) + 1;
  std::vector<Complex> spectrum(len, Complex{0.0, 0.0});
  const double bin_omega = 2.0 * std::numbers::pi * fs / static_cast<double>(len);
  for (std::size_t k = 0; 2 * k <= len; ++k) {
    const double w = bin_omega * static_cast<double>(k);
    const Complex s{decay, w};
    const Complex response = omega_d / (s * s + omega_d * omega_d);
    Complex delays{0.0, 0.0};
    for (double t : times_s) delays += std::polar(1.0, -w * t);
    spectrum[k] = amplitude * fs * response * delays;
  }
  if (len % 2 == 0) spectrum[len / 2] = spectrum[len / 2].real();
  for (std::size_t k = 1; 2 * k < len; ++k) spectrum[len - k] = std::conj(spectrum[k]);
  const auto wave = fft::inverse(spectrum);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = wave[i].real();
  return out;
}

}  // namespace

void FaultSignalSpec::validate() const {
  const auto bad = [](const std::string& what) { fail(ErrorKind::InvalidInput, what); };
  for (double v : {sample_rate_hz, duration_s, fault_freq_hz, resonance_freq_hz}) {
    if (!(v > 0.0) || !std::isfinite(v)) bad("rates, duration and frequencies must be positive");
  }
  if (!(damping_ratio > 0.0 && damping_ratio < 1.0)) bad("damping ratio must lie in (0, 1)");
  if (!(impulse_amplitude >= 0.0) || !std::isfinite(impulse_amplitude)) {
    bad("impulse amplitude must be non-negative");
  }
  if (!std::isfinite(noise_snr_db)) bad("noise SNR must be finite");
  if (!(jitter_frac >= 0.0 && jitter_frac < 0.05)) bad("jitter fraction must lie in [0, 0.05)");
  if (resonance_freq_hz * (1.0 + damping_ratio) > 0.5 * sample_rate_hz) {
    bad("resonance band exceeds the Nyquist frequency");
  }
  if (!(fault_freq_hz < resonance_freq_hz / 5.0)) {
    bad("fault frequency must be below a fifth of the resonance");
  }
  if (duration_s * fault_freq_hz < 10.0) bad("record must contain at least 10 impacts");
  if (std::llround(duration_s * sample_rate_hz) < static_cast<long long>(kMinSignalLength)) {
    bad("record is too short");
  }
  for (const auto& tone : interference_tones) {
    if (!(tone.freq_hz > 0.0 && tone.freq_hz < 0.5 * sample_rate_hz) ||
        !std::isfinite(tone.amplitude)) {
      bad("interference tones must lie strictly inside (0, fs/2)");
    }
  }
}

SynthComponents synth_components(const FaultSignalSpec& spec, std::uint64_t seed) {
  spec.validate();
  const double fs = spec.sample_rate_hz;
  const auto n = static_cast<std::size_t>(std::llround(spec.duration_s * fs));
  const double period_s = 1.0 / spec.fault_freq_hz;
  const double omega_n = 2.0 * std::numbers::pi * spec.resonance_freq_hz;
  const double decay = spec.damping_ratio * omega_n;
  const double omega_d = omega_n * std::sqrt(1.0 - spec.damping_ratio * spec.damping_ratio);
  const double ring_s = -std::log(kDecayFloor) / decay;

  SynthComponents out;
  out.truth.period_samples = fs / spec.fault_freq_hz;
  out.truth.resonance_hz = spec.resonance_freq_hz;
  out.truth.fault_freq_hz = spec.fault_freq_hz;
  out.impacts.assign(n, 0.0);
  out.tones.assign(n, 0.0);
  out.noise.assign(n, 0.0);

  coa::Rng timing(seed, 0x696D70616374ULL, 0);
  const double first = timing.uniform() * period_s;
  const double record_s = static_cast<double>(n) / fs;
  if (spec.impulse_amplitude > 0.0) {
    for (std::size_t k = 0;; ++k) {
      const double nominal = first + static_cast<double>(k) * period_s;
      if (nominal >= record_s) break;
      const double jitter = (2.0 * timing.uniform() - 1.0) * spec.jitter_frac * period_s;
      out.truth.impact_times_s.push_back(std::max(0.0, nominal + jitter));
    }
    out.impacts = render_impacts(out.truth.impact_times_s, n, fs, spec.impulse_amplitude, decay,
                                 omega_d, ring_s);
  }

  coa::Rng phases(seed, 0x746F6E6573ULL, 0);
  for (const auto& tone : spec.interference_tones) {
    const double phase = 2.0 * std::numbers::pi * phases.uniform();
    const double w = 2.0 * std::numbers::pi * tone.freq_hz;
    for (std::size_t i = 0; i < n; ++i) {
      out.tones[i] += tone.amplitude * std::sin(w * static_cast<double>(i) / fs + phase);
    }
  }

  std::vector<double> clean(n);
  for (std::size_t i = 0; i < n; ++i) clean[i] = out.impacts[i] + out.tones[i];
  out.truth.signal_power = mean_square(clean);
  if (!(out.truth.signal_power > 0.0)) {
    fail(ErrorKind::InvalidInput, "impacts and tones are all zero; SNR is undefined");
  }
  const double noise_power = out.truth.signal_power / std::pow(10.0, spec.noise_snr_db / 10.0);
  const double noise_std = std::sqrt(noise_power);
  Gaussian gauss(seed);
  for (double& v : out.noise) v = noise_std * gauss();
  out.truth.noise_power = mean_square(out.noise);
  return out;
}

SynthResult synth_fault_signal(const FaultSignalSpec& spec, std::uint64_t seed) {
  auto parts = synth_components(spec, seed);
  std::vector<double> x(parts.impacts.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = parts.impacts[i] + parts.tones[i] + parts.noise[i];
  return SynthResult{Signal(std::move(x), spec.sample_rate_hz), std::move(parts.truth)};
}

FaultSignalSpec preset(std::string_view name) {
  FaultSignalSpec spec;
  if (name == "conveyor-bearing") {
    spec.sample_rate_hz = 19200.0;
    spec.duration_s = 1.5;
    spec.fault_freq_hz = 12.6;
    spec.resonance_freq_hz = 3000.0;
    spec.damping_ratio = 0.05;
    spec.impulse_amplitude = 1.0;
    spec.noise_snr_db = -8.0;
    spec.jitter_frac = 0.01;
    // Mesh tone amplitude-modulated at a 7.3 Hz shaft rate, written as carrier plus sidebands.
    spec.interference_tones = {{50.0, 0.05}, {437.0, 0.05}, {700.0, 0.15}, {692.7, 0.06}, {707.3, 0.06}};
    return spec;
  }
  if (name == "conveyor-gearbox") {
    spec.sample_rate_hz = 8192.0;
    spec.duration_s = 2.5;
    spec.fault_freq_hz = 4.1;
    spec.resonance_freq_hz = 1800.0;
    spec.damping_ratio = 0.04;
    spec.impulse_amplitude = 1.0;
    spec.noise_snr_db = -8.0;
    spec.jitter_frac = 0.01;
    // Same mesh model at a 2.7 Hz shaft rate.
    spec.interference_tones = {{147.0, 0.08}, {602.0, 0.15}, {599.3, 0.06}, {604.7, 0.06}};
    return spec;
  }
  fail(ErrorKind::Configuration, "unknown preset '" + std::string(name) + "'");
}

std::span<const std::string_view> preset_names() { return kPresetNames; }

}  // namespace vibdiag::synth
