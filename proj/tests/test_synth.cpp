#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "vibdiag/envelope.hpp"
#include "vibdiag/error.hpp"
#include "vibdiag/synth.hpp"

using namespace vibdiag;
using namespace vibdiag::synth;

namespace {

double power(const std::vector<double>& x) {
  long double s = 0.0L;
  for (double v : x) s += static_cast<long double>(v) * v;
  return static_cast<double>(s / x.size());
}

}  // namespace

TEST_CASE("presets") {
  const auto b = preset("conveyor-bearing");
  CHECK(b.sample_rate_hz == 19200.0);
  CHECK(b.fault_freq_hz == 12.6);
  CHECK(b.resonance_freq_hz == 3000.0);
  CHECK(b.noise_snr_db == -8.0);
  const auto g = preset("conveyor-gearbox");
  CHECK(g.sample_rate_hz == 8192.0);
  CHECK(g.fault_freq_hz == 4.1);
  CHECK(preset_names().size() == 2);
  CHECK_THROWS_AS(preset("conveyor-belt"), Error);
}

TEST_CASE("length, truth period and reproducibility") {
  const auto spec = preset("conveyor-gearbox");
  const auto a = synth_fault_signal(spec, 7);
  const auto b = synth_fault_signal(spec, 7);
  const auto c = synth_fault_signal(spec, 8);
  CHECK(a.signal.size() == static_cast<std::size_t>(std::lround(spec.duration_s * spec.sample_rate_hz)));
  CHECK(a.truth.period_samples == spec.sample_rate_hz / spec.fault_freq_hz);
  CHECK(std::equal(a.signal.samples().begin(), a.signal.samples().end(), b.signal.samples().begin()));
  CHECK_FALSE(std::equal(a.signal.samples().begin(), a.signal.samples().end(), c.signal.samples().begin()));
}

TEST_CASE("mixing ratio matches the requested SNR") {
  for (double snr : {-8.0, 0.0, 12.0}) {
    auto spec = preset("conveyor-bearing");
    spec.noise_snr_db = snr;
    const auto parts = synth_components(spec, 3);
    std::vector<double> clean(parts.impacts.size());
    for (std::size_t i = 0; i < clean.size(); ++i) clean[i] = parts.impacts[i] + parts.tones[i];
    const double measured = 10.0 * std::log10(power(clean) / power(parts.noise));
    CHECK(std::abs(measured - snr) <= 0.2);
  }
}

TEST_CASE("near-clean record has a dominant SES line at the fault frequency") {
  auto spec = preset("conveyor-bearing");
  spec.noise_snr_db = 60.0;
  spec.jitter_frac = 0.0;
  spec.interference_tones.clear();
  const auto r = synth_fault_signal(spec, 1);
  const auto ses = squared_envelope_spectrum(r.signal);
  std::vector<double> m(ses.magnitudes().begin() + 1, ses.magnitudes().end());
  std::nth_element(m.begin(), m.begin() + m.size() / 2, m.end());
  const double median = m[m.size() / 2];
  const auto k = ses.nearest_bin(spec.fault_freq_hz);
  double local = 0.0;
  for (std::size_t j = k - 1; j <= k + 1; ++j) local = std::max(local, ses.magnitudes()[j]);
  CHECK(local >= 10.0 * median);
}

TEST_CASE("without impacts the record is Gaussian") {
  auto spec = preset("conveyor-bearing");
  spec.impulse_amplitude = 0.0;
  spec.interference_tones = {{50.0, 1.0}};
  spec.noise_snr_db = -20.0;
  const auto r = synth_fault_signal(spec, 2);
  CHECK(std::abs(kurtosis(r.signal) - 3.0) <= 0.3);
}

TEST_CASE("invalid specs are rejected") {
  auto spec = preset("conveyor-bearing");
  spec.resonance_freq_hz = 20000.0;
  CHECK_THROWS_AS(spec.validate(), Error);
  spec = preset("conveyor-bearing");
  spec.fault_freq_hz = 1.0;  // too few impacts in 1.5 s
  CHECK_THROWS_AS(synth_fault_signal(spec, 0), Error);
  spec = preset("conveyor-bearing");
  spec.impulse_amplitude = 0.0;
  spec.interference_tones.clear();
  CHECK_THROWS_AS(synth_fault_signal(spec, 0), Error);
}
