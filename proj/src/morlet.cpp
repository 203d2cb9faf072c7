#include "vibdiag/morlet.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "vibdiag/error.hpp"
#include "vibdiag/fft.hpp"

namespace vibdiag {

namespace {

void check_params(const MorletParams& p) {
  if (!(p.bandwidth_hz > 0.0) || !std::isfinite(p.bandwidth_hz) ||
      !std::isfinite(p.center_freq_hz)) {
    fail(ErrorKind::InvalidParameter, "Morlet bandwidth must be positive and finite");
  }
}

}  // namespace

double morlet_gain(const MorletParams& p, double f_hz) {
  check_params(p);
  const double d = (f_hz - p.center_freq_hz) / p.bandwidth_hz;
  return std::exp(-std::numbers::pi * std::numbers::pi * d * d);
}

bool band_fits(const MorletParams& p, double sample_rate_hz) noexcept {
  return p.bandwidth_hz > 0.0 && std::isfinite(p.bandwidth_hz) &&
         std::isfinite(p.center_freq_hz) && p.band_low_hz() >= 0.0 &&
         p.band_high_hz() <= 0.5 * sample_rate_hz;
}

void check_band(const MorletParams& p, double sample_rate_hz) {
  check_params(p);
  if (!band_fits(p, sample_rate_hz)) {
    fail(ErrorKind::InvalidParameter,
         "Morlet band [" + std::to_string(p.band_low_hz()) + ", " +
             std::to_string(p.band_high_hz()) + "] Hz lies outside [0, " +
             std::to_string(0.5 * sample_rate_hz) + "] Hz");
  }
}

MorletFilterBank::MorletFilterBank(const Signal& s)
    : spectrum_(fft::forward(s.samples())), sample_rate_hz_(s.sample_rate_hz()) {}

std::vector<Complex> MorletFilterBank::filtered(const MorletParams& p) const {
  check_band(p, sample_rate_hz_);
  const double inv_bw = 1.0 / p.bandwidth_hz;
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const auto gain = [&](double f) {
    const double d = (f - p.center_freq_hz) * inv_bw;
    return std::exp(-pi2 * d * d);
  };
  return fft::inverse(fft::one_sided(spectrum_, sample_rate_hz_, gain, false));
}

ComplexSeries MorletFilterBank::apply(const MorletParams& p) const {
  return ComplexSeries(filtered(p), sample_rate_hz_);
}

std::vector<double> MorletFilterBank::apply_real(const MorletParams& p) const {
  const auto z = filtered(p);
  std::vector<double> out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = z[i].real();
  return out;
}

ComplexSeries wavelet_filter(const Signal& s, const MorletParams& p) {
  check_band(p, s.sample_rate_hz());
  return MorletFilterBank(s).apply(p);
}

ComplexSeries time_domain_wavelet(const MorletParams& p, std::size_t n, double sample_rate_hz) {
  check_params(p);
  if (n < 64) fail(ErrorKind::InvalidInput, "wavelet grid needs at least 64 points");
  const double c = p.bandwidth_hz / std::sqrt(std::numbers::pi);
  const double s2 = p.bandwidth_hz * p.bandwidth_hz;
  const double mid = 0.5 * static_cast<double>(n - 1);
  std::vector<Complex> psi(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = (static_cast<double>(i) - mid) / sample_rate_hz;
    psi[i] = c * std::exp(-s2 * t * t) *
             std::polar(1.0, 2.0 * std::numbers::pi * p.center_freq_hz * t);
  }
  return ComplexSeries(std::move(psi), sample_rate_hz);
}

}  // namespace vibdiag
