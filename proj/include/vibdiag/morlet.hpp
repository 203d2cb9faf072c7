#pragma once

#include <cstddef>
#include <vector>

#include "vibdiag/signal.hpp"

namespace vibdiag {

/// Morlet filter parameters: Gaussian frequency response centred at
/// center_freq_hz whose nominal band is center +/- bandwidth/2.
struct MorletParams {
  double center_freq_hz = 0.0;
  double bandwidth_hz = 0.0;

  double band_low_hz() const { return center_freq_hz - 0.5 * bandwidth_hz; }
  double band_high_hz() const { return center_freq_hz + 0.5 * bandwidth_hz; }
};

/// exp(-(pi^2 / sigma^2) (f - f_c)^2). Peak value 1 at the centre frequency.
double morlet_gain(const MorletParams& p, double f_hz);

/// True when bandwidth is positive and the nominal band lies in [0, fs/2].
bool band_fits(const MorletParams& p, double sample_rate_hz) noexcept;

/// Throws InvalidParameter unless band_fits holds.
void check_band(const MorletParams& p, double sample_rate_hz);

/// Frequency-domain Morlet filtering with an analytic output: the real part
/// is the band-passed waveform and the modulus its envelope. DC is removed.
ComplexSeries wavelet_filter(const Signal& s, const MorletParams& p);

/// Repeated filtering of one record with many parameter sets. The forward
/// transform is computed once; each apply() costs one inverse transform.
class MorletFilterBank {
 public:
  explicit MorletFilterBank(const Signal& s);

  ComplexSeries apply(const MorletParams& p) const;
  std::vector<double> apply_real(const MorletParams& p) const;

  double sample_rate_hz() const noexcept { return sample_rate_hz_; }
  std::size_t size() const noexcept { return spectrum_.size(); }

 private:
  std::vector<Complex> filtered(const MorletParams& p) const;

  std::vector<Complex> spectrum_;
  double sample_rate_hz_;
};

/// Sampled complex Morlet wavelet c * exp(-sigma^2 t^2) * exp(j 2 pi f_c t)
/// with c = sigma / sqrt(pi), on the symmetric grid t_i = (i - (n-1)/2) / fs.
/// Not used for filtering; it cross-checks the closed-form response.
ComplexSeries time_domain_wavelet(const MorletParams& p, std::size_t n, double sample_rate_hz);

}  // namespace vibdiag
