#pragma once

#include <span>

#include "vibdiag/signal.hpp"

namespace vibdiag {

/// Analytic signal via the one-sided spectrum. The real part reproduces the
/// input; the modulus is the instantaneous envelope.
ComplexSeries analytic_signal(const Signal& s);

/// Spectrum of the mean-removed squared envelope |z|^2, one-sided, scaled by
/// 2/N. Bin 0 is retained (near zero after centering) but consumers exclude
/// it from peak searches.
EnvelopeSpectrum squared_envelope_spectrum(const ComplexSeries& z);

/// Convenience: SES of the analytic signal of a real record.
EnvelopeSpectrum squared_envelope_spectrum(const Signal& s);

/// Non-excess kurtosis E[(x-mu)^4] / E[(x-mu)^2]^2.
/// Throws DegenerateInput for zero variance, InvalidInput below 4 samples.
double kurtosis(std::span<const double> x);
double kurtosis(const Signal& s);

inline constexpr int kDefaultEnvsiHarmonics = 10;
inline constexpr double kDefaultBandToleranceBins = 1.5;

/// Default harmonic window half-width: 1.5 spectral bins.
inline double default_band_tolerance(const EnvelopeSpectrum& ses) {
  return kDefaultBandToleranceBins * ses.resolution_hz();
}

/// Split of SES energy (squared magnitudes, DC excluded) between the
/// +/- band_tol windows around the first n_harmonics fault-frequency
/// multiples and the rest of the band (0, n_harmonics*f + band_tol].
struct HarmonicEnergy {
  double in_windows = 0.0;
  double in_band = 0.0;

  double outside() const { return in_band - in_windows; }
};

HarmonicEnergy harmonic_energy(const EnvelopeSpectrum& ses, double fault_freq_hz,
                               int n_harmonics, double band_tol_hz);

/// Envelope-spectrum indicator: fraction of in-band SES energy that sits in
/// the harmonic windows. Returns 0 for an all-zero band.
double envsi(const EnvelopeSpectrum& ses, double fault_freq_hz,
             int n_harmonics = kDefaultEnvsiHarmonics, double band_tol_hz = -1.0);

/// 10*log10(harmonic-window energy / remaining in-band energy), in dB.
/// Returns +infinity when there is no out-of-window energy and -infinity
/// when the windows are empty.
double harmonic_snr(const EnvelopeSpectrum& ses, double fault_freq_hz,
                    int n_harmonics = kDefaultEnvsiHarmonics, double band_tol_hz = -1.0);

}  // namespace vibdiag
