#pragma once

#include <cstddef>
#include <span>

#include "vibdiag/signal.hpp"

namespace vibdiag {

/// Shift order M and fault period in samples T_s. The period is kept
/// fractional and rounded to the nearest integer lag when evaluated.
struct CkSpec {
  int shift_order = 1;
  double period_samples = 0.0;

  std::size_t lag() const;
};

/// Fault period in samples: fs * T.
double period_samples(double sample_rate_hz, double fault_period_s);

/// Throws InvalidInput unless M >= 1, T_s >= 2 and M * round(T_s) < n.
void check_ck_spec(const CkSpec& spec, std::size_t n);

/// Correlated kurtosis of order M at lag T = round(T_s):
///   sum_n (prod_{m=0..M} y[n - mT])^2 / (sum_n y[n]^2)^(M+1)
/// Samples before the record start count as zero, so only n >= M*T
/// contribute to the numerator.
double correlated_kurtosis(std::span<const double> y, const CkSpec& spec);

inline constexpr double kDefaultRefineSearchFrac = 0.05;

/// Refines a period estimate from the autocorrelation of the centred
/// squared envelope of a band-filtered record.
///
/// The autocorrelation maximum within t_s*(1 -/+ search_frac) is located and
/// parabolically interpolated. The estimate is returned unchanged when the
/// maximum is on the window edge or stands less than six standard errors
/// above the window median. The standard error is Bartlett's, using the
/// envelope's short-lag autocorrelation, so band-limited envelopes with few
/// independent samples are not mistaken for periodic ones.
double refine_period(const ComplexSeries& filtered, double t_s_estimate,
                     double search_frac = kDefaultRefineSearchFrac);

}  // namespace vibdiag
