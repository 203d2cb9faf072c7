#include "vibdiag/correlated_kurtosis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "vibdiag/error.hpp"
#include "vibdiag/fft.hpp"

namespace vibdiag {

namespace {

// Autocorrelation peak must clear the window median by this many standard
// errors before the period estimate moves.
constexpr double kPeakSignificance = 6.0;

}  // namespace

std::size_t CkSpec::lag() const {
  return static_cast<std::size_t>(std::llround(period_samples));
}

double period_samples(double sample_rate_hz, double fault_period_s) {
  if (!(sample_rate_hz > 0.0) || !(fault_period_s > 0.0) || !std::isfinite(sample_rate_hz) ||
      !std::isfinite(fault_period_s)) {
    fail(ErrorKind::InvalidInput, "sample rate and fault period must be positive");
  }
  return sample_rate_hz * fault_period_s;
}

void check_ck_spec(const CkSpec& spec, std::size_t n) {
  if (spec.shift_order < 1) {
    fail(ErrorKind::InvalidInput, "shift order must be at least 1");
  }
  if (!(spec.period_samples >= 2.0) || !std::isfinite(spec.period_samples)) {
    fail(ErrorKind::InvalidInput, "period must be at least 2 samples");
  }
  const std::size_t reach = static_cast<std::size_t>(spec.shift_order) * spec.lag();
  if (reach >= n) {
    fail(ErrorKind::InvalidInput, "shift order x period (" + std::to_string(reach) +
                                      " samples) must be shorter than the record (" +
                                      std::to_string(n) + ")");
  }
}

double correlated_kurtosis(std::span<const double> y, const CkSpec& spec) {
  check_ck_spec(spec, y.size());
  const std::size_t lag = spec.lag();
  const std::size_t order = static_cast<std::size_t>(spec.shift_order);

  // Rescale by a power of two (exact) so high orders neither overflow nor
  // underflow; the ratio is scale-invariant.
  double peak = 0.0;
  for (double v : y) peak = std::max(peak, std::abs(v));
  if (!(peak > 0.0) || !std::isfinite(peak)) {
    fail(ErrorKind::DegenerateInput, "correlated kurtosis undefined for a zero-energy signal");
  }
  int exponent = 0;
  std::frexp(peak, &exponent);
  std::vector<double> x(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) x[i] = std::ldexp(y[i], -exponent);

  double energy = 0.0;
  for (double v : x) energy += v * v;

  double numerator = 0.0;
  for (std::size_t n = order * lag; n < x.size(); ++n) {
    double product = x[n];
    for (std::size_t m = 1; m <= order; ++m) product *= x[n - m * lag];
    numerator += product * product;
  }
  return numerator / std::pow(energy, static_cast<double>(order + 1));
}

double refine_period(const ComplexSeries& filtered, double t_s_estimate, double search_frac) {
  const std::size_t n = filtered.size();
  if (!(search_frac > 0.0) || search_frac > 0.1) {
    fail(ErrorKind::InvalidInput, "search fraction must lie in (0, 0.1]");
  }
  if (!(t_s_estimate >= 2.0) || !std::isfinite(t_s_estimate)) {
    fail(ErrorKind::InvalidInput, "period estimate must be at least 2 samples");
  }
  if (!(t_s_estimate * (1.0 + search_frac) < static_cast<double>(n) / 3.0)) {
    fail(ErrorKind::InvalidInput, "period search window must stay below a third of the record");
  }
  const auto lo = static_cast<std::size_t>(std::ceil(t_s_estimate * (1.0 - search_frac)));
  const auto hi = static_cast<std::size_t>(std::floor(t_s_estimate * (1.0 + search_frac)));
  if (lo > hi) fail(ErrorKind::InvalidInput, "period search window is empty");
  if (hi - lo < 2) return t_s_estimate;

  std::vector<Complex> env(2 * n, Complex{0.0, 0.0});
  const auto values = filtered.values();
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += std::norm(values[i]);
  mean /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) env[i] = std::norm(values[i]) - mean;

  // Linear autocorrelation through a zero-padded transform.
  auto spectrum = fft::forward(env);
  for (auto& c : spectrum) c = std::norm(c);
  const auto acf = fft::inverse(spectrum);
  const double r0 = acf[0].real();
  if (!(r0 > 0.0)) return t_s_estimate;

  std::vector<double> rho(hi - lo + 1);
  for (std::size_t lag = lo; lag <= hi; ++lag) rho[lag - lo] = acf[lag].real() / r0;

  const auto best = static_cast<std::size_t>(
      std::distance(rho.begin(), std::max_element(rho.begin(), rho.end())));
  if (best == 0 || best + 1 == rho.size()) return t_s_estimate;

  // Bartlett standard error of a sample autocorrelation, with the envelope's
  // own short-lag correlation (lags below half the window) as the memory.
  double memory = 0.0;
  for (std::size_t j = 1; j < lo / 2; ++j) {
    const double r = acf[j].real() / r0;
    memory += r * r;
  }
  const double std_err = std::sqrt((1.0 + 2.0 * memory) / static_cast<double>(n));

  std::vector<double> sorted = rho;
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  const double median = sorted[sorted.size() / 2];
  if (rho[best] - median < kPeakSignificance * std_err) return t_s_estimate;

  const double left = rho[best - 1];
  const double centre = rho[best];
  const double right = rho[best + 1];
  const double curvature = left - 2.0 * centre + right;
  double offset = 0.0;
  if (curvature < 0.0) offset = std::clamp(0.5 * (left - right) / curvature, -0.5, 0.5);
  return static_cast<double>(lo + best) + offset;
}

}  // namespace vibdiag
