// Brute-force reference implementations. Deliberately naive: O(N^2) DFT,
// nested-loop sums, long double accumulation. Nothing here calls the library.
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

namespace oracle {

using cld = std::complex<long double>;

inline std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n);
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  for (std::size_t k = 0; k < n; ++k) {
    cld acc{0.0L, 0.0L};
    for (std::size_t t = 0; t < n; ++t) {
      // Reduce k*t mod n first so the phase stays accurate for large n.
      const long double phase = -two_pi * static_cast<long double>((k * t) % n) / n;
      acc += cld(x[t].real(), x[t].imag()) * cld(std::cos(phase), std::sin(phase));
    }
    out[k] = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
  }
  return out;
}

inline std::vector<std::complex<double>> dft(const std::vector<double>& x) {
  return dft(std::vector<std::complex<double>>(x.begin(), x.end()));
}

// One-sided SES magnitudes of a squared envelope e (already |z|^2), 2/N scale.
inline std::vector<double> ses_magnitudes(const std::vector<double>& env2) {
  const std::size_t n = env2.size();
  long double mean = 0.0L;
  for (double v : env2) mean += v;
  mean /= n;
  std::vector<double> centred(n);
  for (std::size_t i = 0; i < n; ++i) centred[i] = static_cast<double>(env2[i] - mean);
  const auto spec = dft(centred);
  std::vector<double> out(n / 2 + 1);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = 2.0 * std::abs(spec[k]) / n;
  return out;
}

// sum_n (prod_{m=0..M} y[n - m*T])^2 / (sum y^2)^(M+1), zeros before start.
inline double correlated_kurtosis(const std::vector<double>& y, int shift_order,
                                  std::size_t lag) {
  long double num = 0.0L;
  for (std::size_t n = 0; n < y.size(); ++n) {
    long double prod = 1.0L;
    for (int m = 0; m <= shift_order; ++m) {
      const std::size_t back = static_cast<std::size_t>(m) * lag;
      prod *= back <= n ? static_cast<long double>(y[n - back]) : 0.0L;
    }
    num += prod * prod;
  }
  long double energy = 0.0L;
  for (double v : y) energy += static_cast<long double>(v) * v;
  long double den = 1.0L;
  for (int m = 0; m <= shift_order; ++m) den *= energy;
  return static_cast<double>(num / den);
}

inline double kurtosis(const std::vector<double>& x) {
  long double mean = 0.0L;
  for (double v : x) mean += v;
  mean /= x.size();
  long double m2 = 0.0L, m4 = 0.0L;
  for (double v : x) {
    const long double d = v - mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  m2 /= x.size();
  m4 /= x.size();
  return static_cast<double>(m4 / (m2 * m2));
}

// Windowed energy split: bins k >= 1 with k*res <= n_h*f + tol form the band;
// a bin is in a window when |k*res - h*f| <= tol for some h in 1..n_h.
struct Energy {
  long double in_windows = 0.0L;
  long double in_band = 0.0L;
};

inline Energy windowed_energy(const std::vector<double>& mags, double res, double f, int n_h,
                              double tol) {
  Energy e;
  for (std::size_t k = 1; k < mags.size(); ++k) {
    const double freq = static_cast<double>(k) * res;
    if (freq > n_h * f + tol) break;
    const long double p = static_cast<long double>(mags[k]) * mags[k];
    e.in_band += p;
    for (int h = 1; h <= n_h; ++h) {
      if (std::abs(freq - h * f) <= tol) {
        e.in_windows += p;
        break;
      }
    }
  }
  return e;
}

inline double envsi(const std::vector<double>& mags, double res, double f, int n_h, double tol) {
  const auto e = windowed_energy(mags, res, f, n_h, tol);
  return e.in_band > 0 ? static_cast<double>(e.in_windows / e.in_band) : 0.0;
}

inline double snr_db(const std::vector<double>& mags, double res, double f, int n_h, double tol) {
  const auto e = windowed_energy(mags, res, f, n_h, tol);
  const long double out = e.in_band - e.in_windows;
  if (out <= 0) return std::numeric_limits<double>::infinity();
  if (e.in_windows <= 0) return -std::numeric_limits<double>::infinity();
  return static_cast<double>(10.0L * std::log10(e.in_windows / out));
}

}  // namespace oracle
