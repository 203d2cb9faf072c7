#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "vibdiag/envelope.hpp"
#include "vibdiag/error.hpp"
#include "vibdiag/signal.hpp"

using namespace vibdiag;
using std::numbers::pi;

namespace {

std::vector<double> sine(std::size_t n, double fs, double f, double amp = 1.0) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = amp * std::sin(2 * pi * f * i / fs);
  return x;
}

std::vector<double> gaussian(std::size_t n, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> d;
  std::vector<double> x(n);
  for (auto& v : x) v = d(gen);
  return x;
}

}  // namespace

TEST_CASE("signal rejects short, non-finite or unrated records") {
  CHECK_THROWS_AS(Signal(std::vector<double>(15, 0.0), 100.0), Error);
  CHECK_NOTHROW(Signal(std::vector<double>(16, 0.0), 100.0));
  std::vector<double> bad(32, 0.0);
  bad[3] = std::nan("");
  CHECK_THROWS_AS(Signal(bad, 100.0), Error);
  bad[3] = INFINITY;
  CHECK_THROWS_AS(Signal(bad, 100.0), Error);
  CHECK_THROWS_AS(Signal(std::vector<double>(32, 0.0), 0.0), Error);
  CHECK_THROWS_AS(Signal(std::vector<double>(32, 0.0), -5.0), Error);
}

TEST_CASE("analytic signal of a bin-aligned sine has unit modulus") {
  const double fs = 1000.0;
  const std::size_t n = 1000;
  const auto z = analytic_signal(Signal(sine(n, fs, 50.0), fs));
  const auto mod = z.modulus();
  for (std::size_t i = 0; i < n; ++i) CHECK(mod[i] == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("analytic signal of a cosine pairs it with the sine") {
  const double fs = 2048.0;
  const std::size_t n = 2048;
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = std::cos(2 * pi * 64.0 * i / fs);
  const auto z = analytic_signal(Signal(x, fs));
  for (std::size_t i = n / 4; i < 3 * n / 4; ++i) {
    const double t = i / fs;
    CHECK(std::abs(z.values()[i].imag() - std::sin(2 * pi * 64.0 * t)) < 1e-9);
    CHECK(std::abs(std::abs(z.values()[i]) - 1.0) < 1e-6);
  }
}

TEST_CASE("analytic signal of zeros is zero and the real part reproduces the input") {
  const auto z0 = analytic_signal(Signal(std::vector<double>(64, 0.0), 10.0));
  for (auto v : z0.values()) CHECK(std::abs(v) == 0.0);

  const auto x = gaussian(301, 5);
  const auto z = analytic_signal(Signal(x, 10.0));
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(z.values()[i].real() == doctest::Approx(x[i]).epsilon(1e-9));
}

TEST_CASE("analytic signal is linear") {
  const auto x = gaussian(512, 1), y = gaussian(512, 2);
  const double a = 2.5, b = -0.75;
  std::vector<double> mix(512);
  for (std::size_t i = 0; i < 512; ++i) mix[i] = a * x[i] + b * y[i];
  const auto zx = analytic_signal(Signal(x, 1.0));
  const auto zy = analytic_signal(Signal(y, 1.0));
  const auto zm = analytic_signal(Signal(mix, 1.0));
  double scale = 0.0;
  for (auto v : zm.values()) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < 512; ++i) {
    const auto expect = a * zx.values()[i] + b * zy.values()[i];
    CHECK(std::abs(zm.values()[i] - expect) <= 1e-9 * scale);
  }
}

TEST_CASE("SES of a constant envelope is zero") {
  std::vector<Complex> z(256, Complex{0.7, 0.0});
  const auto ses = squared_envelope_spectrum(ComplexSeries(z, 100.0));
  for (double m : ses.magnitudes()) CHECK(m < 1e-12);
}

TEST_CASE("SES of a single-tone envelope peaks at the modulation frequency") {
  const double fs = 19200.0;
  const std::size_t n = 4800;
  std::vector<Complex> z(n);
  std::vector<double> env2(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::sqrt(1.0 + 0.5 * std::cos(2 * pi * 12.6 * i / fs));
    z[i] = a * std::polar(1.0, 2 * pi * 3000.0 * i / fs);
    env2[i] = std::norm(z[i]);
  }
  const auto ses = squared_envelope_spectrum(ComplexSeries(z, fs));
  CHECK(ses.resolution_hz() == doctest::Approx(fs / n));
  CHECK(ses.size() == n / 2 + 1);
  CHECK(ses.max_frequency_hz() <= fs / 2);

  const auto ref = oracle::ses_magnitudes(env2);
  std::size_t arg = 1;
  for (std::size_t k = 1; k < ses.size(); ++k) {
    CHECK(ses.magnitudes()[k] == doctest::Approx(ref[k]).epsilon(1e-9).scale(1e-12));
    if (ses.magnitudes()[k] > ses.magnitudes()[arg]) arg = k;
  }
  CHECK(arg == ses.nearest_bin(12.6));
}

TEST_CASE("SES of an impulse-response train shows harmonics of the repetition rate") {
  const double fs = 4096.0;
  const std::size_t n = 4096, period = 128;  // 32 Hz, bin aligned
  std::vector<double> x(n, 0.0);
  for (std::size_t start = 0; start < n; start += period) {
    for (std::size_t j = 0; start + j < n && j < 100; ++j) {
      x[start + j] += std::exp(-0.05 * j) * std::sin(2 * pi * 800.0 * j / fs);
    }
  }
  const auto ses = squared_envelope_spectrum(Signal(x, fs));
  const auto mags = ses.magnitudes();
  double floor = 0.0;
  for (std::size_t k = 1; k < 320; ++k) {
    if (k % 32 != 0) floor = std::max(floor, mags[k]);
  }
  for (int h = 1; h <= 8; ++h) CHECK(mags[32 * h] > 10.0 * floor);
}

TEST_CASE("SES energy balances the centred squared envelope") {
  const auto x = gaussian(1000, 9);
  const auto z = analytic_signal(Signal(x, 1.0));
  const auto ses = squared_envelope_spectrum(z);
  std::vector<double> env2(x.size());
  double mean = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) mean += env2[i] = std::norm(z.values()[i]);
  mean /= x.size();
  long double energy = 0.0L;
  for (double e : env2) energy += (e - mean) * (e - mean);
  // One-sided 2/N magnitudes: interior bins carry N/2 * M^2, DC and Nyquist N/4 * M^2.
  const auto m = ses.magnitudes();
  const double n = static_cast<double>(x.size());
  long double parseval = (n / 4) * (m[0] * m[0] + m[m.size() - 1] * m[m.size() - 1]);
  for (std::size_t k = 1; k + 1 < m.size(); ++k) parseval += (n / 2) * m[k] * m[k];
  CHECK(static_cast<double>(parseval) == doctest::Approx(static_cast<double>(energy)).epsilon(1e-6));
}

TEST_CASE("kurtosis of Gaussian noise is close to 3") {
  const auto x = gaussian(100000, 42);
  CHECK(kurtosis(Signal(x, 1.0)) == doctest::Approx(3.0).epsilon(0.2 / 3.0));
  CHECK(kurtosis(x) == doctest::Approx(oracle::kurtosis(x)).epsilon(1e-10));
}

TEST_CASE("kurtosis rejects a constant signal and flags an impulse") {
  CHECK_THROWS_AS(kurtosis(Signal(std::vector<double>(100, 2.0), 1.0)), Error);
  std::vector<double> x(1000);
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-1e-6, 1e-6);
  for (auto& v : x) v = u(gen);
  x[500] = 1.0;
  const double k = kurtosis(x);
  CHECK(k > 100.0);
  CHECK(k == doctest::Approx(oracle::kurtosis(x)).epsilon(1e-9));
}

TEST_CASE("kurtosis is scale invariant") {
  const auto x = gaussian(4000, 11);
  auto y = x;
  for (auto& v : y) v *= -37.5;
  CHECK(kurtosis(y) == doctest::Approx(kurtosis(x)).epsilon(1e-9));
}

TEST_CASE("envsi limits and oracle agreement") {
  const double res = 0.5, f = 12.6;
  const int n_h = 10;
  std::vector<double> m(400, 0.0);
  EnvelopeSpectrum empty(m, res);
  CHECK(envsi(empty, f, n_h) == 0.0);

  // All energy on the nearest bins of the harmonics.
  for (int h = 1; h <= n_h; ++h) m[static_cast<std::size_t>(std::lround(h * f / res))] = 1.0;
  CHECK(envsi(EnvelopeSpectrum(m, res), f, n_h) == doctest::Approx(1.0));
  CHECK(harmonic_snr(EnvelopeSpectrum(m, res), f, n_h) == INFINITY);

  std::vector<double> off(400, 0.0);
  off[40] = 1.0;  // 20 Hz, between harmonics 1 and 2
  CHECK(envsi(EnvelopeSpectrum(off, res), f, n_h) == 0.0);
  CHECK(harmonic_snr(EnvelopeSpectrum(off, res), f, n_h) == -INFINITY);

  std::vector<double> half(400, 0.0);
  half[25] = 1.0;  // 12.5 Hz, inside window 1
  half[40] = 1.0;
  CHECK(harmonic_snr(EnvelopeSpectrum(half, res), f, n_h) == doctest::Approx(0.0));

  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> r(400);
    for (auto& v : r) v = u(gen);
    const double tol = 1.5 * res;
    const EnvelopeSpectrum ses(r, res);
    const double e = envsi(ses, f, n_h);
    CHECK(e >= 0.0);
    CHECK(e <= 1.0);
    CHECK(std::abs(e - oracle::envsi(r, res, f, n_h, tol)) <= 1e-12);
    CHECK(std::abs(harmonic_snr(ses, f, n_h) - oracle::snr_db(r, res, f, n_h, tol)) <= 1e-9);
  }
}

TEST_CASE("harmonic windows must fit in the spectrum") {
  const EnvelopeSpectrum ses(std::vector<double>(100, 1.0), 1.0);
  CHECK_THROWS_AS(envsi(ses, 12.0, 10), Error);
  CHECK_NOTHROW(envsi(ses, 9.0, 10));
  CHECK_THROWS_AS(envsi(ses, 0.5, 2), Error);
  CHECK_THROWS_AS(envsi(ses, 5.0, 0), Error);
}

TEST_CASE("signal-core operations are pure") {
  const auto x = gaussian(777, 23);
  const Signal s(x, 50.0);
  const auto a = squared_envelope_spectrum(s), b = squared_envelope_spectrum(s);
  CHECK(std::equal(a.magnitudes().begin(), a.magnitudes().end(), b.magnitudes().begin()));
}
