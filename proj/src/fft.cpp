#include "vibdiag/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

namespace vibdiag::fft {

namespace {

struct FftwFree {
  void operator()(fftw_complex* p) const noexcept { fftw_free(p); }
};
using Buffer = std::unique_ptr<fftw_complex[], FftwFree>;

Buffer allocate(std::size_t n) {
  return Buffer(fftw_alloc_complex(n));
}

// The FFTW planner is not thread-safe; execution of an existing plan on new
// arrays (fftw_execute_dft) is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    Buffer in = allocate(n);
    Buffer out = allocate(n);
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), in.get(), out.get(), sign,
                                      FFTW_ESTIMATE);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

std::vector<Complex> execute(std::span<const Complex> x, int sign) {
  const std::size_t n = x.size();
  if (n == 0) return {};
  Buffer in = allocate(n);
  Buffer out = allocate(n);
  for (std::size_t i = 0; i < n; ++i) {
    in[i][0] = x[i].real();
    in[i][1] = x[i].imag();
  }
  fftw_execute_dft(cache().get(n, sign), in.get(), out.get());
  std::vector<Complex> result(n);
  for (std::size_t i = 0; i < n; ++i) result[i] = Complex{out[i][0], out[i][1]};
  return result;
}

}  // namespace

std::vector<Complex> forward(std::span<const Complex> x) { return execute(x, FFTW_FORWARD); }

std::vector<Complex> forward(std::span<const double> x) {
  std::vector<Complex> z(x.begin(), x.end());
  return execute(z, FFTW_FORWARD);
}

std::vector<Complex> inverse(std::span<const Complex> spectrum) {
  auto out = execute(spectrum, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(spectrum.size());
  std::for_each(out.begin(), out.end(), [scale](Complex& z) { z *= scale; });
  return out;
}

}  // namespace vibdiag::fft
