#include "fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>

namespace isac::detail {
namespace {

// FFTW's planner is not reentrant; plans themselves are safe to execute
// concurrently via fftw_execute_dft.
std::mutex g_planner_mutex;

struct CachedPlan {
  fftw_plan plan = nullptr;
  fftw_complex* in = nullptr;
  fftw_complex* out = nullptr;
};

CachedPlan& plan_for(std::size_t n) {
  static std::map<std::size_t, CachedPlan> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  CachedPlan p;
  p.in = fftw_alloc_complex(n);
  p.out = fftw_alloc_complex(n);
  p.plan = fftw_plan_dft_1d(static_cast<int>(n), p.in, p.out, FFTW_FORWARD,
                            FFTW_ESTIMATE);
  return cache.emplace(n, p).first->second;
}

}  // namespace

std::vector<std::complex<double>> fft_forward(
    std::span<const std::complex<double>> input, std::size_t fft_size) {
  std::lock_guard<std::mutex> lock(g_planner_mutex);
  CachedPlan& p = plan_for(fft_size);
  const std::size_t n = std::min(input.size(), fft_size);
  std::memcpy(p.in, input.data(), n * sizeof(fftw_complex));
  if (n < fft_size)
    std::memset(p.in + n, 0, (fft_size - n) * sizeof(fftw_complex));
  fftw_execute(p.plan);
  std::vector<std::complex<double>> out(fft_size);
  for (std::size_t i = 0; i < fft_size; ++i)
    out[i] = {p.out[i][0], p.out[i][1]};
  return out;
}

}  // namespace isac::detail
