#pragma once

// Internal FFTW wrapper with a per-size plan cache. Not installed.

#include <complex>
#include <span>
#include <vector>

namespace isac::detail {

/// Forward complex DFT (unnormalized), zero-padding the input to `fft_size`.
std::vector<std::complex<double>> fft_forward(
    std::span<const std::complex<double>> input, std::size_t fft_size);

}  // namespace isac::detail
