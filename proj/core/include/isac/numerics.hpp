#pragma once

#include <complex>
#include <span>
#include <vector>

#include "isac/rng.hpp"

namespace isac {

/// Upper tail of the standard normal: P(N(0,1) > x).
double q_function(double x);

/// Inverse of q_function on (0, 1). q_function(inv_q_function(p)) == p to 1e-9.
double inv_q_function(double p);

/// One Nakagami(m, omega) magnitude draw; E[X^2] = omega.
double sample_nakagami(double shape, double spread, RngStream& rng);

/// One Rayleigh(sigma) magnitude draw; E[X^2] = 2*sigma^2.
double sample_rayleigh(double scale, RngStream& rng);

/// Gamma(shape, scale) draw (Marsaglia-Tsang, with the boost for shape < 1).
double sample_gamma(double shape, double scale, RngStream& rng);

struct SpectralEstimate {
  enum class Method { kFftPeak, kRootMusic };
  double frequency_hz = 0.0;  // signed, in (-fs/2, fs/2]
  double power = 0.0;
  Method method = Method::kFftPeak;
};

/// Frequency of the magnitude-spectrum maximum, refined by 3-point parabolic
/// interpolation around the peak. Resolution <= fs / (N * zero_pad_factor).
SpectralEstimate fft_peak_frequency(std::span<const std::complex<double>> samples,
                                    double sample_rate_hz, int zero_pad_factor);

/// Root-MUSIC: `model_order` frequencies from the roots of the noise-subspace
/// polynomial closest to the unit circle, built from a forward-averaged
/// autocorrelation matrix.
std::vector<SpectralEstimate> root_music_frequencies(
    std::span<const std::complex<double>> samples, int model_order,
    double sample_rate_hz);

}  // namespace isac
