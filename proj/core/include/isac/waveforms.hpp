#pragma once

#include <complex>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace isac {

enum class WaveformKind { kUpChirp, kDownChirp, kTriangleLfm, kVLfm, kSinusoid };

std::string to_string(WaveformKind kind);

/// Complex baseband sample sequence plus the parameters that generated it.
struct SampledWaveform {
  std::vector<std::complex<double>> samples;
  double sample_rate_hz = 0.0;
  double duration_s = 0.0;
  WaveformKind kind = WaveformKind::kUpChirp;
  double center_frequency_hz = 0.0;
  double bandwidth_hz = 0.0;  // 0 for sinusoid
  double amplitude = 1.0;

  /// sum |s|^2 / fs.
  double energy() const;
};

/// Chirp sweeping -bw/2 -> +bw/2 (around center_hz) over [0, T).
SampledWaveform gen_up_chirp(double bandwidth_hz, double duration_s,
                             double sample_rate_hz, double amplitude = 1.0,
                             double center_hz = 0.0);

/// Mirror sweep +bw/2 -> -bw/2.
SampledWaveform gen_down_chirp(double bandwidth_hz, double duration_s,
                               double sample_rate_hz, double amplitude = 1.0,
                               double center_hz = 0.0);

/// Analytic tone A*exp(j*2*pi*f*t).
SampledWaveform gen_sinusoid(double frequency_hz, double amplitude,
                             double duration_s, double sample_rate_hz);

/// Up-sweep then down-sweep, duration 2T, unit energy (amplitude sqrt(1/2T)).
SampledWaveform gen_triangle_lfm(double bandwidth_hz, double half_duration_s,
                                 double sample_rate_hz);

/// Down-sweep then up-sweep; the complex conjugate of the triangle pulse.
SampledWaveform gen_v_lfm(double bandwidth_hz, double half_duration_s,
                          double sample_rate_hz);

/// |chi(tau, fd)|^2 on the grid. Delays snap to the sample grid; values are
/// normalized so the (0,0) cell of a unit-energy waveform is 1.
struct AmbiguitySurface {
  std::vector<double> delays_s;
  std::vector<double> dopplers_hz;
  std::vector<double> values;  // row-major, delays x dopplers

  double at(std::size_t delay_idx, std::size_t doppler_idx) const {
    return values[delay_idx * dopplers_hz.size() + doppler_idx];
  }
};

AmbiguitySurface ambiguity(const SampledWaveform& waveform,
                           std::span<const double> delay_grid_s,
                           std::span<const double> doppler_grid_hz);

/// CSV rows "t,re,im".
void write_waveform_csv(const SampledWaveform& waveform, std::ostream& os);

}  // namespace isac
