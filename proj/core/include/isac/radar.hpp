#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "isac/rng.hpp"
#include "isac/waveforms.hpp"

namespace isac {

enum class BeatMethod { kFftPeak, kRootMusic };
enum class ChirpSegment { kUp, kDown };

/// A single debris scene. snr_db is the per-sample SNR of the dechirped
/// signal (infinity disables noise). For chirped waveforms the round-trip
/// beat delay 4R/c must fit inside the half-pulse duration.
struct RadarScene {
  double range_m = 0.0;
  double radial_velocity_mps = 0.0;  // positive = closing
  double snr_db = 0.0;
  SampledWaveform waveform;
  double wavelength_m = 0.06;
};

struct RadarConfig {
  double false_alarm_probability = 1e-3;
  BeatMethod method = BeatMethod::kFftPeak;
  int zero_pad_factor = 1;
};

struct RadarEstimate {
  std::optional<double> beat_up_hz;    // chirped waveforms only
  std::optional<double> beat_down_hz;
  std::optional<double> range_m;       // absent for the sinusoid
  double velocity_mps = 0.0;
  bool detected = false;
  std::optional<double> range_accuracy_pct;  // clamped to [0, 100]
  double velocity_accuracy_pct = 0.0;
};

/// Neyman-Pearson threshold bookkeeping: gamma = inv_q(1 - P_FA),
/// threshold = noise_power * gamma. Note gamma is negative for P_FA < 0.5;
/// the detection rule in sense() uses the complementary quantile -gamma.
struct DetectionThreshold {
  double false_alarm_probability = 0.0;
  double noise_power = 0.0;
  double gamma = 0.0;
  double threshold = 0.0;
};

/// Delayed, Doppler-shifted copy of the transmit waveform plus white noise.
/// The delay is 4R/c so the dechirped beats land on the up/down beat formulas.
std::vector<std::complex<double>> synthesize_echo(const RadarScene& scene,
                                                  double sample_rate_hz,
                                                  RngStream& rng);

/// Pointwise rx * conj(reference) over the requested chirp segment.
std::vector<std::complex<double>> dechirp(
    std::span<const std::complex<double>> received,
    const SampledWaveform& reference, ChirpSegment segment);

/// Beat-frequency magnitudes (up, down) from the two half-segments of a
/// triangle-LFM or V-LFM echo.
std::pair<double, double> estimate_beats(
    std::span<const std::complex<double>> echo, const SampledWaveform& waveform,
    double sample_rate_hz, BeatMethod method, int zero_pad_factor = 1);

/// R = (T*c / 8*bw) * (f_down + f_up).
double estimate_range(double beat_up_hz, double beat_down_hz,
                      double half_duration_s, double bandwidth_hz);

/// V = (lambda/4) * (f_down - f_up); positive = closing.
double estimate_velocity(double beat_up_hz, double beat_down_hz,
                         double wavelength_m);

/// Continuous-wave Doppler: mix with the transmit tone, estimate the residual
/// frequency, return f_D * lambda / 2.
double estimate_velocity_cw(std::span<const std::complex<double>> echo,
                            double tone_hz, double sample_rate_hz,
                            double wavelength_m,
                            BeatMethod method = BeatMethod::kFftPeak,
                            int zero_pad_factor = 1);

DetectionThreshold np_threshold(double noise_power, double false_alarm_probability);

/// max(0, 100 - |true - est| / |true| * 100).
double accuracy_percent(double true_value, double estimate);

/// Full sensing pipeline: synthesize, dechirp, estimate, threshold, score.
RadarEstimate sense(const RadarScene& scene, const RadarConfig& config,
                    RngStream& rng);

}  // namespace isac
