#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "isac/radar.hpp"
#include "isac/waveforms.hpp"

namespace isac {

/// Full experiment parameter set. Defaults reproduce the standard scenario;
/// everything is overridable from a JSON document.
struct ExperimentConfig {
  // Sampling / waveform
  double sample_rate_hz = 28.8e6;
  double chirp_bandwidth_hz = 10e6;
  double pulse_half_duration_s = 0.05;  // T; swept pulses last 2T
  double cw_tone_hz = 1e6;              // sinusoid carrier for sensing
  WaveformKind waveform = WaveformKind::kTriangleLfm;

  // Communication
  std::vector<int> tx_antennas = {4, 8, 16, 32};
  int rx_antennas = 4;
  std::vector<double> snr_grid_db = {0, 5, 10, 15, 20, 25};

  // Channel
  double rician_k_db = 10.0;
  double nakagami_shape = 0.8;
  double nakagami_spread = 1.0;
  double rayleigh_scale = 1.0;
  double shadow_sigma_db = 1.0;
  double zenith_attenuation_db = 0.22;
  double scintillation_db = 0.13;
  double clutter_db = 0.0;

  // Geometry
  double carrier_hz = 5e9;
  double altitude_m = 780e3;
  double elevation_deg = 60.0;
  double relative_velocity_mps = 1e5;
  double doppler_angle_deg = 30.0;  // tabulated but unused by any equation

  // Radar scene ranges
  double range_min_m = 500e3;
  double range_max_m = 2500e3;
  double velocity_min_mps = 7000.0;
  double velocity_max_mps = 8500.0;
  double false_alarm_probability = 1e-3;
  BeatMethod beat_method = BeatMethod::kFftPeak;
  int fft_zero_pad = 1;

  // Monte Carlo
  std::uint64_t seed = 1;
  std::int64_t trials = 100000;     // per BER point
  std::int64_t sense_trials = 200;  // scenes per sensing point

  /// Throws ConfigError on violated invariants.
  void validate() const;

  double elevation_rad() const;
  double rician_k_linear() const;
  double wavelength_m() const;

  /// Stable hash of the serialized config (for output metadata).
  std::uint64_t fingerprint() const;

  std::string to_json() const;
  static ExperimentConfig from_json(const std::string& text);
  static ExperimentConfig from_json_file(const std::string& path);
};

WaveformKind waveform_kind_from_string(const std::string& name);
BeatMethod beat_method_from_string(const std::string& name);
std::string to_string(BeatMethod method);

}  // namespace isac
