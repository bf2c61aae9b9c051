#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "isac/config.hpp"
#include "isac/waveforms.hpp"

namespace isac {

struct BerPoint {
  double snr_db = 0.0;
  double ber = 0.0;
  std::int64_t trials = 0;
  double std_err = 0.0;  // sqrt(ber*(1-ber)/(trials*bits_per_symbol))
};

struct BerCurve {
  int n_tx = 0;
  WaveformKind waveform = WaveformKind::kTriangleLfm;
  std::vector<BerPoint> points;
};

struct AccuracyPoint {
  double snr_db = 0.0;
  std::optional<double> mean_range_accuracy_pct;  // absent for the sinusoid
  double mean_velocity_accuracy_pct = 0.0;
  double detection_rate = 0.0;
};

struct AccuracyCurve {
  WaveformKind waveform = WaveformKind::kTriangleLfm;
  std::vector<AccuracyPoint> points;
};

struct SceneRecord {
  double range_m = 0.0;
  double velocity_mps = 0.0;
  double snr_db = 0.0;
  std::optional<double> range_estimate_m;
  double velocity_estimate_mps = 0.0;
  bool detected = false;
  std::optional<double> range_accuracy_pct;
  double velocity_accuracy_pct = 0.0;
  std::string method;
};

/// Monte Carlo BER sweep for the configured waveform, one curve per antenna
/// count. Deterministic under (config, seed): each trial owns stream
/// id f(waveform, n_tx, snr index, trial).
std::vector<BerCurve> run_ber_sweep(const ExperimentConfig& config);

/// Sensing sweep for the configured waveform; optionally records every scene.
AccuracyCurve run_sensing_sweep(const ExperimentConfig& config,
                                std::vector<SceneRecord>* scenes = nullptr);

/// Link-budget report as a JSON document.
std::string run_link_budget(const ExperimentConfig& config);

/// Ambiguity surface of the configured waveform on a default 101x101 grid.
AmbiguitySurface run_ambiguity(const ExperimentConfig& config);

/// File-name label for a waveform ("chirp" for the swept kinds).
std::string waveform_file_label(WaveformKind kind);

void write_ber_csv(const BerCurve& curve, const ExperimentConfig& config,
                   std::ostream& os);
void write_accuracy_csv(const AccuracyCurve& curve, const ExperimentConfig& config,
                        std::ostream& os);
void write_scene_csv(const std::vector<SceneRecord>& scenes,
                     const ExperimentConfig& config, std::ostream& os);
void write_ambiguity_csv(const AmbiguitySurface& surface,
                         const ExperimentConfig& config, std::ostream& os);

}  // namespace isac
