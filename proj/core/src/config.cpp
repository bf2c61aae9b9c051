#include "isac/config.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "isac/constants.hpp"
#include "isac/errors.hpp"

namespace isac {

using nlohmann::json;

void ExperimentConfig::validate() const {
  if (!(sample_rate_hz > 0.0)) throw ConfigError("config: sample_rate_hz must be positive");
  if (!(chirp_bandwidth_hz > 0.0 && chirp_bandwidth_hz < sample_rate_hz))
    throw ConfigError("config: chirp_bandwidth_hz must lie in (0, sample_rate_hz)");
  if (!(pulse_half_duration_s > 0.0))
    throw ConfigError("config: pulse_half_duration_s must be positive");
  if (!(cw_tone_hz > 0.0 && cw_tone_hz < sample_rate_hz / 2.0))
    throw ConfigError("config: cw_tone_hz must lie in (0, sample_rate_hz/2)");
  if (tx_antennas.empty()) throw ConfigError("config: tx_antennas must be nonempty");
  for (int nt : tx_antennas)
    if (nt < 2 || !std::has_single_bit(static_cast<unsigned>(nt)))
      throw ConfigError("config: tx_antennas entries must be powers of two >= 2");
  if (rx_antennas < 1) throw ConfigError("config: rx_antennas must be >= 1");
  if (snr_grid_db.empty()) throw ConfigError("config: snr_grid_db must be nonempty");
  if (!(nakagami_shape > 0.0 && nakagami_spread > 0.0 && rayleigh_scale > 0.0))
    throw ConfigError("config: fading parameters must be positive");
  if (shadow_sigma_db < 0.0) throw ConfigError("config: shadow_sigma_db must be >= 0");
  if (!(elevation_deg > 0.0 && elevation_deg <= 90.0))
    throw ConfigError("config: elevation_deg must lie in (0, 90]");
  if (!(altitude_m > 0.0)) throw ConfigError("config: altitude_m must be positive");
  if (!(carrier_hz > 0.0)) throw ConfigError("config: carrier_hz must be positive");
  if (!(range_min_m > 0.0 && range_max_m >= range_min_m))
    throw ConfigError("config: invalid range interval");
  if (!(velocity_max_mps >= velocity_min_mps))
    throw ConfigError("config: invalid velocity interval");
  if (4.0 * range_max_m / kSpeedOfLight >= pulse_half_duration_s)
    throw ConfigError("config: 4*range_max/c must be < pulse_half_duration_s");
  if (!(false_alarm_probability > 0.0 && false_alarm_probability < 1.0))
    throw ConfigError("config: false_alarm_probability must lie in (0,1)");
  if (fft_zero_pad < 1) throw ConfigError("config: fft_zero_pad must be >= 1");
  if (trials < 1 || sense_trials < 1)
    throw ConfigError("config: trial counts must be >= 1");
}

double ExperimentConfig::elevation_rad() const { return elevation_deg * kPi / 180.0; }
double ExperimentConfig::rician_k_linear() const {
  return std::pow(10.0, rician_k_db / 10.0);
}
double ExperimentConfig::wavelength_m() const { return kSpeedOfLight / carrier_hz; }

WaveformKind waveform_kind_from_string(const std::string& name) {
  if (name == "chirp" || name == "triangle_lfm") return WaveformKind::kTriangleLfm;
  if (name == "v_lfm") return WaveformKind::kVLfm;
  if (name == "sinusoid") return WaveformKind::kSinusoid;
  if (name == "up_chirp") return WaveformKind::kUpChirp;
  if (name == "down_chirp") return WaveformKind::kDownChirp;
  throw ConfigError("unknown waveform: " + name);
}

BeatMethod beat_method_from_string(const std::string& name) {
  if (name == "fft") return BeatMethod::kFftPeak;
  if (name == "music") return BeatMethod::kRootMusic;
  throw ConfigError("unknown beat method: " + name);
}

std::string to_string(BeatMethod method) {
  return method == BeatMethod::kFftPeak ? "fft" : "music";
}

namespace {

json to_json_obj(const ExperimentConfig& c) {
  return json{{"sample_rate_hz", c.sample_rate_hz},
              {"chirp_bandwidth_hz", c.chirp_bandwidth_hz},
              {"pulse_half_duration_s", c.pulse_half_duration_s},
              {"cw_tone_hz", c.cw_tone_hz},
              {"waveform", to_string(c.waveform)},
              {"tx_antennas", c.tx_antennas},
              {"rx_antennas", c.rx_antennas},
              {"snr_grid_db", c.snr_grid_db},
              {"rician_k_db", c.rician_k_db},
              {"nakagami_shape", c.nakagami_shape},
              {"nakagami_spread", c.nakagami_spread},
              {"rayleigh_scale", c.rayleigh_scale},
              {"shadow_sigma_db", c.shadow_sigma_db},
              {"zenith_attenuation_db", c.zenith_attenuation_db},
              {"scintillation_db", c.scintillation_db},
              {"clutter_db", c.clutter_db},
              {"carrier_hz", c.carrier_hz},
              {"altitude_m", c.altitude_m},
              {"elevation_deg", c.elevation_deg},
              {"relative_velocity_mps", c.relative_velocity_mps},
              {"doppler_angle_deg", c.doppler_angle_deg},
              {"range_min_m", c.range_min_m},
              {"range_max_m", c.range_max_m},
              {"velocity_min_mps", c.velocity_min_mps},
              {"velocity_max_mps", c.velocity_max_mps},
              {"false_alarm_probability", c.false_alarm_probability},
              {"beat_method", to_string(c.beat_method)},
              {"fft_zero_pad", c.fft_zero_pad},
              {"seed", c.seed},
              {"trials", c.trials},
              {"sense_trials", c.sense_trials}};
}

}  // namespace

std::string ExperimentConfig::to_json() const { return to_json_obj(*this).dump(2); }

std::uint64_t ExperimentConfig::fingerprint() const {
  // FNV-1a over the canonical serialization.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : to_json()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: JSON parse error: ") + e.what());
  }
  ExperimentConfig c;
  const json defaults = to_json_obj(c);
  for (const auto& [key, value] : j.items())
    if (!defaults.contains(key)) throw ConfigError("config: unknown key '" + key + "'");
  try {
    c.sample_rate_hz = j.value("sample_rate_hz", c.sample_rate_hz);
    c.chirp_bandwidth_hz = j.value("chirp_bandwidth_hz", c.chirp_bandwidth_hz);
    c.pulse_half_duration_s = j.value("pulse_half_duration_s", c.pulse_half_duration_s);
    c.cw_tone_hz = j.value("cw_tone_hz", c.cw_tone_hz);
    if (j.contains("waveform"))
      c.waveform = waveform_kind_from_string(j.at("waveform").get<std::string>());
    c.tx_antennas = j.value("tx_antennas", c.tx_antennas);
    c.rx_antennas = j.value("rx_antennas", c.rx_antennas);
    c.snr_grid_db = j.value("snr_grid_db", c.snr_grid_db);
    c.rician_k_db = j.value("rician_k_db", c.rician_k_db);
    c.nakagami_shape = j.value("nakagami_shape", c.nakagami_shape);
    c.nakagami_spread = j.value("nakagami_spread", c.nakagami_spread);
    c.rayleigh_scale = j.value("rayleigh_scale", c.rayleigh_scale);
    c.shadow_sigma_db = j.value("shadow_sigma_db", c.shadow_sigma_db);
    c.zenith_attenuation_db = j.value("zenith_attenuation_db", c.zenith_attenuation_db);
    c.scintillation_db = j.value("scintillation_db", c.scintillation_db);
    c.clutter_db = j.value("clutter_db", c.clutter_db);
    c.carrier_hz = j.value("carrier_hz", c.carrier_hz);
    c.altitude_m = j.value("altitude_m", c.altitude_m);
    c.elevation_deg = j.value("elevation_deg", c.elevation_deg);
    c.relative_velocity_mps = j.value("relative_velocity_mps", c.relative_velocity_mps);
    c.doppler_angle_deg = j.value("doppler_angle_deg", c.doppler_angle_deg);
    c.range_min_m = j.value("range_min_m", c.range_min_m);
    c.range_max_m = j.value("range_max_m", c.range_max_m);
    c.velocity_min_mps = j.value("velocity_min_mps", c.velocity_min_mps);
    c.velocity_max_mps = j.value("velocity_max_mps", c.velocity_max_mps);
    c.false_alarm_probability =
        j.value("false_alarm_probability", c.false_alarm_probability);
    if (j.contains("beat_method"))
      c.beat_method = beat_method_from_string(j.at("beat_method").get<std::string>());
    c.fft_zero_pad = j.value("fft_zero_pad", c.fft_zero_pad);
    c.seed = j.value("seed", c.seed);
    c.trials = j.value("trials", c.trials);
    c.sense_trials = j.value("sense_trials", c.sense_trials);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: bad value type: ") + e.what());
  }
  c.validate();
  return c;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

}  // namespace isac
