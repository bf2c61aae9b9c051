#include "isac/radar.hpp"

#include <cmath>

#include "isac/constants.hpp"
#include "isac/errors.hpp"
#include "isac/numerics.hpp"

namespace isac {
namespace {

using Cd = std::complex<double>;

bool is_swept(WaveformKind kind) {
  return kind == WaveformKind::kTriangleLfm || kind == WaveformKind::kVLfm;
}

// Window [begin, end) of the requested sweep segment within the reference.
std::pair<std::size_t, std::size_t> segment_window(const SampledWaveform& ref,
                                                   ChirpSegment segment) {
  const std::size_t n = ref.samples.size();
  switch (ref.kind) {
    case WaveformKind::kUpChirp:
      if (segment != ChirpSegment::kUp)
        throw ConfigError("dechirp: up-chirp reference has no down segment");
      return {0, n};
    case WaveformKind::kDownChirp:
      if (segment != ChirpSegment::kDown)
        throw ConfigError("dechirp: down-chirp reference has no up segment");
      return {0, n};
    case WaveformKind::kTriangleLfm:
      return segment == ChirpSegment::kUp ? std::pair{std::size_t{0}, n / 2}
                                          : std::pair{n / 2, n};
    case WaveformKind::kVLfm:
      return segment == ChirpSegment::kUp ? std::pair{n / 2, n}
                                          : std::pair{std::size_t{0}, n / 2};
    case WaveformKind::kSinusoid:
      throw ConfigError("dechirp: sinusoid reference has no chirp segments");
  }
  throw ConfigError("dechirp: unknown waveform kind");
}

double single_tone_hz(std::span<const Cd> samples, double fs, BeatMethod method,
                      int zero_pad_factor) {
  if (method == BeatMethod::kRootMusic)
    return root_music_frequencies(samples, 1, fs).front().frequency_hz;
  return fft_peak_frequency(samples, fs, zero_pad_factor).frequency_hz;
}

}  // namespace

std::vector<Cd> synthesize_echo(const RadarScene& scene, double sample_rate_hz,
                                RngStream& rng) {
  const auto& wf = scene.waveform;
  if (wf.samples.empty()) throw ConfigError("synthesize_echo: empty waveform");
  if (sample_rate_hz != wf.sample_rate_hz)
    throw ConfigError("synthesize_echo: sample rate mismatch");
  if (!(scene.range_m > 0.0)) throw ConfigError("synthesize_echo: range must be positive");
  if (!(scene.wavelength_m > 0.0))
    throw ConfigError("synthesize_echo: wavelength must be positive");

  const double delay_s = 4.0 * scene.range_m / kSpeedOfLight;
  const double max_delay =
      is_swept(wf.kind) ? wf.duration_s / 2.0 : wf.duration_s;
  if (delay_s >= max_delay)
    throw ConfigError("synthesize_echo: echo returns outside the pulse period");

  const std::size_t n = wf.samples.size();
  const std::size_t shift =
      static_cast<std::size_t>(std::llround(delay_s * sample_rate_hz));
  const double doppler_hz = 2.0 * scene.radial_velocity_mps / scene.wavelength_m;
  const double dphi = kTwoPi * doppler_hz / sample_rate_hz;

  std::vector<Cd> echo(n, Cd{0.0, 0.0});
  constexpr std::size_t kBlock = 1024;
  for (std::size_t b = shift; b < n; b += kBlock) {
    Cd rot = std::polar(1.0, dphi * static_cast<double>(b));
    const Cd step = std::polar(1.0, dphi);
    const std::size_t end = std::min(n, b + kBlock);
    for (std::size_t i = b; i < end; ++i) {
      echo[i] = wf.samples[i - shift] * rot;
      rot *= step;
    }
  }

  if (std::isfinite(scene.snr_db)) {
    const double snr_linear = std::pow(10.0, scene.snr_db / 10.0);
    const double noise_var = wf.amplitude * wf.amplitude / snr_linear;
    for (auto& s : echo) s += rng.complex_normal(noise_var);
  }
  return echo;
}

std::vector<Cd> dechirp(std::span<const Cd> received,
                        const SampledWaveform& reference, ChirpSegment segment) {
  if (received.size() != reference.samples.size())
    throw ConfigError("dechirp: received length must match reference");
  const auto [begin, end] = segment_window(reference, segment);
  std::vector<Cd> mixed(end - begin);
  for (std::size_t i = begin; i < end; ++i)
    mixed[i - begin] = received[i] * std::conj(reference.samples[i]);
  return mixed;
}

std::pair<double, double> estimate_beats(std::span<const Cd> echo,
                                         const SampledWaveform& waveform,
                                         double sample_rate_hz, BeatMethod method,
                                         int zero_pad_factor) {
  if (!is_swept(waveform.kind))
    throw ConfigError("estimate_beats: waveform must be triangle-LFM or V-LFM");
  auto up = dechirp(echo, waveform, ChirpSegment::kUp);
  auto down = dechirp(echo, waveform, ChirpSegment::kDown);
  if (method == BeatMethod::kRootMusic) {
    // The first delay-many samples of each segment hold zeros or a
    // cross-sweep chirp residual, not the beat tone. The FFT peak tolerates
    // that broadband leakage but it breaks the subspace model, so locate the
    // echo onset with a coarse FFT pass and trim it before running MUSIC.
    const double coarse_up =
        std::abs(fft_peak_frequency(up, sample_rate_hz, zero_pad_factor).frequency_hz);
    const double coarse_down =
        std::abs(fft_peak_frequency(down, sample_rate_hz, zero_pad_factor).frequency_hz);
    const double mu = waveform.bandwidth_hz / (waveform.duration_s / 2.0);
    const double delay_s = (coarse_up + coarse_down) / (2.0 * mu);
    const auto max_trim = static_cast<long long>(up.size()) - 64;
    const long long trim = std::clamp(
        std::llround(delay_s * sample_rate_hz), 0LL, std::max(0LL, max_trim));
    up.erase(up.begin(), up.begin() + trim);
    down.erase(down.begin(), down.begin() + trim);
  }
  const double f_up = single_tone_hz(up, sample_rate_hz, method, zero_pad_factor);
  const double f_down = single_tone_hz(down, sample_rate_hz, method, zero_pad_factor);
  return {std::abs(f_up), std::abs(f_down)};
}

double estimate_range(double beat_up_hz, double beat_down_hz,
                      double half_duration_s, double bandwidth_hz) {
  return half_duration_s * kSpeedOfLight / (8.0 * bandwidth_hz) *
         (beat_down_hz + beat_up_hz);
}

double estimate_velocity(double beat_up_hz, double beat_down_hz,
                         double wavelength_m) {
  return wavelength_m / 4.0 * (beat_down_hz - beat_up_hz);
}

double estimate_velocity_cw(std::span<const Cd> echo, double tone_hz,
                            double sample_rate_hz, double wavelength_m,
                            BeatMethod method, int zero_pad_factor) {
  std::vector<Cd> mixed(echo.size());
  const double dphi = -kTwoPi * tone_hz / sample_rate_hz;
  constexpr std::size_t kBlock = 1024;
  for (std::size_t b = 0; b < echo.size(); b += kBlock) {
    Cd rot = std::polar(1.0, dphi * static_cast<double>(b));
    const Cd step = std::polar(1.0, dphi);
    const std::size_t end = std::min(echo.size(), b + kBlock);
    for (std::size_t i = b; i < end; ++i) {
      mixed[i] = echo[i] * rot;
      rot *= step;
    }
  }
  const double doppler = single_tone_hz(mixed, sample_rate_hz, method, zero_pad_factor);
  return doppler * wavelength_m / 2.0;
}

DetectionThreshold np_threshold(double noise_power, double false_alarm_probability) {
  if (!(noise_power > 0.0)) throw ConfigError("np_threshold: noise power must be positive");
  if (!(false_alarm_probability > 0.0 && false_alarm_probability < 1.0))
    throw ConfigError("np_threshold: P_FA must lie in (0,1)");
  DetectionThreshold th;
  th.false_alarm_probability = false_alarm_probability;
  th.noise_power = noise_power;
  th.gamma = inv_q_function(1.0 - false_alarm_probability);
  th.threshold = noise_power * th.gamma;
  return th;
}

double accuracy_percent(double true_value, double estimate) {
  if (true_value == 0.0) throw ConfigError("accuracy_percent: true value must be nonzero");
  const double pct = 100.0 - std::abs(true_value - estimate) / std::abs(true_value) * 100.0;
  return std::clamp(pct, 0.0, 100.0);
}

RadarEstimate sense(const RadarScene& scene, const RadarConfig& config,
                    RngStream& rng) {
  const auto& wf = scene.waveform;
  const double fs = wf.sample_rate_hz;
  const auto echo = synthesize_echo(scene, fs, rng);

  RadarEstimate est;
  if (is_swept(wf.kind)) {
    const auto [f_up, f_down] =
        estimate_beats(echo, wf, fs, config.method, config.zero_pad_factor);
    est.beat_up_hz = f_up;
    est.beat_down_hz = f_down;
    est.range_m = estimate_range(f_up, f_down, wf.duration_s / 2.0, wf.bandwidth_hz);
    est.velocity_mps = estimate_velocity(f_up, f_down, scene.wavelength_m);
    est.range_accuracy_pct = accuracy_percent(scene.range_m, *est.range_m);
  } else if (wf.kind == WaveformKind::kSinusoid) {
    est.velocity_mps =
        estimate_velocity_cw(echo, wf.center_frequency_hz, fs, scene.wavelength_m,
                             config.method, config.zero_pad_factor);
  } else {
    throw ConfigError("sense: waveform must be triangle-LFM, V-LFM, or sinusoid");
  }
  if (scene.radial_velocity_mps != 0.0)
    est.velocity_accuracy_pct =
        accuracy_percent(scene.radial_velocity_mps, est.velocity_mps);

  double mean_power = 0.0;
  for (const auto& s : echo) mean_power += std::norm(s);
  mean_power /= static_cast<double>(echo.size());

  if (!std::isfinite(scene.snr_db)) {
    est.detected = mean_power > 0.0;
  } else {
    const double snr_linear = std::pow(10.0, scene.snr_db / 10.0);
    const double noise_power = wf.amplitude * wf.amplitude / snr_linear;
    const auto th = np_threshold(noise_power, config.false_alarm_probability);
    // Excess-power rule: the window-averaged power must exceed the noise floor
    // by the complementary quantile, i.e. (noise - measured) < threshold.
    est.detected = (noise_power - mean_power) < th.threshold;
  }
  return est;
}

}  // namespace isac
