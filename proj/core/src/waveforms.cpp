#include "isac/waveforms.hpp"

#include <cmath>
#include <ostream>

#include "isac/constants.hpp"
#include "isac/errors.hpp"

namespace isac {
namespace {

using Cd = std::complex<double>;

// Quadratic chirp phase: 2*pi*((center + sign*(-bw/2))*t + sign*mu*t^2/2).
// Samples are generated from the exact phase every block to keep rounding
// from accumulating, with a two-phasor recurrence in between.
void fill_chirp(std::vector<Cd>& out, double bandwidth_hz, double duration_s,
                double sample_rate_hz, double amplitude, double center_hz,
                double sweep_sign) {
  const std::size_t n = out.size();
  const double mu = bandwidth_hz / duration_s;  // chirp rate
  const double dt = 1.0 / sample_rate_hz;
  const double f_start = center_hz - sweep_sign * bandwidth_hz / 2.0;
  // Rounding in the two-phasor recurrence compounds ~quadratically with the
  // block length; 64 keeps the modulus constant to ~1e-13 between the exact
  // phase resyncs while still amortizing the polar() calls.
  constexpr std::size_t kBlock = 64;
  for (std::size_t b = 0; b < n; b += kBlock) {
    const double t0 = static_cast<double>(b) * dt;
    double phase = kTwoPi * (f_start * t0 + sweep_sign * 0.5 * mu * t0 * t0);
    Cd z = std::polar(amplitude, phase);
    // phase increment and its per-sample second difference
    double dphi = kTwoPi * (f_start * dt + sweep_sign * mu * dt * (t0 + 0.5 * dt));
    const double ddphi = kTwoPi * sweep_sign * mu * dt * dt;
    Cd w = std::polar(1.0, dphi);
    const Cd dw = std::polar(1.0, ddphi);
    const std::size_t end = std::min(n, b + kBlock);
    for (std::size_t i = b; i < end; ++i) {
      out[i] = z;
      z *= w;
      w *= dw;
    }
  }
}

void check_sampling(double bandwidth_hz, double duration_s, double sample_rate_hz) {
  if (!(duration_s > 0.0)) throw ConfigError("chirp: duration must be positive");
  if (!(sample_rate_hz > 0.0)) throw ConfigError("chirp: sample rate must be positive");
  if (bandwidth_hz >= sample_rate_hz)
    throw ConfigError("chirp: bandwidth >= sample rate would alias");
  if (bandwidth_hz < 0.0) throw ConfigError("chirp: negative bandwidth");
}

}  // namespace

std::string to_string(WaveformKind kind) {
  switch (kind) {
    case WaveformKind::kUpChirp: return "up_chirp";
    case WaveformKind::kDownChirp: return "down_chirp";
    case WaveformKind::kTriangleLfm: return "triangle_lfm";
    case WaveformKind::kVLfm: return "v_lfm";
    case WaveformKind::kSinusoid: return "sinusoid";
  }
  return "unknown";
}

double SampledWaveform::energy() const {
  double e = 0.0;
  for (const auto& s : samples) e += std::norm(s);
  return e / sample_rate_hz;
}

SampledWaveform gen_up_chirp(double bandwidth_hz, double duration_s,
                             double sample_rate_hz, double amplitude,
                             double center_hz) {
  check_sampling(bandwidth_hz, duration_s, sample_rate_hz);
  SampledWaveform w;
  w.sample_rate_hz = sample_rate_hz;
  w.duration_s = duration_s;
  w.kind = WaveformKind::kUpChirp;
  w.center_frequency_hz = center_hz;
  w.bandwidth_hz = bandwidth_hz;
  w.amplitude = amplitude;
  w.samples.resize(static_cast<std::size_t>(std::llround(sample_rate_hz * duration_s)));
  fill_chirp(w.samples, bandwidth_hz, duration_s, sample_rate_hz, amplitude,
             center_hz, +1.0);
  return w;
}

SampledWaveform gen_down_chirp(double bandwidth_hz, double duration_s,
                               double sample_rate_hz, double amplitude,
                               double center_hz) {
  check_sampling(bandwidth_hz, duration_s, sample_rate_hz);
  SampledWaveform w = gen_up_chirp(bandwidth_hz, duration_s, sample_rate_hz,
                                   amplitude, center_hz);
  w.kind = WaveformKind::kDownChirp;
  fill_chirp(w.samples, bandwidth_hz, duration_s, sample_rate_hz, amplitude,
             center_hz, -1.0);
  return w;
}

SampledWaveform gen_sinusoid(double frequency_hz, double amplitude,
                             double duration_s, double sample_rate_hz) {
  if (!(duration_s > 0.0) || !(sample_rate_hz > 0.0))
    throw ConfigError("sinusoid: duration and sample rate must be positive");
  if (std::abs(frequency_hz) >= sample_rate_hz / 2.0)
    throw ConfigError("sinusoid: |f| >= fs/2 would alias");
  SampledWaveform w;
  w.sample_rate_hz = sample_rate_hz;
  w.duration_s = duration_s;
  w.kind = WaveformKind::kSinusoid;
  w.center_frequency_hz = frequency_hz;
  w.bandwidth_hz = 0.0;
  w.amplitude = amplitude;
  const std::size_t n =
      static_cast<std::size_t>(std::llround(sample_rate_hz * duration_s));
  w.samples.resize(n);
  const double dphi = kTwoPi * frequency_hz / sample_rate_hz;
  constexpr std::size_t kBlock = 1024;
  for (std::size_t b = 0; b < n; b += kBlock) {
    Cd z = std::polar(amplitude, dphi * static_cast<double>(b));
    const Cd step = std::polar(1.0, dphi);
    const std::size_t end = std::min(n, b + kBlock);
    for (std::size_t i = b; i < end; ++i) {
      w.samples[i] = z;
      z *= step;
    }
  }
  return w;
}

SampledWaveform gen_triangle_lfm(double bandwidth_hz, double half_duration_s,
                                 double sample_rate_hz) {
  check_sampling(bandwidth_hz, half_duration_s, sample_rate_hz);
  const double amp = std::sqrt(1.0 / (2.0 * half_duration_s));
  SampledWaveform up =
      gen_up_chirp(bandwidth_hz, half_duration_s, sample_rate_hz, amp);
  SampledWaveform down =
      gen_down_chirp(bandwidth_hz, half_duration_s, sample_rate_hz, amp);
  SampledWaveform w;
  w.sample_rate_hz = sample_rate_hz;
  w.duration_s = 2.0 * half_duration_s;
  w.kind = WaveformKind::kTriangleLfm;
  w.center_frequency_hz = 0.0;
  w.bandwidth_hz = bandwidth_hz;
  w.amplitude = amp;
  w.samples = std::move(up.samples);
  w.samples.insert(w.samples.end(), down.samples.begin(), down.samples.end());
  return w;
}

SampledWaveform gen_v_lfm(double bandwidth_hz, double half_duration_s,
                          double sample_rate_hz) {
  SampledWaveform w = gen_triangle_lfm(bandwidth_hz, half_duration_s, sample_rate_hz);
  w.kind = WaveformKind::kVLfm;
  for (auto& s : w.samples) s = std::conj(s);
  return w;
}

AmbiguitySurface ambiguity(const SampledWaveform& waveform,
                           std::span<const double> delay_grid_s,
                           std::span<const double> doppler_grid_hz) {
  if (delay_grid_s.empty() || doppler_grid_hz.empty())
    throw ConfigError("ambiguity: empty grid");
  const auto& x = waveform.samples;
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
  const double fs = waveform.sample_rate_hz;

  double energy_sum = 0.0;  // sum |x|^2 (the 1/fs of integral and norm cancel)
  for (const auto& s : x) energy_sum += std::norm(s);
  if (energy_sum == 0.0) throw ConfigError("ambiguity: zero-energy waveform");

  AmbiguitySurface surf;
  surf.delays_s.assign(delay_grid_s.begin(), delay_grid_s.end());
  surf.dopplers_hz.assign(doppler_grid_hz.begin(), doppler_grid_hz.end());
  surf.values.resize(delay_grid_s.size() * doppler_grid_hz.size());

  std::vector<Cd> lag_product(x.size());
  for (std::size_t di = 0; di < delay_grid_s.size(); ++di) {
    const std::ptrdiff_t lag =
        static_cast<std::ptrdiff_t>(std::llround(delay_grid_s[di] * fs));
    const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, lag);
    const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n, n + lag);
    for (std::ptrdiff_t i = lo; i < hi; ++i)
      lag_product[i] = x[i] * std::conj(x[i - lag]);
    for (std::size_t fi = 0; fi < doppler_grid_hz.size(); ++fi) {
      const double dphi = -kTwoPi * doppler_grid_hz[fi] / fs;
      Cd acc = 0.0;
      Cd rot = std::polar(1.0, dphi * static_cast<double>(lo));
      const Cd step = std::polar(1.0, dphi);
      for (std::ptrdiff_t i = lo; i < hi; ++i) {
        acc += lag_product[i] * rot;
        rot *= step;
      }
      const double chi = std::abs(acc) / energy_sum;
      surf.values[di * doppler_grid_hz.size() + fi] = chi * chi;
    }
  }
  return surf;
}

void write_waveform_csv(const SampledWaveform& waveform, std::ostream& os) {
  os << "t,re,im\n";
  char buf[96];
  for (std::size_t i = 0; i < waveform.samples.size(); ++i) {
    const double t = static_cast<double>(i) / waveform.sample_rate_hz;
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", t,
                  waveform.samples[i].real(), waveform.samples[i].imag());
    os << buf;
  }
}

}  // namespace isac
