#include "isac/numerics.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "fft.hpp"
#include "isac/constants.hpp"
#include "isac/errors.hpp"

namespace isac {

double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // u1 in (0, 1] so the log is finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(kTwoPi * u2);
  has_spare_ = true;
  return r * std::cos(kTwoPi * u2);
}

std::complex<double> RngStream::complex_normal(double variance) {
  const double s = std::sqrt(variance * 0.5);
  return {s * normal(), s * normal()};
}

double q_function(double x) {
  if (!std::isfinite(x)) throw ConfigError("q_function: non-finite input");
  return 0.5 * std::erfc(x / std::sqrt(2.0));
}

namespace {

// Acklam's rational approximation to the standard normal quantile,
// used as the starting point for Newton refinement.
double norm_quantile_approx(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - plow) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(kTwoPi);
}

}  // namespace

double inv_q_function(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw ConfigError("inv_q_function: p must lie in (0,1)");
  // Q(x) = 1 - Phi(x), so Q^{-1}(p) = Phi^{-1}(1-p) = -Phi^{-1}(p).
  double x = -norm_quantile_approx(p);
  // Newton on Q(x) - p; Q' = -pdf.
  for (int i = 0; i < 3; ++i) {
    const double err = q_function(x) - p;
    const double deriv = normal_pdf(x);
    if (deriv == 0.0) break;
    x += err / deriv;
  }
  return x;
}

double sample_gamma(double shape, double scale, RngStream& rng) {
  if (!(shape > 0.0) || !(scale > 0.0))
    throw ConfigError("sample_gamma: shape and scale must be positive");
  if (shape < 1.0) {
    // Boost: G(a) = G(a+1) * U^{1/a}.
    const double u = 1.0 - rng.uniform();
    return sample_gamma(shape + 1.0, scale, rng) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = 1.0 - rng.uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
      return d * v * scale;
  }
}

double sample_nakagami(double shape, double spread, RngStream& rng) {
  if (!(shape > 0.0) || !(spread > 0.0))
    throw ConfigError("sample_nakagami: parameters must be positive");
  // |X|^2 ~ Gamma(m, omega/m) gives the exact Nakagami law.
  return std::sqrt(sample_gamma(shape, spread / shape, rng));
}

double sample_rayleigh(double scale, RngStream& rng) {
  if (!(scale > 0.0))
    throw ConfigError("sample_rayleigh: scale must be positive");
  const double u = 1.0 - rng.uniform();
  return scale * std::sqrt(-2.0 * std::log(u));
}

SpectralEstimate fft_peak_frequency(std::span<const std::complex<double>> samples,
                                    double sample_rate_hz, int zero_pad_factor) {
  if (samples.size() < 16)
    throw ConfigError("fft_peak_frequency: need at least 16 samples");
  if (zero_pad_factor < 1)
    throw ConfigError("fft_peak_frequency: zero_pad_factor must be >= 1");

  const std::size_t nfft = samples.size() * static_cast<std::size_t>(zero_pad_factor);
  const auto spectrum = detail::fft_forward(samples, nfft);

  std::size_t peak = 0;
  double peak_mag = 0.0;
  for (std::size_t k = 0; k < nfft; ++k) {
    const double m = std::abs(spectrum[k]);
    if (m > peak_mag) {
      peak_mag = m;
      peak = k;
    }
  }
  if (peak_mag == 0.0) throw EstimationError("fft_peak_frequency: all-zero input");

  // 3-point parabolic refinement on log-magnitude, circular neighbors.
  const double ml = std::abs(spectrum[(peak + nfft - 1) % nfft]);
  const double mr = std::abs(spectrum[(peak + 1) % nfft]);
  double delta = 0.0;
  if (ml > 0.0 && mr > 0.0) {
    const double a = std::log(ml), b = std::log(peak_mag), c = std::log(mr);
    const double denom = a - 2.0 * b + c;
    if (denom != 0.0) delta = std::clamp(0.5 * (a - c) / denom, -0.5, 0.5);
  }

  double bin = static_cast<double>(peak) + delta;
  if (bin > static_cast<double>(nfft) / 2.0) bin -= static_cast<double>(nfft);

  SpectralEstimate est;
  est.frequency_hz = bin * sample_rate_hz / static_cast<double>(nfft);
  const double n = static_cast<double>(samples.size());
  est.power = peak_mag * peak_mag / (n * n);
  est.method = SpectralEstimate::Method::kFftPeak;
  return est;
}

std::vector<SpectralEstimate> root_music_frequencies(
    std::span<const std::complex<double>> samples, int model_order,
    double sample_rate_hz) {
  using Cd = std::complex<double>;
  if (model_order < 1) throw ConfigError("root_music: model_order must be >= 1");
  const std::size_t n = samples.size();
  if (n < 4 * static_cast<std::size_t>(model_order))
    throw ConfigError("root_music: need at least 4*model_order samples");

  const int p = model_order;
  int m = std::max(2 * p + 1, 8);
  m = std::min<int>(m, static_cast<int>(n / 2));

  // Forward-averaged autocorrelation matrix.
  Eigen::MatrixXcd corr = Eigen::MatrixXcd::Zero(m, m);
  const std::size_t snapshots = n - static_cast<std::size_t>(m) + 1;
  for (std::size_t s = 0; s < snapshots; ++s) {
    Eigen::Map<const Eigen::VectorXcd> v(samples.data() + s, m);
    corr.noalias() += v * v.adjoint();
  }
  corr /= static_cast<double>(snapshots);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(corr);
  if (eig.info() != Eigen::Success)
    throw EstimationError("root_music: eigendecomposition failed");
  const auto& evals = eig.eigenvalues();  // ascending
  if (!(evals(m - 1) > 0.0) || !std::isfinite(evals(m - 1)))
    throw EstimationError("root_music: rank-deficient autocorrelation");

  // Noise projector and its diagonal sums -> polynomial coefficients.
  const Eigen::MatrixXcd noise = eig.eigenvectors().leftCols(m - p);
  const Eigen::MatrixXcd proj = noise * noise.adjoint();
  const int degree = 2 * (m - 1);
  Eigen::VectorXcd coeff(degree + 1);  // coeff[i] multiplies z^i
  for (int k = -(m - 1); k <= m - 1; ++k) {
    Cd s = 0.0;
    for (int r = 0; r < m; ++r) {
      const int c = r + k;
      if (c >= 0 && c < m) s += proj(r, c);
    }
    coeff(k + m - 1) = s;
  }
  while (coeff.size() > 1 && std::abs(coeff(coeff.size() - 1)) < 1e-300)
    coeff.conservativeResize(coeff.size() - 1);
  const int deg = static_cast<int>(coeff.size()) - 1;
  if (deg < 1) throw EstimationError("root_music: degenerate polynomial");

  // Roots via companion matrix.
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -coeff(i) / coeff(deg);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> roots(comp, false);
  if (roots.info() != Eigen::Success)
    throw EstimationError("root_music: root finding failed");

  struct Candidate {
    Cd z;
    double dist;
  };
  std::vector<Candidate> inside;
  for (int i = 0; i < deg; ++i) {
    const Cd z = roots.eigenvalues()(i);
    const double r = std::abs(z);
    if (r <= 1.0 && r > 1e-6) inside.push_back({z, 1.0 - r});
  }
  if (inside.size() < static_cast<std::size_t>(p))
    throw EstimationError("root_music: too few unit-circle roots");
  std::sort(inside.begin(), inside.end(),
            [](const Candidate& a, const Candidate& b) { return a.dist < b.dist; });

  std::vector<SpectralEstimate> out;
  out.reserve(p);
  for (int i = 0; i < p; ++i) {
    SpectralEstimate est;
    est.frequency_hz = std::arg(inside[i].z) / kTwoPi * sample_rate_hz;
    // Amplitude at the estimated frequency (Goertzel-style projection).
    Cd acc = 0.0;
    const double w = -kTwoPi * est.frequency_hz / sample_rate_hz;
    for (std::size_t t = 0; t < n; ++t)
      acc += samples[t] * std::polar(1.0, w * static_cast<double>(t));
    const double amp = std::abs(acc) / static_cast<double>(n);
    est.power = amp * amp;
    est.method = SpectralEstimate::Method::kRootMusic;
    out.push_back(est);
  }
  return out;
}

}  // namespace isac
