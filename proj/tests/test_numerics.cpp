#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "isac/errors.hpp"
#include "isac/numerics.hpp"
#include "isac/rng.hpp"
#include "isac/waveforms.hpp"
#include "oracles.hpp"

using namespace isac;

TEST_SUITE("numerics") {

TEST_CASE("q_function basics") {
  CHECK(q_function(0.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(q_function(10.0) < 1e-20);
  // Simpson quadrature of the normal tail as an independent oracle.
  CHECK(std::abs(q_function(1.2816) - oracle::q_simpson(1.2816)) < 1e-10);
  CHECK(std::abs(q_function(1.2816) - 0.1) < 1e-4);
  CHECK_THROWS_AS(q_function(std::nan("")), ConfigError);
}

TEST_CASE("q_function monotone and symmetric on a grid") {
  double prev = 1.0;
  for (double x = -6.0; x <= 6.0; x += 0.25) {
    const double q = q_function(x);
    CHECK(q < prev);
    CHECK(q + q_function(-x) == doctest::Approx(1.0).epsilon(1e-12));
    prev = q;
  }
}

TEST_CASE("inv_q_function") {
  CHECK(inv_q_function(0.5) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(inv_q_function(q_function(2.0)) == doctest::Approx(2.0).epsilon(1e-9));
  // Bisection oracle for Q^{-1}(0.999).
  const double bis = oracle::bisect_decreasing(q_function, 0.999, -10.0, 10.0);
  CHECK(std::abs(inv_q_function(0.999) - bis) < 1e-9);
  CHECK(inv_q_function(0.999) == doctest::Approx(-3.0902).epsilon(1e-3));
  CHECK_THROWS_AS(inv_q_function(0.0), ConfigError);
  CHECK_THROWS_AS(inv_q_function(1.0), ConfigError);
}

TEST_CASE("inv_q round trip on [-6, 6]") {
  for (double x = -6.0; x <= 6.0; x += 0.1)
    CHECK(std::abs(inv_q_function(q_function(x)) - x) < 1e-8);
}

TEST_CASE("q round trip on p grid") {
  for (double p = 1e-6; p < 1.0; p += 0.01)
    CHECK(std::abs(q_function(inv_q_function(p)) - p) < 1e-9);
}

TEST_CASE("nakagami moments and support") {
  RngStream rng(7, 1);
  double sum_sq = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double x = sample_nakagami(0.8, 1.0, rng);
    CHECK(x >= 0.0);
    sum_sq += x * x;
  }
  CHECK(sum_sq / n == doctest::Approx(1.0).epsilon(0.02));

  RngStream rng2(7, 2);
  for (int i = 0; i < 100; ++i) CHECK(sample_nakagami(5.0, 1.0, rng2) >= 0.0);
  CHECK_THROWS_AS(sample_nakagami(-1.0, 1.0, rng2), ConfigError);
}

TEST_CASE("nakagami m=1 equals rayleigh (KS)") {
  RngStream rng_a(11, 1), rng_b(11, 2);
  const int n = 100000;
  std::vector<double> a(n), b(n);
  // Nakagami(1, 2) should match Rayleigh with sigma = sqrt(2/2) = 1.
  for (int i = 0; i < n; ++i) a[i] = sample_nakagami(1.0, 2.0, rng_a);
  for (int i = 0; i < n; ++i) b[i] = sample_rayleigh(1.0, rng_b);
  double mean_sq = 0.0;
  for (double x : a) mean_sq += x * x;
  CHECK(mean_sq / n == doctest::Approx(2.0).epsilon(0.03));
  CHECK(oracle::ks_two_sample(a, b) < 0.01);
}

TEST_CASE("rayleigh moments") {
  RngStream rng(13, 1);
  const int n = 100000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = sample_rayleigh(1.0, rng);
    CHECK(x >= 0.0);
    sum += x;
    sum_sq += x * x;
  }
  CHECK(sum / n == doctest::Approx(std::sqrt(std::numbers::pi / 2.0)).epsilon(0.01));
  CHECK(sum_sq / n == doctest::Approx(2.0).epsilon(0.015));
  CHECK_THROWS_AS(sample_rayleigh(0.0, rng), ConfigError);
}

TEST_CASE("rng streams are reproducible and distinct") {
  RngStream a(42, 5), b(42, 5), c(42, 6);
  bool all_equal_c = true;
  for (int i = 0; i < 1000; ++i) {
    const double ua = a.uniform();
    CHECK(ua == b.uniform());
    if (ua != c.uniform()) all_equal_c = false;
  }
  CHECK_FALSE(all_equal_c);

  RngStream n1(9, 1), n2(9, 1);
  for (int i = 0; i < 100; ++i) CHECK(n1.normal() == n2.normal());
}

TEST_CASE("rng normal moments") {
  RngStream rng(3, 4);
  const int n = 200000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    sum += x;
    sum_sq += x * x;
  }
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(sum_sq / n == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("fft_peak_frequency on synthesized tones") {
  const double fs = 28.8e6;
  auto tone = gen_sinusoid(1000.0, 1.0, 256.0 / fs, fs);
  const auto est = fft_peak_frequency(tone.samples, fs, 16);
  CHECK(std::abs(est.frequency_hz - 1000.0) <= fs / (256.0 * 16.0));
  CHECK(est.method == SpectralEstimate::Method::kFftPeak);

  std::vector<std::complex<double>> dc(64, {1.0, 0.0});
  CHECK(fft_peak_frequency(dc, fs, 1).frequency_hz == doctest::Approx(0.0));

  auto quarter = gen_sinusoid(fs / 4.0, 1.0, 1024.0 / fs, fs);
  const auto est_q = fft_peak_frequency(quarter.samples, fs, 4);
  CHECK(std::abs(est_q.frequency_hz - fs / 4.0) <= fs / (1024.0 * 4.0));
}

TEST_CASE("fft_peak_frequency errors and range") {
  std::vector<std::complex<double>> zeros(64, {0.0, 0.0});
  CHECK_THROWS_AS(fft_peak_frequency(zeros, 1e6, 1), EstimationError);
  std::vector<std::complex<double>> tiny(8, {1.0, 0.0});
  CHECK_THROWS_AS(fft_peak_frequency(tiny, 1e6, 1), ConfigError);

  // Negative frequencies are reported signed within (-fs/2, fs/2].
  auto neg = gen_sinusoid(-2.5e5, 1.0, 1e-3, 2e6);
  const auto est = fft_peak_frequency(neg.samples, 2e6, 2);
  CHECK(est.frequency_hz == doctest::Approx(-2.5e5).epsilon(1e-3));
  CHECK(std::abs(est.frequency_hz) <= 1e6);
}

TEST_CASE("root_music single and double tones") {
  const double fs = 28.8e6;
  auto tone = gen_sinusoid(2.417e6, 1.0, 4096.0 / fs, fs);
  const auto est = root_music_frequencies(tone.samples, 1, fs);
  REQUIRE(est.size() == 1);
  CHECK(std::abs(est[0].frequency_hz - 2.417e6) < 1.0);
  CHECK(est[0].method == SpectralEstimate::Method::kRootMusic);

  auto a = gen_sinusoid(1e6, 1.0, 4096.0 / fs, fs);
  auto b = gen_sinusoid(-1e6, 1.0, 4096.0 / fs, fs);
  std::vector<std::complex<double>> two(a.samples.size());
  for (std::size_t i = 0; i < two.size(); ++i)
    two[i] = a.samples[i] + b.samples[i];
  auto pair = root_music_frequencies(two, 2, fs);
  REQUIRE(pair.size() == 2);
  std::sort(pair.begin(), pair.end(), [](const auto& x, const auto& y) {
    return x.frequency_hz < y.frequency_hz;
  });
  CHECK(std::abs(pair[0].frequency_hz + 1e6) < 10.0);
  CHECK(std::abs(pair[1].frequency_hz - 1e6) < 10.0);
}

TEST_CASE("root_music noisy tone at 0 dB") {
  const double fs = 1e6;
  auto tone = gen_sinusoid(1000.0, 1.0, 4096.0 / fs, fs);
  RngStream rng(21, 1);
  std::vector<std::complex<double>> noisy = tone.samples;
  for (auto& s : noisy) s += rng.complex_normal(1.0);  // SNR = 0 dB
  const auto est = root_music_frequencies(noisy, 1, fs);
  CHECK(std::abs(est[0].frequency_hz - 1000.0) < 100.0);
}

TEST_CASE("root_music errors") {
  std::vector<std::complex<double>> zeros(64, {0.0, 0.0});
  CHECK_THROWS_AS(root_music_frequencies(zeros, 1, 1e6), EstimationError);
  std::vector<std::complex<double>> tiny(3, {1.0, 0.0});
  CHECK_THROWS_AS(root_music_frequencies(tiny, 1, 1e6), ConfigError);
  CHECK_THROWS_AS(root_music_frequencies(zeros, 0, 1e6), ConfigError);
}

TEST_CASE("fft and root-music agree on random noiseless tones") {
  const double fs = 1e6;
  RngStream rng(31, 1);
  const std::size_t n = 1024;
  for (int trial = 0; trial < 100; ++trial) {
    const double f = rng.uniform(-0.4 * fs, 0.4 * fs);
    auto tone = gen_sinusoid(f, 1.0, static_cast<double>(n) / fs, fs);
    const double f_fft = fft_peak_frequency(tone.samples, fs, 4).frequency_hz;
    const double f_music = root_music_frequencies(tone.samples, 1, fs)[0].frequency_hz;
    CHECK(std::abs(f_fft - f_music) <= fs / static_cast<double>(n));
    CHECK(std::abs(f_fft - f) <= fs / static_cast<double>(n));
  }
}

}  // TEST_SUITE
