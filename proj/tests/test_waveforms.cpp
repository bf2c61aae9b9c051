#include <doctest.h>

#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include "isac/constants.hpp"
#include "isac/errors.hpp"
#include "isac/numerics.hpp"
#include "isac/waveforms.hpp"
#include "oracles.hpp"

using namespace isac;

namespace {
// Scaled test waveform: same time-bandwidth structure as the default
// scenario, small enough for fast direct-sum oracles.
constexpr double kFs = 8e6;
constexpr double kBw = 2e6;
constexpr double kHalfT = 50e-6;
}  // namespace

TEST_SUITE("waveforms") {

TEST_CASE("up chirp sweeps -bw/2 to +bw/2") {
  auto w = gen_up_chirp(10e6, 50e-3, 28.8e6);
  REQUIRE(w.samples.size() ==
          static_cast<std::size_t>(std::llround(28.8e6 * 50e-3)));
  // Instantaneous frequency at mid-pulse is ~0 (phase-derivative oracle).
  const std::size_t mid = w.samples.size() / 2;
  const double f_mid =
      oracle::instantaneous_frequency(w.samples, mid, w.sample_rate_hz);
  CHECK(std::abs(f_mid) <= 1.0 / w.duration_s);
  // Start of sweep is at -bw/2.
  const double f0 = oracle::instantaneous_frequency(w.samples, 1, w.sample_rate_hz);
  CHECK(f0 == doctest::Approx(-5e6).epsilon(1e-3));
  for (std::size_t i = 0; i < w.samples.size(); i += 9973)
    CHECK(std::abs(w.samples[i]) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("zero-bandwidth chirp is a tone") {
  auto w = gen_up_chirp(0.0, 1e-3, 1e6, 2.0, 1000.0);
  const double f = oracle::instantaneous_frequency(w.samples, 10, 1e6);
  CHECK(f == doctest::Approx(1000.0).epsilon(1e-9));
  CHECK(std::abs(w.samples[0]) == doctest::Approx(2.0));
}

TEST_CASE("down chirp is the conjugate mirror") {
  auto up = gen_up_chirp(kBw, kHalfT, kFs);
  auto down = gen_down_chirp(kBw, kHalfT, kFs);
  for (std::size_t i = 0; i < up.samples.size(); ++i) {
    CHECK(down.samples[i].real() == doctest::Approx(up.samples[i].real()).epsilon(1e-12));
    CHECK(down.samples[i].imag() == doctest::Approx(-up.samples[i].imag()).epsilon(1e-12));
  }
  // The centered-difference oracle reads the frequency at t = dt, one chirp
  // step (mu/fs) below the +bw/2 sweep start.
  const double f0 = oracle::instantaneous_frequency(down.samples, 1, kFs);
  CHECK(f0 == doctest::Approx(kBw / 2.0 - (kBw / kHalfT) / kFs).epsilon(1e-6));
}

TEST_CASE("chirp aliasing rejected") {
  CHECK_THROWS_AS(gen_up_chirp(2e6, 1e-3, 1e6), ConfigError);
  CHECK_THROWS_AS(gen_up_chirp(1e6, -1.0, 2e6), ConfigError);
}

TEST_CASE("unwrapped phase second difference is constant") {
  auto w = gen_up_chirp(kBw, kHalfT, kFs);
  const double expected = kTwoPi * (kBw / kHalfT) / (kFs * kFs);
  for (std::size_t i = 1; i + 1 < w.samples.size(); i += 37) {
    const std::complex<double> dd = (w.samples[i + 1] * std::conj(w.samples[i])) *
                                    std::conj(w.samples[i] * std::conj(w.samples[i - 1]));
    CHECK(std::arg(dd) == doctest::Approx(expected).epsilon(1e-6));
  }
}

TEST_CASE("sinusoid generation") {
  auto dc = gen_sinusoid(0.0, 3.0, 1e-4, 1e6);
  for (const auto& s : dc.samples) {
    CHECK(s.real() == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(std::abs(s.imag()) < 1e-9);
  }

  auto tone = gen_sinusoid(1.5e5, 1.0, 1e-3, 2e6);
  const auto est = fft_peak_frequency(tone.samples, 2e6, 4);
  CHECK(std::abs(est.frequency_hz - 1.5e5) <= 2e6 / tone.samples.size());
  CHECK(tone.energy() == doctest::Approx(1e-3).epsilon(1.0 / (2e6 * 1e-3)));

  CHECK_THROWS_AS(gen_sinusoid(1.5e6, 1.0, 1e-3, 2e6), ConfigError);
}

TEST_CASE("triangle LFM structure") {
  auto tri = gen_triangle_lfm(kBw, kHalfT, kFs);
  CHECK(tri.duration_s == doctest::Approx(2.0 * kHalfT));
  CHECK(tri.energy() == doctest::Approx(1.0).epsilon(0.01));
  CHECK(tri.amplitude == doctest::Approx(std::sqrt(1.0 / (2.0 * kHalfT))));

  const double mu = kBw / kHalfT;
  const std::size_t half = tri.samples.size() / 2;
  // slope of the instantaneous frequency in each half
  const double f_a = oracle::instantaneous_frequency(tri.samples, half / 4, kFs);
  const double f_b = oracle::instantaneous_frequency(tri.samples, half / 2, kFs);
  const double dt = static_cast<double>(half / 2 - half / 4) / kFs;
  CHECK((f_b - f_a) / dt == doctest::Approx(mu).epsilon(1e-3));
  const double f_c = oracle::instantaneous_frequency(tri.samples, half + half / 4, kFs);
  const double f_d = oracle::instantaneous_frequency(tri.samples, half + half / 2, kFs);
  CHECK((f_d - f_c) / dt == doctest::Approx(-mu).epsilon(1e-3));

  // Phase continuity across the junction.
  const double jump = std::abs(std::arg(tri.samples[half] * std::conj(tri.samples[half - 1])));
  CHECK(jump < kTwoPi * kBw / kFs);
}

TEST_CASE("triangle first half equals up chirp") {
  auto tri = gen_triangle_lfm(kBw, kHalfT, kFs);
  auto up = gen_up_chirp(kBw, kHalfT, kFs, tri.amplitude);
  REQUIRE(tri.samples.size() == 2 * up.samples.size());
  for (std::size_t i = 0; i < up.samples.size(); ++i)
    CHECK(std::abs(tri.samples[i] - up.samples[i]) < 1e-12);
}

TEST_CASE("v-LFM is the conjugate triangle") {
  auto tri = gen_triangle_lfm(kBw, kHalfT, kFs);
  auto v = gen_v_lfm(kBw, kHalfT, kFs);
  CHECK(v.energy() == doctest::Approx(1.0).epsilon(0.01));
  for (std::size_t i = 0; i < tri.samples.size(); i += 7)
    CHECK(std::abs(v.samples[i] - std::conj(tri.samples[i])) < 1e-15);
  // Second half of the V pulse sweeps upward.
  const std::size_t half = v.samples.size() / 2;
  const double f_a = oracle::instantaneous_frequency(v.samples, half + half / 4, kFs);
  const double f_b = oracle::instantaneous_frequency(v.samples, half + half / 2, kFs);
  CHECK(f_b > f_a);
}

TEST_CASE("ambiguity peak, symmetry, oracle") {
  auto tri = gen_triangle_lfm(kBw, kHalfT, kFs);
  std::vector<double> taus, fds;
  for (int i = -10; i <= 10; ++i) {
    taus.push_back(i * kHalfT / 10.0);
    fds.push_back(i * kBw / 20.0);
  }
  const auto surf = ambiguity(tri, taus, fds);
  REQUIRE(surf.values.size() == taus.size() * fds.size());

  // Peak of 1 at the center cell.
  CHECK(surf.at(10, 10) == doctest::Approx(1.0).epsilon(1e-6));
  double max_val = 0.0;
  for (double v : surf.values) max_val = std::max(max_val, v);
  CHECK(max_val == doctest::Approx(surf.at(10, 10)).epsilon(1e-12));

  // Conjugate symmetry |chi(-tau,-fd)| = |chi(tau,fd)|.
  for (std::size_t d = 0; d < taus.size(); ++d)
    for (std::size_t f = 0; f < fds.size(); ++f)
      CHECK(std::abs(std::sqrt(surf.at(d, f)) -
                     std::sqrt(surf.at(taus.size() - 1 - d, fds.size() - 1 - f))) < 1e-9);

  // Zero-Doppler delay cut is even in tau.
  for (std::size_t d = 0; d < taus.size(); ++d)
    CHECK(surf.at(d, 10) == doctest::Approx(surf.at(taus.size() - 1 - d, 10)).epsilon(1e-9));

  // Spot-check against the direct-sum oracle.
  for (std::size_t d : {3u, 8u, 14u})
    for (std::size_t f : {1u, 10u, 17u})
      CHECK(surf.at(d, f) ==
            doctest::Approx(oracle::ambiguity_direct(tri.samples, kFs, taus[d], fds[f]))
                .epsilon(1e-9));
}

TEST_CASE("up-chirp ambiguity ridge") {
  const double duration = 2.0 * kHalfT;
  auto up = gen_up_chirp(kBw, duration, kFs);
  const double mu = kBw / duration;
  for (double frac : {-0.1, -0.05, 0.02, 0.08, 0.1}) {
    const double tau = frac * duration;
    const double tau_snap = std::llround(tau * kFs) / kFs;
    const double val =
        ambiguity(up, std::vector<double>{tau_snap}, std::vector<double>{mu * tau_snap})
            .at(0, 0);
    CHECK(val >= 0.8);
    // Discrete closed form for the on-ridge value: (1 - |tau|/T)^2.
    CHECK(val == doctest::Approx(std::pow(1.0 - std::abs(tau_snap) / duration, 2))
                     .epsilon(1e-6));
  }
}

TEST_CASE("ambiguity error handling") {
  auto tri = gen_triangle_lfm(kBw, kHalfT, kFs);
  CHECK_THROWS_AS(ambiguity(tri, std::vector<double>{}, std::vector<double>{0.0}),
                  ConfigError);
}

TEST_CASE("waveform csv export") {
  auto tone = gen_sinusoid(1000.0, 1.0, 4e-6, 1e6);
  std::ostringstream os;
  write_waveform_csv(tone, os);
  const std::string text = os.str();
  CHECK(text.rfind("t,re,im\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') ==
        static_cast<long>(tone.samples.size()) + 1);
}

}  // TEST_SUITE
