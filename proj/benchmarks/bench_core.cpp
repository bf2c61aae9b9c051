#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "isac/channel.hpp"
#include "isac/numerics.hpp"
#include "isac/radar.hpp"
#include "isac/receiver.hpp"
#include "isac/rng.hpp"
#include "isac/waveforms.hpp"

namespace {

void BM_SampleChannelMatrix(benchmark::State& state) {
  const int nt = static_cast<int>(state.range(0));
  isac::RngStream rng(1, 100);
  for (auto _ : state) {
    auto ch = isac::sample_channel_matrix(nt, 4, 10.0, 0.8, 1.0, 1.0, rng);
    benchmark::DoNotOptimize(ch.matrix.data());
  }
}
BENCHMARK(BM_SampleChannelMatrix)->Arg(4)->Arg(32);

void BM_MlDetect(benchmark::State& state) {
  const int nt = static_cast<int>(state.range(0));
  isac::RngStream rng(1, 101);
  const auto ch = isac::sample_channel_matrix(nt, 4, 10.0, 0.8, 1.0, 1.0, rng);
  Eigen::VectorXd sel = Eigen::VectorXd::Zero(nt);
  sel(0) = 1.0;
  const auto y = isac::apply_channel(ch.matrix, sel, 1.0, 1.0, 0.1, rng);
  for (auto _ : state) {
    auto det = isac::ml_detect(y, ch.matrix, 1.0, 1.0);
    benchmark::DoNotOptimize(det.detected_index);
  }
}
BENCHMARK(BM_MlDetect)->Arg(4)->Arg(32);

void BM_GenTriangleLfm(benchmark::State& state) {
  for (auto _ : state) {
    auto wf = isac::gen_triangle_lfm(2e6, 50e-6, 8e6);
    benchmark::DoNotOptimize(wf.samples.data());
  }
}
BENCHMARK(BM_GenTriangleLfm);

void BM_FftPeak(benchmark::State& state) {
  const auto wf = isac::gen_sinusoid(1.2345e5, 1.0, 1e-3, 8e6);
  for (auto _ : state) {
    auto est = isac::fft_peak_frequency(wf.samples, wf.sample_rate_hz, 4);
    benchmark::DoNotOptimize(est.frequency_hz);
  }
}
BENCHMARK(BM_FftPeak);

void BM_Sense(benchmark::State& state) {
  isac::RadarScene scene;
  scene.waveform = isac::gen_triangle_lfm(2e6, 50e-6, 8e6);
  scene.range_m = 1000.0;
  scene.radial_velocity_mps = 300.0;
  scene.snr_db = 10.0;
  scene.wavelength_m = 0.06;
  isac::RadarConfig rc;
  isac::RngStream rng(1, 102);
  for (auto _ : state) {
    auto est = isac::sense(scene, rc, rng);
    benchmark::DoNotOptimize(est.velocity_mps);
  }
}
BENCHMARK(BM_Sense);

}  // namespace

BENCHMARK_MAIN();
