#include "isac/channel.hpp"

#include <cmath>

#include "isac/errors.hpp"
#include "isac/numerics.hpp"

namespace isac {
namespace {

void check_geometry(const LinkGeometry& geom) {
  if (!(geom.altitude_m > 0.0)) throw ConfigError("geometry: altitude must be positive");
  if (!(geom.elevation_rad > 0.0 && geom.elevation_rad <= kPi / 2.0))
    throw ConfigError("geometry: elevation must lie in (0, pi/2]");
}

}  // namespace

double slant_distance(const LinkGeometry& geom) {
  check_geometry(geom);
  const double re = geom.earth_radius_m;
  const double h = geom.altitude_m;
  const double s = std::sin(geom.elevation_rad);
  return std::sqrt(re * re * s * s + h * h + 2.0 * h * re) - re * s;
}

double fspl_db(double distance_m, double carrier_hz) {
  if (!(distance_m > 0.0) || !(carrier_hz > 0.0))
    throw ConfigError("fspl: distance and carrier must be positive");
  const double carrier_ghz = carrier_hz / 1e9;
  return 32.45 + 20.0 * std::log10(carrier_ghz) + 20.0 * std::log10(distance_m);
}

double gaseous_loss_db(double zenith_attenuation_db, double elevation_rad) {
  if (!(elevation_rad > 0.0 && elevation_rad <= kPi / 2.0))
    throw ConfigError("gaseous_loss: elevation must lie in (0, pi/2]");
  return zenith_attenuation_db / std::sin(elevation_rad);
}

LinkBudget total_path_loss(const LinkGeometry& geom, double zenith_attenuation_db,
                           double scintillation_db, double shadow_sigma_db,
                           double clutter_db, RngStream& rng) {
  if (shadow_sigma_db < 0.0)
    throw ConfigError("total_path_loss: shadow sigma must be >= 0");
  LinkBudget budget;
  budget.fspl_db = fspl_db(slant_distance(geom), geom.carrier_hz);
  budget.shadow_db = shadow_sigma_db > 0.0 ? shadow_sigma_db * rng.normal() : 0.0;
  budget.clutter_db = clutter_db;
  budget.basic_db = budget.fspl_db + budget.shadow_db + budget.clutter_db;
  budget.gaseous_db = gaseous_loss_db(zenith_attenuation_db, geom.elevation_rad);
  budget.scintillation_db = scintillation_db;
  budget.total_db = budget.basic_db + budget.gaseous_db + budget.scintillation_db;
  budget.total_linear = std::pow(10.0, -budget.total_db / 10.0);
  return budget;
}

double doppler_shift(const LinkGeometry& geom) {
  check_geometry(geom);
  const double re = geom.earth_radius_m;
  return (geom.relative_velocity_mps / kSpeedOfLight) *
         (re / (re + geom.altitude_m)) * std::cos(geom.elevation_rad) *
         geom.carrier_hz;
}

ChannelRealization sample_channel_matrix(int n_tx, int n_rx, double rician_k,
                                         double nakagami_shape,
                                         double nakagami_spread,
                                         double rayleigh_scale, RngStream& rng) {
  if (n_tx < 1 || n_rx < 1) throw ConfigError("channel: antenna counts must be >= 1");
  if (rician_k < 0.0) throw ConfigError("channel: Rician K must be >= 0");
  ChannelRealization real;
  real.rician_k = rician_k;
  real.nakagami_shape = nakagami_shape;
  real.nakagami_spread = nakagami_spread;
  real.rayleigh_scale = rayleigh_scale;
  real.matrix.resize(n_rx, n_tx);
  const double los_gain = std::sqrt(rician_k / (rician_k + 1.0));
  const double nlos_gain = std::sqrt(1.0 / (rician_k + 1.0));
  for (int c = 0; c < n_tx; ++c) {
    for (int r = 0; r < n_rx; ++r) {
      const double los_mag = sample_nakagami(nakagami_shape, nakagami_spread, rng);
      const double nlos_mag = sample_rayleigh(rayleigh_scale, rng);
      const double los_phase = rng.uniform(0.0, kTwoPi);
      const double nlos_phase = rng.uniform(0.0, kTwoPi);
      real.matrix(r, c) = los_gain * std::polar(los_mag, los_phase) +
                          nlos_gain * std::polar(nlos_mag, nlos_phase);
    }
  }
  return real;
}

Eigen::VectorXcd apply_channel(const Eigen::MatrixXcd& channel,
                               const Eigen::VectorXd& selection,
                               double symbol_energy, double path_loss_linear,
                               double noise_variance, RngStream& rng) {
  if (channel.cols() != selection.size())
    throw ConfigError("apply_channel: selection length must match channel columns");
  if (noise_variance < 0.0)
    throw ConfigError("apply_channel: noise variance must be >= 0");
  const double gain = std::sqrt(symbol_energy * path_loss_linear);
  Eigen::VectorXcd received = gain * (channel * selection.cast<std::complex<double>>());
  if (noise_variance > 0.0)
    for (Eigen::Index i = 0; i < received.size(); ++i)
      received(i) += rng.complex_normal(noise_variance);
  return received;
}

double symbol_energy(const std::vector<Eigen::VectorXd>& symbol_set) {
  if (symbol_set.empty()) throw ConfigError("symbol_energy: empty symbol set");
  double acc = 0.0;
  for (const auto& v : symbol_set) acc += v.squaredNorm();
  return acc / static_cast<double>(symbol_set.size());
}

double instantaneous_snr(std::complex<double> received_entry,
                         std::complex<double> channel_times_selection_entry,
                         double symbol_energy, double path_loss_linear,
                         double noise_variance) {
  if (!(noise_variance > 0.0))
    throw ConfigError("instantaneous_snr: noise variance must be positive");
  const double gain = std::sqrt(symbol_energy * path_loss_linear);
  const std::complex<double> noise =
      received_entry - gain * channel_times_selection_entry;
  return std::norm(gain * channel_times_selection_entry + noise) / noise_variance;
}

std::complex<double> time_varying_response(std::complex<double> coefficient,
                                           double carrier_hz, double delay_s,
                                           double slot_index) {
  if (delay_s < 0.0) throw ConfigError("time_varying_response: negative delay");
  return coefficient * std::polar(1.0, -kTwoPi * carrier_hz * delay_s * slot_index);
}

}  // namespace isac
