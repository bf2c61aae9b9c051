#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "isac/constants.hpp"
#include "isac/rng.hpp"

namespace isac {

struct LinkGeometry {
  double altitude_m = 780e3;
  double elevation_rad = 0.0;  // (0, pi/2]
  double earth_radius_m = kEarthRadius;
  double carrier_hz = 5e9;
  double relative_velocity_mps = 0.0;
};

/// Deterministic + shadow-fading loss decomposition, all in dB except the
/// final linear power gain. total_db = basic_db + gaseous_db + scintillation_db
/// and basic_db = fspl_db + shadow_db + clutter_db hold exactly.
struct LinkBudget {
  double fspl_db = 0.0;
  double shadow_db = 0.0;
  double clutter_db = 0.0;
  double basic_db = 0.0;
  double gaseous_db = 0.0;
  double scintillation_db = 0.0;
  double total_db = 0.0;
  double total_linear = 1.0;  // 10^(-total_db/10)
};

struct ChannelRealization {
  Eigen::MatrixXcd matrix;  // N_r x N_t
  double rician_k = 0.0;    // linear
  double nakagami_shape = 0.0;
  double nakagami_spread = 0.0;
  double rayleigh_scale = 0.0;
  double doppler_hz = 0.0;
  double delay_s = 0.0;
};

/// Slant distance between satellite and ground station.
double slant_distance(const LinkGeometry& geom);

/// Free-space path loss; carrier in Hz (converted to GHz internally), d in m.
double fspl_db(double distance_m, double carrier_hz);

/// Zenith attenuation scaled by the elevation path length.
double gaseous_loss_db(double zenith_attenuation_db, double elevation_rad);

/// Assembles the budget; shadow fading drawn fresh as N(0, sigma^2) dB.
LinkBudget total_path_loss(const LinkGeometry& geom, double zenith_attenuation_db,
                           double scintillation_db, double shadow_sigma_db,
                           double clutter_db, RngStream& rng);

/// Downlink Doppler shift.
double doppler_shift(const LinkGeometry& geom);

/// Shadowed-Rician matrix: each entry mixes a Nakagami line-of-sight magnitude
/// and a Rayleigh scattered magnitude, each with an independent uniform phase.
ChannelRealization sample_channel_matrix(int n_tx, int n_rx, double rician_k,
                                         double nakagami_shape,
                                         double nakagami_spread,
                                         double rayleigh_scale, RngStream& rng);

/// y = sqrt(Es*PL) * H * selection + n, n ~ CN(0, noise_variance I).
Eigen::VectorXcd apply_channel(const Eigen::MatrixXcd& channel,
                               const Eigen::VectorXd& selection,
                               double symbol_energy, double path_loss_linear,
                               double noise_variance, RngStream& rng);

/// (1/N) * sum |v_k|^2 over the symbol set.
double symbol_energy(const std::vector<Eigen::VectorXd>& symbol_set);

/// Per-antenna instantaneous SNR of a received entry.
double instantaneous_snr(std::complex<double> received_entry,
                         std::complex<double> channel_times_selection_entry,
                         double symbol_energy, double path_loss_linear,
                         double noise_variance);

/// Doppler-induced phase rotation of a channel coefficient at a time slot.
std::complex<double> time_varying_response(std::complex<double> coefficient,
                                           double carrier_hz, double delay_s,
                                           double slot_index);

}  // namespace isac
