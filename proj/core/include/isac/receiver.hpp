#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string_view>

#include "isac/rng.hpp"

namespace isac {

struct DetectionResult {
  int detected_index = 0;  // argmin of metrics, ties to the lowest index
  Eigen::VectorXd metrics;
  Eigen::VectorXcd weighted_input;
};

/// Diagonal power weights w_i = P_r(i) / max(P_r); the largest is exactly 1.
Eigen::VectorXd adaptive_weights(const Eigen::VectorXd& received_powers);

/// Coherent ML over antenna hypotheses: argmin_k ||y_w - sqrt(Es*PL)*H*e_k||^2.
DetectionResult ml_detect(const Eigen::VectorXcd& weighted_received,
                          const Eigen::MatrixXcd& channel, double symbol_energy,
                          double path_loss_linear);

struct PairwiseErrorProbability {
  double probability = 0.0;
  double std_err = 0.0;  // Monte Carlo standard error of the mean
};

/// Monte Carlo average over channel draws of
/// Q(sqrt(es_pl/2 * ||H (v - v_hat)||^2)); noise variance is normalized to 1,
/// so pass es_pl = Es*PL/N0 for an unnormalized-noise comparison.
PairwiseErrorProbability pairwise_ep_theoretical(
    const std::function<Eigen::MatrixXcd(RngStream&)>& channel_sampler,
    const Eigen::VectorXd& v, const Eigen::VectorXd& v_hat, double es_pl,
    int n_samples, RngStream& rng);

/// Hamming distance between equal-length bit strings.
int count_bit_errors(std::string_view true_bits, std::string_view detected_bits);

}  // namespace isac
