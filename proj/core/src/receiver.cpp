#include "isac/receiver.hpp"

#include <cmath>

#include "isac/errors.hpp"
#include "isac/numerics.hpp"

namespace isac {

Eigen::VectorXd adaptive_weights(const Eigen::VectorXd& received_powers) {
  if (received_powers.size() == 0)
    throw ConfigError("adaptive_weights: empty power vector");
  if ((received_powers.array() < 0.0).any())
    throw ConfigError("adaptive_weights: negative power");
  const double max_power = received_powers.maxCoeff();
  if (!(max_power > 0.0))
    throw ConfigError("adaptive_weights: all powers are zero");
  return received_powers / max_power;
}

DetectionResult ml_detect(const Eigen::VectorXcd& weighted_received,
                          const Eigen::MatrixXcd& channel, double symbol_energy,
                          double path_loss_linear) {
  if (channel.rows() != weighted_received.size())
    throw ConfigError("ml_detect: received length must match channel rows");
  const double gain = std::sqrt(symbol_energy * path_loss_linear);
  DetectionResult result;
  result.weighted_input = weighted_received;
  result.metrics.resize(channel.cols());
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < channel.cols(); ++k) {
    const double metric = (weighted_received - gain * channel.col(k)).squaredNorm();
    result.metrics(k) = metric;
    if (metric < best) {  // strict: ties break to the lowest index
      best = metric;
      result.detected_index = static_cast<int>(k);
    }
  }
  return result;
}

PairwiseErrorProbability pairwise_ep_theoretical(
    const std::function<Eigen::MatrixXcd(RngStream&)>& channel_sampler,
    const Eigen::VectorXd& v, const Eigen::VectorXd& v_hat, double es_pl,
    int n_samples, RngStream& rng) {
  if (v.size() != v_hat.size() || v == v_hat)
    throw ConfigError("pairwise_ep: v and v_hat must differ");
  if (n_samples < 1000)
    throw ConfigError("pairwise_ep: need at least 1000 samples");
  const Eigen::VectorXcd diff = (v - v_hat).cast<std::complex<double>>();
  double sum = 0.0, sum_sq = 0.0;
  for (int s = 0; s < n_samples; ++s) {
    const Eigen::MatrixXcd h = channel_sampler(rng);
    const double q = q_function(std::sqrt(es_pl / 2.0 * (h * diff).squaredNorm()));
    sum += q;
    sum_sq += q * q;
  }
  const double n = static_cast<double>(n_samples);
  PairwiseErrorProbability ep;
  ep.probability = sum / n;
  const double var = std::max(0.0, sum_sq / n - ep.probability * ep.probability);
  ep.std_err = std::sqrt(var / n);
  return ep;
}

int count_bit_errors(std::string_view true_bits, std::string_view detected_bits) {
  if (true_bits.size() != detected_bits.size())
    throw ConfigError("count_bit_errors: length mismatch");
  int errors = 0;
  for (std::size_t i = 0; i < true_bits.size(); ++i)
    errors += true_bits[i] != detected_bits[i];
  return errors;
}

}  // namespace isac
