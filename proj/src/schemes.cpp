#include "nnoma/schemes.hpp"

#include <cmath>
#include <string>

namespace nnoma {
namespace {

void check_near_user(int j) {
  if (j < 1 || j > kNumBs) invalid_argument("j", "near-user index must be 1, 2 or 3");
}

}  // namespace

SchemeConfig SchemeConfig::make(double beta0_sq, std::array<double, kNumUsers> rates, double rho) {
  SchemeConfig config;
  config.beta0_sq = beta0_sq;
  config.beta1_sq = 1.0 - beta0_sq;
  config.rates = rates;
  config.rho = rho;
  config.validate();
  return config;
}

void SchemeConfig::validate() const {
  if (!(beta0_sq > 0.0 && beta0_sq <= 1.0)) invalid_argument("beta0_sq", "must lie in (0, 1]");
  if (!(beta1_sq >= 0.0 && beta1_sq < 1.0)) invalid_argument("beta1_sq", "must lie in [0, 1)");
  if (std::abs(beta0_sq + beta1_sq - 1.0) > 1e-12) invalid_argument("beta1_sq", "beta0^2 + beta1^2 must equal 1");
  for (int j = 0; j < kNumUsers; ++j)
    if (!(rates[j] >= 0.0) || !std::isfinite(rates[j]))
      invalid_argument("rates", "r_" + std::to_string(j) + " must be a finite non-negative rate");
  if (!(rho > 0.0) || std::isnan(rho)) invalid_argument("rho", "transmit SNR must be positive");
  const double eta0 = std::exp2(rates[0]) - 1.0;
  const double margin = beta0_sq - beta1_sq * eta0;
  if (!(margin > 0.0))
    invalid_argument("beta0_sq", "beta0^2 - beta1^2 eta_0 = " + std::to_string(margin) +
                                     " must be > 0 (otherwise the near users are always in outage)");
}

std::array<double, kNumUsers> thresholds(const SchemeConfig& config) {
  std::array<double, kNumUsers> eta{};
  for (int j = 0; j < kNumUsers; ++j) eta[j] = std::exp2(config.rates[j]) - 1.0;
  return eta;
}

Complex rotated_gain(const ChannelRealization& ch, int bs, int user) {
  const Complex h0 = ch.gains[bs][0];
  const double mag = std::abs(h0);
  if (mag == 0.0) return ch.gains[bs][user];
  return ch.gains[bs][user] * std::conj(h0) / mag;
}

double sinr_cell_edge(const ChannelRealization& ch, const SchemeConfig& config, double interference) {
  double mag_sum = 0.0;
  double power_sum = 0.0;
  for (int i = 0; i < kNumBs; ++i) {
    const double m = std::abs(ch.gains[i][0]);
    mag_sum += m;
    power_sum += m * m;
  }
  return mag_sum * mag_sum * config.beta0_sq / (power_sum * config.beta1_sq + interference + 1.0 / config.rho);
}

double sinr_near_sic(const ChannelRealization& ch, int j, const SchemeConfig& config, double interference) {
  check_near_user(j);
  Complex coherent{};
  double power_sum = 0.0;
  for (int i = 0; i < kNumBs; ++i) {
    const Complex h = rotated_gain(ch, i, j);
    coherent += h;
    power_sum += std::norm(h);
  }
  return std::norm(coherent) * config.beta0_sq / (power_sum * config.beta1_sq + interference + 1.0 / config.rho);
}

double sinr_near_own(const ChannelRealization& ch, int j, const SchemeConfig& config, double interference) {
  check_near_user(j);
  double cross = 0.0;
  for (int i = 0; i < kNumBs; ++i)
    if (i != j - 1) cross += std::norm(ch.gains[i][j]);  // rotation does not change magnitudes
  return std::norm(ch.gains[j - 1][j]) * config.beta1_sq / (cross * config.beta1_sq + interference + 1.0 / config.rho);
}

TrialOutcome noma_trial(const ChannelRealization& ch, const SchemeConfig& config,
                        const std::array<double, kNumUsers>& interference) {
  const auto eta = thresholds(config);
  TrialOutcome out;
  out.sinr_cell_edge = sinr_cell_edge(ch, config, interference[0]);
  out.outage[0] = out.sinr_cell_edge < eta[0];
  for (int j = 1; j < kNumUsers; ++j) {
    out.sinr_sic[j - 1] = sinr_near_sic(ch, j, config, interference[j]);
    out.sinr_near_own[j - 1] = sinr_near_own(ch, j, config, interference[j]);
    out.outage[j] = out.sinr_sic[j - 1] < eta[0] || out.sinr_near_own[j - 1] < eta[j];
  }
  return out;
}

bool oma_trial(const ChannelRealization& ch, const SchemeConfig& config, double interference) {
  double power_sum = 0.0;
  for (int i = 0; i < kNumBs; ++i) power_sum += std::norm(ch.gains[i][0]);
  const double snr = 3.0 * power_sum / (interference + 1.0 / config.rho);
  return std::log2(1.0 + snr) < config.rates[0];
}

bool single_bs_noma_trial(const ChannelRealization& ch, const SchemeConfig& config, ServingMode mode, int serving_bs,
                          double interference) {
  int b = serving_bs - 1;
  if (mode == ServingMode::best_bs) {
    b = 0;
    for (int i = 1; i < kNumBs; ++i)
      if (std::norm(ch.gains[i][0]) > std::norm(ch.gains[b][0])) b = i;
  } else if (b < 0 || b >= kNumBs) {
    invalid_argument("serving_bs", "must be 1, 2 or 3");
  }
  const double served = std::norm(ch.gains[b][0]);
  double other = 0.0;
  for (int i = 0; i < kNumBs; ++i)
    if (i != b) other += std::norm(ch.gains[i][0]);
  const double sinr =
      3.0 * config.beta0_sq * served / (config.beta1_sq * served + other + interference + 1.0 / config.rho);
  return sinr < thresholds(config)[0];
}

}  // namespace nnoma
