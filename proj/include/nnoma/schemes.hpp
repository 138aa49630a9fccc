#pragma once

// Per-trial SINRs and outage decisions. All SINRs are normalised by the
// per-BS transmit power P_s: noise enters as 1/rho and interference terms
// are already scaled by rho_I.

#include <array>

#include "nnoma/channel.hpp"
#include "nnoma/common.hpp"

namespace nnoma {

struct SchemeConfig {
  double beta0_sq = 0.0;  // power fraction for the cell-edge message
  double beta1_sq = 0.0;  // power fraction for each near user's message
  std::array<double, kNumUsers> rates{};  // target rates r_j, bits per channel use
  double rho = 0.0;       // transmit SNR P_s / sigma^2

  /// beta1_sq = 1 - beta0_sq; validated.
  static SchemeConfig make(double beta0_sq, std::array<double, kNumUsers> rates, double rho);

  /// Enforces beta0^2 + beta1^2 = 1, r_j >= 0, rho > 0 and beta0^2 - beta1^2 eta_0 > 0.
  void validate() const;
};

/// eta_j = 2^{r_j} - 1.
std::array<double, kNumUsers> thresholds(const SchemeConfig& config);

struct TrialOutcome {
  double sinr_cell_edge = 0.0;
  std::array<double, kNumBs> sinr_sic{};       // SINR_{j,0}, j = 1..3
  std::array<double, kNumBs> sinr_near_own{};  // SINR_j
  std::array<bool, kNumUsers> outage{};
};

/// Phase-aligned gain seen by near user j through BS i: h_ij e^{-i arg h_i0}.
Complex rotated_gain(const ChannelRealization& ch, int bs, int user);

/// Cell-edge SINR under distributed analog beamforming (coherent magnitude sum).
double sinr_cell_edge(const ChannelRealization& ch, const SchemeConfig& config, double interference = 0.0);

/// Near user j (1..3) decoding the cell-edge message before SIC.
double sinr_near_sic(const ChannelRealization& ch, int j, const SchemeConfig& config, double interference = 0.0);

/// Near user j (1..3) decoding its own message after SIC.
double sinr_near_own(const ChannelRealization& ch, int j, const SchemeConfig& config, double interference = 0.0);

/// Outage is SINR < eta (strict); ties succeed. A near user is in outage when
/// either the SIC stage or its own decoding fails.
TrialOutcome noma_trial(const ChannelRealization& ch, const SchemeConfig& config,
                        const std::array<double, kNumUsers>& interference = {});

/// Orthogonal benchmark: cell-edge user alone, digital beamforming from all
/// three BSs with total power 3 P_s. Returns true on outage.
bool oma_trial(const ChannelRealization& ch, const SchemeConfig& config, double interference = 0.0);

enum class ServingMode { random_bs, best_bs };

/// Single-BS NOMA benchmarks. The serving BS spends 3 beta0^2 P_s on the cell
/// edge user; the other two BSs transmit at P_s to their own users and appear
/// as interference. `serving_bs` (1..3) is used in random_bs mode; best_bs picks
/// argmax |h_i0|^2. Returns true on outage.
bool single_bs_noma_trial(const ChannelRealization& ch, const SchemeConfig& config, ServingMode mode,
                          int serving_bs = 1, double interference = 0.0);

}  // namespace nnoma
