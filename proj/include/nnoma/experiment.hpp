#pragma once

// Configuration-driven Monte Carlo sweeps with analytic overlays.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nnoma/analytics.hpp"
#include "nnoma/common.hpp"
#include "nnoma/geometry.hpp"
#include "nnoma/interference.hpp"
#include "nnoma/schemes.hpp"

namespace nnoma {

enum class Scheme : std::uint8_t { n_noma = 0, oma = 1, noma_no_comp = 2, noma_best_bs = 3 };

std::string_view scheme_name(Scheme scheme);
std::optional<Scheme> parse_scheme(std::string_view name);

/// Users whose outage the scheme reports: all four for N-NOMA, user 0 otherwise.
std::vector<int> served_users(Scheme scheme);

struct InterferenceSettings {
  double power_dbm = 0.0;        // P_I per interferer
  double intensity_per_m2 = 0.0;  // lambda_I
  double window_m = kDefaultInterferenceWindow;
  bool share_positions = false;  // one point set per trial instead of one per user
};

struct ExperimentConfig {
  std::string name = "custom";
  double side_length_m = 400.0;
  double big_radius_m = 250.0;
  std::array<double, kNumBs> near_radii_m{10.0, 10.0, 10.0};
  double path_loss_exponent = 3.0;
  double beta0_sq = 0.8;
  std::array<double, kNumUsers> rates_bpcu{2.0, 1.0, 1.0, 1.0};
  std::vector<double> power_dbm_list;
  double noise_psd_dbm_hz = -170.0;
  double bandwidth_hz = 1e7;
  std::optional<InterferenceSettings> interference;
  std::vector<Scheme> schemes{Scheme::n_noma, Scheme::oma};
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  int quadrature_nodes = kDefaultChebyshevNodes;

  /// Throws Error(config_rejected) naming the first violated field.
  void validate() const;

  NetworkLayout layout() const;
  /// Noise power sigma^2 in mW.
  double noise_power_mw() const;
  /// rho = P_s / sigma^2 for a per-BS power in dBm.
  double transmit_snr(double power_dbm) const;
  SchemeConfig scheme_config(double power_dbm) const;
  /// Interference normalised to the serving power P_s at this sweep point.
  std::optional<InterferenceConfig> interference_config(double power_dbm) const;
};

double dbm_to_mw(double dbm);

struct OutageEstimate {
  double p_hat = 0.0;
  std::uint64_t trials = 0;
  double ci_half_width = 0.0;  // 95% normal approximation
  std::optional<AnalyticOutage> analytic;

  static OutageEstimate from_counts(std::uint64_t outages, std::uint64_t trials);
};

struct OutageRow {
  double power_dbm = 0.0;
  Scheme scheme = Scheme::n_noma;
  int user_index = 0;
  OutageEstimate estimate;
  double sum_rate_bpcu = 0.0;  // scheme-level outage sum rate at this power
  std::string regime_note;
};

using OutageTable = std::vector<OutageRow>;

struct SumRateRow {
  double power_dbm = 0.0;
  Scheme scheme = Scheme::n_noma;
  std::vector<double> user_outage;  // indexed like served_users(scheme)
  double outage_sum_rate = 0.0;
  /// (1 - P0_oma) r0 - (1 - P0_nnoma) r0; set on N-NOMA rows when OMA ran at the same power.
  std::optional<double> rate_loss_bpcu;
};

/// sum_j (1 - P_j) r_j over the users the scheme serves.
double outage_sum_rate(Scheme scheme, const std::vector<double>& user_outage,
                       const std::array<double, kNumUsers>& rates);

/// One block of `trials` independent trials per (scheme, power). Trial t at power
/// index p for scheme s draws from stream (seed, s, p, t), so estimates do not
/// depend on the thread count or on which other schemes are configured.
OutageTable run_outage_sweep(const ExperimentConfig& config);

std::vector<SumRateRow> summarize_sum_rates(const OutageTable& table, const ExperimentConfig& config);
std::vector<SumRateRow> run_sum_rate_sweep(const ExperimentConfig& config);

/// Outage counts for one scheme at one power point; the building block of the sweep.
/// Returns per-user outage counts in user-index order (size 4; unused users stay 0).
std::array<std::uint64_t, kNumUsers> count_outages(const ExperimentConfig& config, Scheme scheme,
                                                   std::size_t power_index, std::uint64_t trials,
                                                   unsigned threads);

/// Built-in figure parameter sets: fig2 .. fig9.
ExperimentConfig figure_preset(std::string_view name);
std::vector<std::string> preset_names();

// Config file: flat `key = value` lines, `#` comments, comma-separated lists.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);
std::string format_config(const ExperimentConfig& config);

// CSV: power_dbm,scheme,user_index,p_out_mc,ci_half_width,p_out_analytic,sum_rate_bpcu,regime_note
void write_csv(const OutageTable& table, std::ostream& out);
void emit_csv(const OutageTable& table, const std::string& path);
OutageTable read_csv(std::istream& in);

void write_sum_rate_csv(const std::vector<SumRateRow>& rows, std::ostream& out);

}  // namespace nnoma
