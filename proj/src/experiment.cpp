#include "nnoma/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <thread>

#include "nnoma/channel.hpp"
#include "nnoma/rng.hpp"

namespace nnoma {
namespace {

[[noreturn]] void reject(std::string field, const std::string& message) {
  throw Error(ErrorCode::config_rejected, std::move(field), message);
}

bool finite(double v) { return std::isfinite(v); }

struct TrialContext {
  NetworkLayout layout;
  SchemeConfig scheme_config;
  std::optional<InterferenceConfig> interference;
  bool share_positions = false;
  double alpha = 0.0;
};

// Interference at each user for one trial. Only the users in `needed` are drawn.
std::array<double, kNumUsers> draw_interference(const TrialContext& ctx, const UserPlacement& placement,
                                                int needed, Rng& rng) {
  std::array<double, kNumUsers> out{};
  if (!ctx.interference) return out;
  const InterferenceConfig& cfg = *ctx.interference;
  if (!ctx.share_positions) {
    for (int j = 0; j < needed; ++j) out[j] = sample_interference_power(cfg, ctx.alpha, rng);
    return out;
  }
  // One point set around the centroid; every user sees it through its own fades.
  InterferenceField field = sample_ppp(cfg, Point2D{0.0, 0.0}, rng);
  for (int j = 0; j < needed; ++j) {
    if (j > 0)
      for (auto& g : field.fades) g = sample_complex_gaussian(rng);
    const Point2D user = j == 0 ? placement.cell_edge : placement.near_users[j - 1];
    out[j] = interference_power(field, user, ctx.alpha, cfg.power_ratio);
  }
  return out;
}

void run_trial(const TrialContext& ctx, Scheme scheme, Rng& rng, std::array<std::uint64_t, kNumUsers>& counts) {
  const UserPlacement placement = sample_placement(ctx.layout, rng);
  const ChannelRealization ch = realize_channel(ctx.layout, placement, ctx.alpha, rng);
  switch (scheme) {
    case Scheme::n_noma: {
      const auto interference = draw_interference(ctx, placement, kNumUsers, rng);
      const TrialOutcome outcome = noma_trial(ch, ctx.scheme_config, interference);
      for (int j = 0; j < kNumUsers; ++j) counts[j] += outcome.outage[j] ? 1 : 0;
      break;
    }
    case Scheme::oma: {
      const auto interference = draw_interference(ctx, placement, 1, rng);
      counts[0] += oma_trial(ch, ctx.scheme_config, interference[0]) ? 1 : 0;
      break;
    }
    case Scheme::noma_no_comp:
    case Scheme::noma_best_bs: {
      const auto interference = draw_interference(ctx, placement, 1, rng);
      const ServingMode mode = scheme == Scheme::noma_best_bs ? ServingMode::best_bs : ServingMode::random_bs;
      const int serving = 1 + static_cast<int>(rng() % kNumBs);
      counts[0] += single_bs_noma_trial(ch, ctx.scheme_config, mode, serving, interference[0]) ? 1 : 0;
      break;
    }
  }
}

std::optional<AnalyticOutage> analytic_overlay(const ExperimentConfig& config, Scheme scheme, int user,
                                               double power_dbm) {
  const NetworkLayout layout = config.layout();
  const SchemeConfig sc = config.scheme_config(power_dbm);
  const auto interference = config.interference_config(power_dbm);
  const double alpha = config.path_loss_exponent;
  switch (scheme) {
    case Scheme::n_noma:
      if (user == 0) {
        if (interference) return std::nullopt;
        return p0_noma_analytic(layout, sc, alpha);
      }
      if (!interference) return pj_noma_analytic(layout, sc, alpha, user);
      if (alpha > 2.0) return pj_noma_interference_analytic(layout, sc, *interference, alpha, user, config.quadrature_nodes);
      return std::nullopt;
    case Scheme::oma:
      if (interference) return std::nullopt;
      return p0_oma_analytic(layout.side_length, alpha, thresholds(sc)[0], sc.rho);
    case Scheme::noma_no_comp:
    case Scheme::noma_best_bs:
      return std::nullopt;
  }
  return std::nullopt;
}

std::string row_note(const ExperimentConfig& config, Scheme scheme, int user,
                     const std::optional<AnalyticOutage>& analytic) {
  if (analytic) return analytic->regime_note;
  if (scheme == Scheme::noma_no_comp || scheme == Scheme::noma_best_bs) return "mc-only;serving-bs-power-3beta0^2Ps";
  if (config.interference && user == 0) return "mc-only;interference";
  return "mc-only";
}

}  // namespace

std::string_view scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::n_noma: return "n-noma";
    case Scheme::oma: return "oma";
    case Scheme::noma_no_comp: return "noma-no-comp";
    case Scheme::noma_best_bs: return "noma-best-bs";
  }
  return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  for (Scheme s : {Scheme::n_noma, Scheme::oma, Scheme::noma_no_comp, Scheme::noma_best_bs})
    if (scheme_name(s) == name) return s;
  return std::nullopt;
}

std::vector<int> served_users(Scheme scheme) {
  if (scheme == Scheme::n_noma) return {0, 1, 2, 3};
  return {0};
}

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

void ExperimentConfig::validate() const {
  if (!(side_length_m > 0.0) || !finite(side_length_m)) reject("side_length_m", "must be positive");
  const double lo = side_length_m / kSqrt3;
  const double hi = side_length_m * kSqrt3 / 2.0;
  if (!(big_radius_m >= lo * (1.0 - 1e-12) && big_radius_m <= hi * (1.0 + 1e-12)))
    reject("big_radius_m", "R0 = " + std::to_string(big_radius_m) + " must lie in [sqrt(3)/3 l, sqrt(3)/2 l] = [" +
                               std::to_string(lo) + ", " + std::to_string(hi) + "]");
  for (int i = 0; i < kNumBs; ++i)
    if (!(near_radii_m[i] > 0.0) || !finite(near_radii_m[i]))
      reject("near_radii_m", "R_" + std::to_string(i + 1) + " must be positive");
  if (!(path_loss_exponent >= 2.0) || !finite(path_loss_exponent)) reject("path_loss_exponent", "must be >= 2");
  if (!(beta0_sq > 0.0 && beta0_sq <= 1.0)) reject("beta0_sq", "must lie in (0, 1]");
  for (int j = 0; j < kNumUsers; ++j)
    if (!(rates_bpcu[j] >= 0.0) || !finite(rates_bpcu[j]))
      reject("rates_bpcu", "r_" + std::to_string(j) + " must be a finite non-negative rate");
  const double eta0 = std::exp2(rates_bpcu[0]) - 1.0;
  const double margin = beta0_sq - (1.0 - beta0_sq) * eta0;
  if (!(margin > 0.0))
    reject("beta0_sq", "beta0^2 - beta1^2 eta_0 = " + std::to_string(beta0_sq) + " - " +
                           std::to_string(1.0 - beta0_sq) + " * " + std::to_string(eta0) + " = " +
                           std::to_string(margin) + " must be > 0");
  if (power_dbm_list.empty()) reject("power_dbm_list", "at least one transmit power is required");
  for (double p : power_dbm_list)
    if (!finite(p)) reject("power_dbm_list", "powers must be finite");
  if (!finite(noise_psd_dbm_hz)) reject("noise_psd_dbm_hz", "must be finite");
  if (!(bandwidth_hz > 0.0) || !finite(bandwidth_hz)) reject("bandwidth_hz", "must be positive");
  if (interference) {
    if (!finite(interference->power_dbm)) reject("interference_power_dbm", "must be finite");
    if (!(interference->intensity_per_m2 >= 0.0) || !finite(interference->intensity_per_m2))
      reject("interference_intensity_per_m2", "must be >= 0");
    if (!(interference->window_m > 0.0) || !finite(interference->window_m))
      reject("interference_window_m", "must be positive");
  }
  if (schemes.empty()) reject("schemes", "at least one scheme is required");
  std::set<Scheme> seen(schemes.begin(), schemes.end());
  if (seen.size() != schemes.size()) reject("schemes", "duplicate scheme");
  if (trials < 1) reject("trials", "must be >= 1");
  if (threads < 1) reject("threads", "must be >= 1");
  if (quadrature_nodes < 1) reject("quadrature_nodes", "must be >= 1");
}

NetworkLayout ExperimentConfig::layout() const { return NetworkLayout::make(side_length_m, big_radius_m, near_radii_m); }

double ExperimentConfig::noise_power_mw() const {
  return dbm_to_mw(noise_psd_dbm_hz + 10.0 * std::log10(bandwidth_hz));
}

double ExperimentConfig::transmit_snr(double power_dbm) const { return dbm_to_mw(power_dbm) / noise_power_mw(); }

SchemeConfig ExperimentConfig::scheme_config(double power_dbm) const {
  return SchemeConfig::make(beta0_sq, rates_bpcu, transmit_snr(power_dbm));
}

std::optional<InterferenceConfig> ExperimentConfig::interference_config(double power_dbm) const {
  if (!interference) return std::nullopt;
  InterferenceConfig cfg;
  cfg.intensity = interference->intensity_per_m2;
  cfg.power_ratio = dbm_to_mw(interference->power_dbm) / dbm_to_mw(power_dbm);
  cfg.window_radius = interference->window_m;
  return cfg;
}

OutageEstimate OutageEstimate::from_counts(std::uint64_t outages, std::uint64_t trials) {
  OutageEstimate e;
  e.trials = trials;
  e.p_hat = trials == 0 ? 0.0 : static_cast<double>(outages) / static_cast<double>(trials);
  e.ci_half_width = trials == 0 ? 0.0 : 1.96 * std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(trials));
  return e;
}

double outage_sum_rate(Scheme scheme, const std::vector<double>& user_outage,
                       const std::array<double, kNumUsers>& rates) {
  const auto users = served_users(scheme);
  if (user_outage.size() != users.size()) invalid_argument("user_outage", "one entry per served user expected");
  double total = 0.0;
  for (std::size_t k = 0; k < users.size(); ++k) total += (1.0 - user_outage[k]) * rates[users[k]];
  return total;
}

std::array<std::uint64_t, kNumUsers> count_outages(const ExperimentConfig& config, Scheme scheme,
                                                   std::size_t power_index, std::uint64_t trials,
                                                   unsigned threads) {
  if (power_index >= config.power_dbm_list.size()) invalid_argument("power_index", "out of range");
  const double power = config.power_dbm_list[power_index];
  TrialContext ctx{config.layout(), config.scheme_config(power), config.interference_config(power),
                   config.interference && config.interference->share_positions, config.path_loss_exponent};
  const auto scheme_id = static_cast<std::uint64_t>(scheme);

  auto work = [&](std::uint64_t begin, std::uint64_t end) {
    std::array<std::uint64_t, kNumUsers> local{};
    for (std::uint64_t t = begin; t < end; ++t) {
      Rng rng(stream_key(config.seed, {scheme_id, power_index, t}));
      run_trial(ctx, scheme, rng, local);
    }
    return local;
  };

  const unsigned n_threads = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, trials)));
  if (n_threads == 1) return work(0, trials);

  std::vector<std::array<std::uint64_t, kNumUsers>> partial(n_threads);
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (unsigned w = 0; w < n_threads; ++w) {
    const std::uint64_t begin = trials * w / n_threads;
    const std::uint64_t end = trials * (w + 1) / n_threads;
    pool.emplace_back([&, w, begin, end] { partial[w] = work(begin, end); });
  }
  for (auto& th : pool) th.join();
  std::array<std::uint64_t, kNumUsers> total{};
  for (const auto& p : partial)
    for (int j = 0; j < kNumUsers; ++j) total[j] += p[j];
  return total;
}

OutageTable run_outage_sweep(const ExperimentConfig& config) {
  config.validate();
  OutageTable table;
  for (std::size_t p = 0; p < config.power_dbm_list.size(); ++p) {
    const double power = config.power_dbm_list[p];
    for (Scheme scheme : config.schemes) {
      const auto counts = count_outages(config, scheme, p, config.trials, config.threads);
      const auto users = served_users(scheme);
      std::vector<double> p_hats;
      const std::size_t first = table.size();
      for (int user : users) {
        OutageRow row;
        row.power_dbm = power;
        row.scheme = scheme;
        row.user_index = user;
        row.estimate = OutageEstimate::from_counts(counts[user], config.trials);
        row.estimate.analytic = analytic_overlay(config, scheme, user, power);
        row.regime_note = row_note(config, scheme, user, row.estimate.analytic);
        p_hats.push_back(row.estimate.p_hat);
        table.push_back(std::move(row));
      }
      const double sum_rate = outage_sum_rate(scheme, p_hats, config.rates_bpcu);
      for (std::size_t k = first; k < table.size(); ++k) table[k].sum_rate_bpcu = sum_rate;
    }
  }
  return table;
}

std::vector<SumRateRow> summarize_sum_rates(const OutageTable& table, const ExperimentConfig& config) {
  std::vector<SumRateRow> rows;
  for (const OutageRow& r : table) {
    if (rows.empty() || rows.back().power_dbm != r.power_dbm || rows.back().scheme != r.scheme) {
      SumRateRow s;
      s.power_dbm = r.power_dbm;
      s.scheme = r.scheme;
      rows.push_back(std::move(s));
    }
    rows.back().user_outage.push_back(r.estimate.p_hat);
  }
  for (SumRateRow& s : rows) s.outage_sum_rate = outage_sum_rate(s.scheme, s.user_outage, config.rates_bpcu);
  for (SumRateRow& s : rows) {
    if (s.scheme != Scheme::n_noma) continue;
    for (const SumRateRow& o : rows)
      if (o.scheme == Scheme::oma && o.power_dbm == s.power_dbm)
        s.rate_loss_bpcu = (1.0 - o.user_outage[0]) * config.rates_bpcu[0] - (1.0 - s.user_outage[0]) * config.rates_bpcu[0];
  }
  return rows;
}

std::vector<SumRateRow> run_sum_rate_sweep(const ExperimentConfig& config) {
  return summarize_sum_rates(run_outage_sweep(config), config);
}

}  // namespace nnoma
