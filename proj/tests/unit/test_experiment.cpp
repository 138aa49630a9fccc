#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "nnoma/experiment.hpp"

using namespace nnoma;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an nnoma::Error");
  return ErrorCode::invalid_argument;
}

std::string field_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.field();
  }
  return {};
}

const char* kMinimal = R"(# minimal
name = unit
side_length_m = 400
big_radius_m = 250
near_radius_m = 10
path_loss_exponent = 3
beta0_sq = 0.8
rates_bpcu = 2, 1, 1, 1
power_dbm_list = -10:5:10
schemes = n-noma, oma
trials = 2e4
seed = 7
)";

ExperimentConfig small_config() {
  ExperimentConfig c = parse_config(kMinimal);
  c.power_dbm_list = {-20.0, 0.0};
  return c;
}

std::string csv_of(const OutageTable& t) {
  std::ostringstream out;
  write_csv(t, out);
  return out.str();
}

}  // namespace

TEST_CASE("parse_config: keys, ranges and defaults") {
  const ExperimentConfig c = parse_config(kMinimal);
  CHECK(c.name == "unit");
  CHECK(c.near_radii_m == std::array<double, 3>{10, 10, 10});
  CHECK(c.power_dbm_list == std::vector<double>{-10, -5, 0, 5, 10});
  CHECK(c.schemes == std::vector<Scheme>{Scheme::n_noma, Scheme::oma});
  CHECK(c.trials == 20000);
  CHECK(c.seed == 7);
  CHECK_FALSE(c.interference.has_value());
  CHECK(c.noise_psd_dbm_hz == -170.0);
  CHECK(c.bandwidth_hz == 1e7);
}

TEST_CASE("parse_config: format round-trip") {
  ExperimentConfig c = figure_preset("fig9");
  c.trials = 1234;
  const ExperimentConfig back = parse_config(format_config(c));
  CHECK(format_config(back) == format_config(c));
  REQUIRE(back.interference.has_value());
  CHECK(back.interference->intensity_per_m2 == c.interference->intensity_per_m2);
}

TEST_CASE("parse_config: syntax errors are parse errors") {
  CHECK(code_of([] { parse_config("side_length_m 400\n"); }) == ErrorCode::parse_error);
  CHECK(code_of([] { parse_config("unknown_key = 1\n"); }) == ErrorCode::parse_error);
  CHECK(code_of([] { parse_config("side_length_m = abc\n"); }) == ErrorCode::parse_error);
  CHECK(code_of([] { parse_config("rates_bpcu = 1, 2\n"); }) == ErrorCode::parse_error);
  CHECK(code_of([] { parse_config("seed = 1\nseed = 2\n"); }) == ErrorCode::parse_error);
  CHECK(code_of([] { parse_config("schemes = n-noma, cdma\n"); }) == ErrorCode::parse_error);
  CHECK(code_of([] { load_config("/nonexistent/file.conf"); }) == ErrorCode::io_error);
}

TEST_CASE("parse_config: the standing assumption rejects beta0^2 = 0.5 at r0 = 2") {
  std::string text = kMinimal;
  text.replace(text.find("beta0_sq = 0.8"), 14, "beta0_sq = 0.5");
  CHECK(code_of([&] { parse_config(text); }) == ErrorCode::config_rejected);
  CHECK(field_of([&] { parse_config(text); }) == "beta0_sq");
  try {
    parse_config(text);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("beta0^2 - beta1^2 eta_0") != std::string::npos);
  }
}

TEST_CASE("validate: each range check names its field") {
  auto rejected_field = [](auto mutate) {
    ExperimentConfig c = small_config();
    mutate(c);
    CHECK(code_of([&] { c.validate(); }) == ErrorCode::config_rejected);
    return field_of([&] { c.validate(); });
  };
  CHECK(rejected_field([](ExperimentConfig& c) { c.side_length_m = -1; }) == "side_length_m");
  CHECK(rejected_field([](ExperimentConfig& c) { c.big_radius_m = 100; }) == "big_radius_m");
  CHECK(rejected_field([](ExperimentConfig& c) { c.near_radii_m[1] = 0; }) == "near_radii_m");
  CHECK(rejected_field([](ExperimentConfig& c) { c.path_loss_exponent = 1.5; }) == "path_loss_exponent");
  CHECK(rejected_field([](ExperimentConfig& c) { c.beta0_sq = 1.5; }) == "beta0_sq");
  CHECK(rejected_field([](ExperimentConfig& c) { c.rates_bpcu[2] = -1; }) == "rates_bpcu");
  CHECK(rejected_field([](ExperimentConfig& c) { c.power_dbm_list.clear(); }) == "power_dbm_list");
  CHECK(rejected_field([](ExperimentConfig& c) { c.bandwidth_hz = 0; }) == "bandwidth_hz");
  CHECK(rejected_field([](ExperimentConfig& c) { c.schemes.clear(); }) == "schemes");
  CHECK(rejected_field([](ExperimentConfig& c) { c.trials = 0; }) == "trials");
  CHECK(rejected_field([](ExperimentConfig& c) { c.threads = 0; }) == "threads");
}

TEST_CASE("link budget: -170 dBm/Hz over 10 MHz is 1e-10 mW") {
  const ExperimentConfig c = small_config();
  CHECK(c.noise_power_mw() == doctest::Approx(1e-10).epsilon(1e-12));
  CHECK(dbm_to_mw(30.0) == doctest::Approx(1000.0).epsilon(1e-14));
  CHECK(c.transmit_snr(30.0) == doctest::Approx(1e13).epsilon(1e-12));
}

TEST_CASE("figure_preset: fig7 and fig9 parameter sets") {
  const ExperimentConfig f7 = figure_preset("fig7");
  CHECK(f7.side_length_m == 300.0);
  CHECK(f7.big_radius_m == 200.0);
  CHECK(f7.near_radii_m == std::array<double, 3>{20, 20, 20});
  CHECK(f7.path_loss_exponent == 4.0);
  CHECK(f7.beta0_sq == 0.8);
  CHECK(f7.rates_bpcu == std::array<double, 4>{0.5, 0.5, 0.5, 0.5});
  REQUIRE(f7.interference.has_value());
  CHECK(f7.interference->intensity_per_m2 == doctest::Approx(1.0 / (std::numbers::pi * 200.0 * 200.0)).epsilon(1e-15));

  const ExperimentConfig f9 = figure_preset("fig9");
  CHECK(f9.side_length_m == 600.0);
  CHECK(f9.big_radius_m == 400.0);
  CHECK(f9.near_radii_m == std::array<double, 3>{30, 30, 30});
  CHECK(f9.rates_bpcu == std::array<double, 4>{2, 1, 1, 1});
  CHECK(f9.path_loss_exponent == 3.0);
  REQUIRE(f9.interference.has_value());
  CHECK(f9.interference->power_dbm == 6.0);

  const ExperimentConfig f2 = figure_preset("fig2");
  CHECK(f2.side_length_m == 400.0);
  CHECK(f2.big_radius_m == 250.0);
  CHECK(f2.beta0_sq == 0.8);
  CHECK(figure_preset("fig3").rates_bpcu == std::array<double, 4>{1.5, 0.5, 0.5, 0.5});

  for (const std::string& name : preset_names()) CHECK_NOTHROW(figure_preset(name).validate());
  CHECK(code_of([] { figure_preset("fig10"); }) == ErrorCode::unknown_preset);
}

TEST_CASE("OutageEstimate: binomial confidence interval") {
  const OutageEstimate e = OutageEstimate::from_counts(1000, 1'000'000);
  CHECK(e.p_hat == 1e-3);
  CHECK(e.ci_half_width == doctest::Approx(6.2e-5).epsilon(0.01));
  CHECK(e.ci_half_width == doctest::Approx(1.96 * std::sqrt(1e-3 * (1 - 1e-3) / 1e6)).epsilon(1e-14));
  CHECK(OutageEstimate::from_counts(0, 10).ci_half_width == 0.0);
}

TEST_CASE("run_outage_sweep: bit-identical across thread counts") {
  ExperimentConfig c = small_config();
  c.threads = 1;
  const std::string one = csv_of(run_outage_sweep(c));
  c.threads = 8;
  CHECK(csv_of(run_outage_sweep(c)) == one);
}

TEST_CASE("run_outage_sweep: a scheme's rows do not depend on the other schemes") {
  ExperimentConfig both = small_config();
  ExperimentConfig alone = both;
  alone.schemes = {Scheme::oma};
  const OutageTable a = run_outage_sweep(both);
  const OutageTable b = run_outage_sweep(alone);
  OutageTable oma_rows;
  for (const auto& r : a)
    if (r.scheme == Scheme::oma) oma_rows.push_back(r);
  CHECK(csv_of(oma_rows) == csv_of(b));
}

TEST_CASE("run_outage_sweep: row layout and analytic overlays") {
  const OutageTable t = run_outage_sweep(small_config());
  REQUIRE(t.size() == 2 * (4 + 1));
  CHECK(t[0].scheme == Scheme::n_noma);
  CHECK(t[0].user_index == 0);
  CHECK(t[3].user_index == 3);
  CHECK(t[4].scheme == Scheme::oma);
  for (const auto& r : t) {
    CHECK(r.estimate.trials == 20000);
    CHECK(r.estimate.analytic.has_value());
  }
  CHECK(t[0].estimate.analytic->regime_note.find("cell-edge-highsnr") == 0);
  CHECK(t[1].estimate.analytic->regime_note.find("near-user") == 0);
  CHECK(t[4].estimate.analytic->regime_note.find("oma-centroid") == 0);

  ExperimentConfig single = small_config();
  single.schemes = {Scheme::noma_no_comp};
  const OutageTable s = run_outage_sweep(single);
  REQUIRE(s.size() == 2);
  CHECK_FALSE(s[0].estimate.analytic.has_value());
  CHECK(s[0].regime_note.find("mc-only") == 0);
}

TEST_CASE("fig9: user-0 outage increases with beta1 under common random numbers") {
  ExperimentConfig c = figure_preset("fig9");
  c.power_dbm_list = {10.0};
  c.trials = 50'000;
  c.schemes = {Scheme::n_noma};
  double prev = -1.0;
  for (double b1 : {0.05, 0.1, 0.15, 0.2}) {
    c.beta0_sq = 1.0 - b1;
    const auto counts = count_outages(c, Scheme::n_noma, 0, c.trials, 1);
    const double p = static_cast<double>(counts[0]) / static_cast<double>(c.trials);
    CAPTURE(b1);
    CHECK(p > prev);
    prev = p;
  }
}

TEST_CASE("outage_sum_rate: ceiling and floor") {
  const std::array<double, 4> case_two{2, 1, 1, 1};
  CHECK(outage_sum_rate(Scheme::n_noma, {0, 0, 0, 0}, case_two) == 5.0);
  CHECK(outage_sum_rate(Scheme::n_noma, {1, 1, 1, 1}, case_two) == 0.0);
  CHECK(outage_sum_rate(Scheme::oma, {0}, case_two) == 2.0);
  CHECK(outage_sum_rate(Scheme::n_noma, {0.5, 0.1, 0.2, 0.3}, case_two) == doctest::Approx(1.0 + 0.9 + 0.8 + 0.7));
}

TEST_CASE("summarize_sum_rates: rate loss at the cell-edge user") {
  ExperimentConfig c = small_config();
  OutageTable t;
  auto add = [&](Scheme s, int user, double p) {
    OutageRow r;
    r.power_dbm = 10.0;
    r.scheme = s;
    r.user_index = user;
    r.estimate.p_hat = p;
    t.push_back(r);
  };
  add(Scheme::n_noma, 0, 0.2);
  for (int j = 1; j <= 3; ++j) add(Scheme::n_noma, j, 0.0);
  add(Scheme::oma, 0, 0.05);
  const auto rows = summarize_sum_rates(t, c);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].outage_sum_rate == doctest::Approx(0.8 * 2 + 3));
  REQUIRE(rows[0].rate_loss_bpcu.has_value());
  CHECK(*rows[0].rate_loss_bpcu == doctest::Approx(0.95 * 2 - 0.8 * 2));
  CHECK(rows[1].outage_sum_rate == doctest::Approx(1.9));
  CHECK_FALSE(rows[1].rate_loss_bpcu.has_value());
}

TEST_CASE("CSV: empty table is header-only") {
  CHECK(csv_of({}) == "power_dbm,scheme,user_index,p_out_mc,ci_half_width,p_out_analytic,sum_rate_bpcu,regime_note\n");
}

TEST_CASE("CSV: write then read reproduces the table") {
  ExperimentConfig c = small_config();
  c.schemes = {Scheme::n_noma, Scheme::oma, Scheme::noma_best_bs};
  const OutageTable t = run_outage_sweep(c);
  const std::string text = csv_of(t);
  std::istringstream in(text);
  const OutageTable back = read_csv(in);
  REQUIRE(back.size() == t.size());
  for (std::size_t k = 0; k < t.size(); ++k) {
    CHECK(back[k].scheme == t[k].scheme);
    CHECK(back[k].user_index == t[k].user_index);
    CHECK(back[k].power_dbm == t[k].power_dbm);
    CHECK(back[k].estimate.p_hat == doctest::Approx(t[k].estimate.p_hat).epsilon(1e-7));
    CHECK(back[k].estimate.analytic.has_value() == t[k].estimate.analytic.has_value());
  }
  CHECK(csv_of(back) == text);
}

TEST_CASE("CSV: fig2 schema has the documented columns and types") {
  ExperimentConfig c = figure_preset("fig2");
  c.trials = 2000;
  c.power_dbm_list = {20.0, 30.0};
  const std::string text = csv_of(run_outage_sweep(c));
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  CHECK(line == "power_dbm,scheme,user_index,p_out_mc,ci_half_width,p_out_analytic,sum_rate_bpcu,regime_note");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    REQUIRE(cells.size() == 8);
    CHECK((cells[1] == "n-noma" || cells[1] == "oma"));
    const double p = std::stod(cells[3]);
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
    if (!cells[5].empty()) CHECK(std::stod(cells[5]) >= 0.0);
  }
  CHECK(rows == 2 * 5);
}

TEST_CASE("emit_csv: unwritable path is an I/O error") {
  CHECK(code_of([] { emit_csv({}, "/nonexistent-dir/out.csv"); }) == ErrorCode::io_error);
}
