#include <string>

#include "nnoma/experiment.hpp"

namespace nnoma {
namespace {

std::vector<double> power_range(double start, double step, double stop) {
  std::vector<double> out;
  for (int k = 0; start + k * step <= stop + 1e-9; ++k) out.push_back(start + k * step);
  return out;
}

constexpr std::array<double, kNumUsers> kCaseOne{1.5, 0.5, 0.5, 0.5};
constexpr std::array<double, kNumUsers> kCaseTwo{2.0, 1.0, 1.0, 1.0};

// One interferer per disc of radius 200 m on average.
const double kSparseInterferers = 1.0 / (kPi * 200.0 * 200.0);

ExperimentConfig base(std::string name, double l, double r0, double rj) {
  ExperimentConfig c;
  c.name = std::move(name);
  c.side_length_m = l;
  c.big_radius_m = r0;
  c.near_radii_m = {rj, rj, rj};
  c.path_loss_exponent = 3.0;
  c.beta0_sq = 0.8;
  return c;
}

}  // namespace

std::vector<std::string> preset_names() { return {"fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9"}; }

ExperimentConfig figure_preset(std::string_view name) {
  ExperimentConfig c;
  if (name == "fig2") {
    c = base("fig2", 400.0, 250.0, 10.0);
    c.rates_bpcu = kCaseTwo;
    c.power_dbm_list = power_range(-40.0, 5.0, 40.0);
    c.schemes = {Scheme::n_noma, Scheme::oma};
  } else if (name == "fig3") {
    c = base("fig3", 400.0, 250.0, 10.0);
    c.rates_bpcu = kCaseOne;
    c.power_dbm_list = power_range(-40.0, 5.0, 40.0);
    c.schemes = {Scheme::n_noma, Scheme::oma};
  } else if (name == "fig4") {
    c = base("fig4", 400.0, 250.0, 10.0);
    c.rates_bpcu = kCaseTwo;
    c.power_dbm_list = power_range(-40.0, 5.0, 10.0);
    c.schemes = {Scheme::n_noma, Scheme::noma_no_comp, Scheme::noma_best_bs};
  } else if (name == "fig5") {
    c = base("fig5", 600.0, 400.0, 10.0);
    c.rates_bpcu = kCaseTwo;
    c.power_dbm_list = power_range(-30.0, 5.0, 30.0);
    c.schemes = {Scheme::n_noma};
  } else if (name == "fig6") {
    c = base("fig6", 400.0, 1.1 * 400.0 / kSqrt3, 10.0);
    c.rates_bpcu = kCaseTwo;
    c.power_dbm_list = power_range(-30.0, 5.0, 10.0);
    c.schemes = {Scheme::n_noma};
  } else if (name == "fig7") {
    c = base("fig7", 300.0, 200.0, 20.0);
    c.path_loss_exponent = 4.0;
    c.rates_bpcu = {0.5, 0.5, 0.5, 0.5};
    c.power_dbm_list = power_range(-50.0, 5.0, -10.0);
    c.interference = InterferenceSettings{-20.0, kSparseInterferers, kDefaultInterferenceWindow, false};
    c.schemes = {Scheme::n_noma};
  } else if (name == "fig8") {
    c = base("fig8", 400.0, 250.0, 20.0);
    c.rates_bpcu = {0.5, 0.5, 0.5, 0.5};
    c.power_dbm_list = power_range(0.0, 5.0, 50.0);
    c.interference = InterferenceSettings{6.0, kSparseInterferers, kDefaultInterferenceWindow, false};
    c.schemes = {Scheme::n_noma};
  } else if (name == "fig9") {
    c = base("fig9", 600.0, 400.0, 30.0);
    c.rates_bpcu = kCaseTwo;
    c.power_dbm_list = power_range(0.0, 5.0, 50.0);
    c.interference = InterferenceSettings{6.0, kSparseInterferers, kDefaultInterferenceWindow, false};
    c.schemes = {Scheme::n_noma};
  } else {
    throw Error(ErrorCode::unknown_preset, "preset", "unknown preset '" + std::string(name) + "'");
  }
  return c;
}

}  // namespace nnoma
