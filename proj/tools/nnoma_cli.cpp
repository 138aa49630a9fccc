// Command-line front end. Talks to the simulator only through the C interface.

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "nnoma/nnoma.h"

namespace {

struct Overrides {
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::string out;
  std::string sum_rate_out;
};

int exit_code_for(nnoma_status status) {
  if (status == NNOMA_OK) return 0;
  if (status == NNOMA_ERR_CONFIG_REJECTED || status == NNOMA_ERR_PARSE) return 2;
  return 1;
}

int report(nnoma_status status) {
  std::fprintf(stderr, "nnoma: error: %s\n", nnoma_last_error());
  return exit_code_for(status);
}

int run(nnoma_experiment* experiment, const Overrides& o) {
  nnoma_status s = NNOMA_OK;
  if (o.trials && (s = nnoma_experiment_set_trials(experiment, *o.trials)) != NNOMA_OK) return report(s);
  if (o.seed && (s = nnoma_experiment_set_seed(experiment, *o.seed)) != NNOMA_OK) return report(s);
  if (o.threads && (s = nnoma_experiment_set_threads(experiment, *o.threads)) != NNOMA_OK) return report(s);

  nnoma_result* result = nullptr;
  if ((s = nnoma_experiment_run(experiment, &result)) != NNOMA_OK) return report(s);
  int code = 0;
  if ((s = nnoma_result_write_csv(result, o.out.c_str())) != NNOMA_OK) code = report(s);
  if (code == 0 && !o.sum_rate_out.empty() &&
      (s = nnoma_result_write_sum_rate_csv(result, o.sum_rate_out.c_str())) != NNOMA_OK)
    code = report(s);
  nnoma_result_free(result);
  return code;
}

void add_common_options(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--out", o.out, "Output CSV path")->required();
  cmd->add_option("--sum-rate-out", o.sum_rate_out, "Optional per-scheme outage sum-rate CSV");
  cmd->add_option("--trials", o.trials, "Monte Carlo trials per power point")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "Master seed");
  cmd->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Network NOMA outage simulator"};
  app.set_version_flag("--version", std::string(nnoma_version()));
  app.require_subcommand(1);

  Overrides sim_opts;
  std::string config_path;
  auto* simulate = app.add_subcommand("simulate", "Run the sweep described by a config file");
  simulate->add_option("config", config_path, "Config file (key = value lines)")->required();
  add_common_options(simulate, sim_opts);

  Overrides preset_opts;
  std::string preset_name;
  auto* preset = app.add_subcommand("preset", "Run a built-in figure preset (fig2 .. fig9)");
  preset->add_option("figname", preset_name, "Preset name")->required();
  add_common_options(preset, preset_opts);

  std::string show_name;
  auto* show = app.add_subcommand("show-preset", "Print a preset in config-file syntax");
  show->add_option("figname", show_name, "Preset name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  nnoma_experiment* experiment = nullptr;
  nnoma_status s = NNOMA_OK;
  int code = 0;
  if (*simulate) {
    if ((s = nnoma_experiment_load(config_path.c_str(), &experiment)) != NNOMA_OK) return report(s);
    code = run(experiment, sim_opts);
  } else if (*preset) {
    if ((s = nnoma_experiment_preset(preset_name.c_str(), &experiment)) != NNOMA_OK) return report(s);
    code = run(experiment, preset_opts);
  } else if (*show) {
    if ((s = nnoma_experiment_preset(show_name.c_str(), &experiment)) != NNOMA_OK) return report(s);
    std::size_t needed = 0;
    nnoma_experiment_describe(experiment, nullptr, 0, &needed);
    std::string text(needed, '\0');
    nnoma_experiment_describe(experiment, text.data(), text.size(), &needed);
    std::fputs(text.c_str(), stdout);
  }
  nnoma_experiment_free(experiment);
  return code;
}
