// qcss — run, replay and analyze consciousness-weighted soccer matches.
// Links only the public C API.
#include <cstdint>
#include <cstdio>
#include <string>

#include <CLI11.hpp>
#include <qcss.h>

namespace {

int print_and_free(char* json) {
  if (!json) return 1;
  std::printf("%s\n", json);
  qcss_string_free(json);
  return 0;
}

int complain(const char* what) {
  std::fprintf(stderr, "%s: %s\n", what, qcss_last_error());
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QCSS match runner"};
  app.require_subcommand(1);

  // --- run ---------------------------------------------------------------
  std::string run_config, run_trace;
  std::uint64_t run_seed = 0;
  bool run_seed_set = false, run_virtual = false;
  std::uint32_t run_ticks = 0;
  auto* run = app.add_subcommand("run", "Run a match from a config file");
  run->add_option("config", run_config, "Match config (JSON)")->required();
  run->add_option("--trace", run_trace, "Write the tick trace to this file");
  run->add_option("--seed", run_seed, "Override the config seed")
      ->each([&run_seed_set](const std::string&) { run_seed_set = true; });
  run->add_option("--ticks", run_ticks, "Override the match length");
  run->add_flag("--virtual-clock", run_virtual,
                "Force the deterministic in-process transport");

  // --- replay ------------------------------------------------------------
  std::string replay_path;
  auto* replay = app.add_subcommand("replay", "Recompute a recorded trace and verify it");
  replay->add_option("trace", replay_path, "Trace file")->required();

  // --- stats -------------------------------------------------------------
  std::string stats_path;
  auto* stats = app.add_subcommand("stats", "Compute statistics from a trace");
  stats->add_option("trace", stats_path, "Trace file")->required();

  // --- experiment --------------------------------------------------------
  auto* experiment = app.add_subcommand("experiment", "Built-in studies");
  experiment->require_subcommand(1);
  std::string exp_config;
  std::uint32_t exp_reps = 20, exp_supporters = 0, exp_ticks = 0;
  std::uint64_t exp_seed = 0;
  bool exp_seed_set = false;
  auto* home_adv = experiment->add_subcommand(
      "home-advantage", "Biased home crowd vs a symmetric control");
  home_adv->add_option("config", exp_config, "Base match config (JSON)")->required();
  home_adv->add_option("--reps", exp_reps, "Seeded repetitions per condition");
  home_adv->add_option("--supporters", exp_supporters, "Supporters per side");
  home_adv->add_option("--ticks", exp_ticks, "Ticks per match");
  home_adv->add_option("--seed", exp_seed, "Base seed")
      ->each([&exp_seed_set](const std::string&) { exp_seed_set = true; });

  // --- bench -------------------------------------------------------------
  auto* bench = app.add_subcommand("bench", "Performance probes");
  bench->require_subcommand(1);
  std::uint32_t bench_supporters = 10000, bench_ticks = 100;
  auto* swarm = bench->add_subcommand("swarm", "Time the scheduler against a supporter swarm");
  swarm->add_option("--supporters", bench_supporters, "Swarm size");
  swarm->add_option("--ticks", bench_ticks, "Ticks to measure");

  CLI11_PARSE(app, argc, argv);

  if (*run) {
    std::string overrides = "{";
    bool first = true;
    auto append = [&](const std::string& field) {
      overrides += (first ? "" : ",") + field;
      first = false;
    };
    if (run_seed_set) append("\"seed\":" + std::to_string(run_seed));
    if (run_ticks > 0) append("\"match_ticks\":" + std::to_string(run_ticks));
    if (run_virtual) append("\"virtual_clock\":true");
    overrides += "}";

    char* stats_json = nullptr;
    if (qcss_match_run(run_config.c_str(), run_trace.empty() ? nullptr : run_trace.c_str(),
                       overrides.c_str(), &stats_json) != QCSS_OK) {
      return complain("run failed");
    }
    return print_and_free(stats_json);
  }

  if (*replay) {
    qcss_trace* trace = nullptr;
    if (qcss_trace_open(replay_path.c_str(), &trace) != QCSS_OK) {
      return complain("cannot open trace");
    }
    char* report = nullptr;
    const auto status = qcss_trace_replay(trace, &report);
    qcss_trace_close(trace);
    if (status != QCSS_OK) return complain("replay failed");
    return print_and_free(report);
  }

  if (*stats) {
    qcss_trace* trace = nullptr;
    if (qcss_trace_open(stats_path.c_str(), &trace) != QCSS_OK) {
      return complain("cannot open trace");
    }
    char* report = nullptr;
    const auto status = qcss_trace_stats(trace, &report);
    qcss_trace_close(trace);
    if (status != QCSS_OK) return complain("stats failed");
    return print_and_free(report);
  }

  if (*home_adv) {
    std::string overrides = "{\"repetitions\":" + std::to_string(exp_reps);
    if (exp_supporters > 0) overrides += ",\"supporters\":" + std::to_string(exp_supporters);
    if (exp_ticks > 0) overrides += ",\"ticks\":" + std::to_string(exp_ticks);
    if (exp_seed_set) overrides += ",\"seed\":" + std::to_string(exp_seed);
    overrides += "}";
    char* report = nullptr;
    if (qcss_experiment_home_advantage(exp_config.c_str(), overrides.c_str(), &report) !=
        QCSS_OK) {
      return complain("experiment failed");
    }
    return print_and_free(report);
  }

  if (*swarm) {
    char* report = nullptr;
    if (qcss_bench_swarm(bench_supporters, bench_ticks, &report) != QCSS_OK) {
      return complain("bench failed");
    }
    return print_and_free(report);
  }

  return 1;
}
