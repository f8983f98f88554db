#include "experiment.hpp"

#include <algorithm>
#include <cmath>

#include "rng.hpp"
#include "swarm.hpp"

namespace qcss {

using nlohmann::json;

namespace {

struct ConditionOutcome {
  std::vector<double> away_occupancy;  // per repetition
  double supporter_wins_home = 0.0;
  double supporter_mass_home = 0.0;
  double supporter_mass_var_home = 0.0;
  double supporter_share_home = 0.0;
  std::uint64_t ticks = 0;
};

double mean(const std::vector<double>& xs) {
  double acc = 0.0;
  for (double x : xs) acc += x;
  return xs.empty() ? 0.0 : acc / double(xs.size());
}

}  // namespace

Result<json, std::string> home_advantage_experiment(const MatchSetup& base,
                                                    const ExperimentOptions& options) {
  if (options.repetitions == 0) return std::string("repetitions must be positive");

  const std::uint32_t per_side = options.supporters.value_or(
      base.supporters_home.count > 0 ? base.supporters_home.count : 10);
  const double bias = base.supporters_home.count > 0 ? base.supporters_home.bias : 1.0;
  const std::uint64_t base_seed = options.seed.value_or(base.config.rng_seed);

  // Treatment: home crowd holds the entire supporter budget.
  // Control: the same crowd size split evenly across both sides.
  struct Condition {
    const char* name;
    TeamSupportersSpec home;
    TeamSupportersSpec guest;
  };
  const Condition conditions[2] = {
      {"treatment", {per_side, 1.0, "bias", bias}, {0, 0.0, "bias", bias}},
      {"control", {per_side, 0.5, "bias", bias}, {per_side, 0.5, "bias", bias}},
  };

  SplitMix64 seed_root(base_seed);
  ConditionOutcome outcomes[2];
  json repetitions_json = json::object();

  for (int c = 0; c < 2; ++c) {
    MatchSetup setup = base;
    setup.transport = "inproc";
    setup.supporters_home = conditions[c].home;
    setup.supporters_guest = conditions[c].guest;
    setup.config.supporter_budget_home = conditions[c].home.budget;
    setup.config.supporter_budget_guest = conditions[c].guest.budget;
    setup.config.expected_supporters_home = conditions[c].home.count;
    setup.config.expected_supporters_guest = conditions[c].guest.count;
    if (options.ticks) setup.config.match_ticks = *options.ticks;

    json reps = json::array();
    for (std::uint32_t rep = 0; rep < options.repetitions; ++rep) {
      RunOverrides overrides;
      overrides.seed = seed_root.split(std::uint64_t(c) * 1000003ull + rep).state();
      auto run = run_match(setup, overrides, nullptr);
      if (!run.ok()) return conditions[c].name + (": " + run.error());
      const MatchStats& stats = run.value().stats;

      outcomes[c].away_occupancy.push_back(stats.away_half_share);
      outcomes[c].supporter_wins_home += double(stats.supporter_wins_home);
      outcomes[c].supporter_mass_home += stats.supporter_mass_home;
      outcomes[c].supporter_mass_var_home += stats.supporter_mass_var_home;
      outcomes[c].supporter_share_home +=
          double(stats.supporter_wins_home) / double(stats.ticks);
      outcomes[c].ticks += stats.ticks;
      reps.push_back({{"seed", *overrides.seed},
                      {"away_half_occupancy", stats.away_half_share},
                      {"home_supporter_wins", stats.supporter_wins_home},
                      {"home_supporter_expected_wins", stats.supporter_mass_home},
                      {"stall_share", stats.stall_share}});
    }
    repetitions_json[conditions[c].name] = reps;
  }

  // Realized home-supporter selections against the accumulated per-tick
  // law (martingale variance bound, four sigma).
  const double realized = outcomes[0].supporter_wins_home;
  const double expected = outcomes[0].supporter_mass_home;
  const double sigma = std::sqrt(outcomes[0].supporter_mass_var_home);
  const bool within = std::abs(realized - expected) <= 4.0 * sigma + 1e-9;

  // Bootstrap CI for the occupancy difference, treatment minus control.
  const std::uint32_t kResamples = 10000;
  SplitMix64 boot(seed_root.split(0xB007).state());
  std::vector<double> diffs;
  diffs.reserve(kResamples);
  const auto& treat = outcomes[0].away_occupancy;
  const auto& control = outcomes[1].away_occupancy;
  for (std::uint32_t b = 0; b < kResamples; ++b) {
    double t_acc = 0.0, c_acc = 0.0;
    for (std::size_t i = 0; i < treat.size(); ++i) {
      t_acc += treat[boot.next_below(treat.size())];
    }
    for (std::size_t i = 0; i < control.size(); ++i) {
      c_acc += control[boot.next_below(control.size())];
    }
    diffs.push_back(t_acc / double(treat.size()) - c_acc / double(control.size()));
  }
  std::sort(diffs.begin(), diffs.end());
  const double ci_low = diffs[std::size_t(0.025 * kResamples)];
  const double ci_high = diffs[std::size_t(0.975 * kResamples) - 1];

  json out{
      {"repetitions", options.repetitions},
      {"supporters_per_side", per_side},
      {"bias", bias},
      {"base_seed", base_seed},
      {"match_ticks", options.ticks.value_or(base.config.match_ticks)},
      {"per_repetition", repetitions_json},
      {"occupancy",
       {{"treatment_mean_away", mean(treat)},
        {"control_mean_away", mean(control)},
        {"difference", mean(treat) - mean(control)},
        {"bootstrap_ci95", {ci_low, ci_high}},
        {"resamples", kResamples}}},
      {"selection_accounting",
       {{"home_supporter_wins", realized},
        {"expected_from_distributions", expected},
        {"four_sigma", 4.0 * sigma},
        {"within_monte_carlo_error", within},
        {"treatment_home_supporter_share",
         outcomes[0].supporter_share_home / double(options.repetitions)}}},
  };
  return out;
}

json bench_swarm(std::uint32_t supporters, std::uint32_t ticks) {
  MatchConfig cfg;
  cfg.match_ticks = std::max<std::uint32_t>(1, ticks);
  cfg.supporter_budget_home = 1.0;
  cfg.supporter_budget_guest = 0.0;
  cfg.expected_supporters_home = supporters;
  cfg.rng_seed = 1;

  TickEngine engine(cfg);
  InProcessSwarm swarm;
  for (std::uint32_t i = 0; i < supporters; ++i) {
    auto reg = engine.register_agent(Role::Supporter, Team::Home, std::nullopt);
    swarm.add(reg.value().id, std::make_unique<EchoBehavior>());
  }
  auto started = engine.start(std::nullopt);
  (void)started;

  using clock = std::chrono::steady_clock;
  std::vector<double> collect_us, engine_us;
  while (!engine.finished()) {
    const auto t0 = clock::now();
    auto proposals = swarm.collect(engine.reality());
    const auto t1 = clock::now();
    (void)engine.run_tick(proposals);
    const auto t2 = clock::now();
    collect_us.push_back(std::chrono::duration<double, std::micro>(t1 - t0).count());
    engine_us.push_back(std::chrono::duration<double, std::micro>(t2 - t1).count());
  }

  auto summarize = [](std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    const auto at = [&xs](double q) { return xs[std::size_t(q * double(xs.size() - 1))]; };
    return json{{"median_us", at(0.5)},
                {"p90_us", at(0.9)},
                {"max_us", xs.back()},
                {"mean_us", mean(xs)}};
  };
  return json{{"supporters", supporters},
              {"ticks", cfg.match_ticks},
              {"scoring_and_selection", summarize(engine_us)},
              {"proposal_collection", summarize(collect_us)}};
}

}  // namespace qcss
