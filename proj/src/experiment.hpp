#pragma once

#include <optional>

#include <json.hpp>

#include "runner.hpp"

namespace qcss {

struct ExperimentOptions {
  std::uint32_t repetitions = 20;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint32_t> supporters;  // per-side head count override
  std::optional<std::uint32_t> ticks;       // match length override
};

// The home-advantage study: biased home supporters holding the whole
// supporter budget ("treatment") against a symmetric split ("control"),
// over seeded in-process matches. Reports per-repetition away-half ball
// occupancy, the supporters' realized selection share against the
// accumulated per-tick distributions, and a bootstrap confidence interval
// for the occupancy difference between the two arms.
Result<nlohmann::json, std::string> home_advantage_experiment(const MatchSetup& base,
                                                              const ExperimentOptions& options);

// Scale probe: an in-process swarm of echo supporters, timing the
// scheduler's scoring + selection work per tick.
nlohmann::json bench_swarm(std::uint32_t supporters, std::uint32_t ticks);

}  // namespace qcss
