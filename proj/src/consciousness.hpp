#pragma once

#include <optional>
#include <set>
#include <span>
#include <vector>

#include "model.hpp"
#include "rng.hpp"

namespace qcss {

// One agent entering the scoring step: its previous proposal is compared
// against the reality that was just established.
struct ScoreInput {
  AgentId agent = 0;
  Role role = Role::Player;
  double will = 0.0;
  const StateVector* prev_sent = nullptr;  // proposal from the previous tick
};

struct ScoredProposal {
  AgentId agent = 0;
  double sc = 0.0;
  bool eligible = false;
};

struct DistributionEntry {
  AgentId agent = 0;
  double probability = 0.0;
};

enum class Fallback : std::uint8_t { None = 0, RepeatReality = 1 };

// Normalized selection weights over the eligible agents, ascending by agent
// id. Empty entries mean nobody can win and the previous reality repeats.
struct SelectionDistribution {
  std::vector<DistributionEntry> entries;
  Fallback fallback = Fallback::None;
};

// Compensated (Neumaier) summation; used wherever a probability or will sum
// feeds a tolerance-checked invariant.
double neumaier_sum(std::span<const double> values);

// Prediction-accuracy scores. Per agent: sc = w/d against the realized
// reality when d > 0. A perfect predictor (d = 0) inherits the maximum score
// among same-role agents with d > 0; if the whole role predicted perfectly,
// each falls back to its own will. Inputs must all carry a prev_sent.
// Output preserves input order; all values are >= 0 and finite.
std::vector<ScoredProposal> soccer_consciousness(std::span<const ScoreInput> agents,
                                                 const StateVector& reality);

// Normalizes eligible scores into selection probabilities. An empty eligible
// set or an all-zero score mass yields the RepeatReality fallback. Scores
// must be non-negative; entries come out sorted by agent id.
SelectionDistribution selection_distribution(std::span<const ScoredProposal> scored);

// The deadline-aware variant: only agents on time both this tick and the
// previous one keep a nonzero weight, and excluded agents leave the
// denominator too, so the remaining probabilities still sum to 1. `scored`
// must cover exactly on_time_now ∩ on_time_prev.
SelectionDistribution late_filtered_distribution(const std::set<AgentId>& on_time_now,
                                                 const std::set<AgentId>& on_time_prev,
                                                 std::span<const ScoredProposal> scored);

// Inverse-CDF draw over the entries in ascending agent-id order, consuming
// exactly one uniform when entries are non-empty. nullopt = repeat reality.
// This walk is the reference sampling semantics; replays depend on it.
std::optional<AgentId> sample(const SelectionDistribution& dist, SplitMix64& rng);

// Blends will toward the realized consciousness scores, per role:
//   raw = (1-alpha)*w + alpha*sc*(role_will_sum/role_sc_sum)
// then rescales each role group back to its pre-update sum, so the player
// total and the supporter total are both preserved. Agents missing from
// `scored` participate with sc = 0. alpha = 0 is an exact identity.
WillTable update_will(const WillTable& current, std::span<const ScoredProposal> scored,
                      double alpha);

}  // namespace qcss
