#pragma once

#include <map>

#include <json.hpp>

#include "trace.hpp"

namespace qcss {

struct AgentStats {
  std::uint64_t wins = 0;
  double selection_share = 0.0;  // wins / ticks
  std::uint64_t late_count = 0;  // proposals that arrived at/after the deadline
};

struct RoleStats {
  std::uint64_t wins = 0;
  double selection_share = 0.0;
  double prob_mass_mean = 0.0;  // mean total probability over non-stall ticks
};

// Aggregates of one match. selection shares over all agents sum to
// 1 - stall_share; the supporter mass fields accumulate the per-tick
// distributions so a run's realized wins can be checked against them.
struct MatchStats {
  std::uint32_t ticks = 0;
  std::uint64_t stalls = 0;
  double stall_share = 0.0;
  std::map<AgentId, AgentStats> agents;
  RoleStats players;
  RoleStats supporters;
  double supporter_mass_home = 0.0;      // sum over ticks of home-supporter mass
  double supporter_mass_guest = 0.0;
  double supporter_mass_var_home = 0.0;  // sum of mass*(1-mass), for error bars
  double supporter_mass_var_guest = 0.0;
  std::uint64_t supporter_wins_home = 0;
  std::uint64_t supporter_wins_guest = 0;
  double ball_mean_x = 0.0;
  double ball_mean_y = 0.0;
  double home_half_share = 0.0;  // ball strictly in x < length/2
  double away_half_share = 0.0;  // ball strictly in x > length/2

  nlohmann::json to_json() const;
};

// Streaming accumulator so long matches never need the full trace in memory.
class StatsAccumulator {
 public:
  StatsAccumulator(const std::vector<AgentDescriptor>& roster, const Pitch& pitch,
                   std::int64_t deadline_us);

  void add(const TickRecord& record);
  MatchStats finish() const;

 private:
  struct AgentInfo {
    Role role = Role::Player;
    Team team = Team::Home;
  };
  std::map<AgentId, AgentInfo> info_;
  Pitch pitch_;
  MatchStats acc_;
  double mass_sum_players_ = 0.0;
  double mass_sum_supporters_ = 0.0;
  std::uint64_t scored_ticks_ = 0;
  std::int64_t deadline_us_ = 0;
};

// Pure function of a parsed trace.
MatchStats compute_stats(const TraceData& trace);

}  // namespace qcss
