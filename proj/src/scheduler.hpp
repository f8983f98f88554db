#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "consciousness.hpp"
#include "model.hpp"
#include "rng.hpp"

namespace qcss {

// A proposal as it reached the scheduler: arrival is measured in
// microseconds from the owning tick's start.
struct TimedProposal {
  AgentId agent = 0;
  StateVector state;
  std::int64_t arrival_us = 0;
};

// Everything one scheduler round produced. `reality` is the snapshot the
// round broadcast (and scored the previous proposals against); the winner's
// proposal becomes the next round's reality. `will` is the table the round
// used for scoring, so a record is self-contained for replay checking.
struct TickRecord {
  std::uint32_t tick = 0;
  StateVector reality;
  std::vector<std::pair<AgentId, std::int64_t>> proposals_received;  // arrival order, dupes kept
  std::vector<AgentId> eligible;                                     // ascending
  SelectionDistribution distribution;
  std::optional<AgentId> winner;  // nullopt = reality repeated (stall)
  std::vector<std::pair<AgentId, double>> will;  // ascending by agent id
};

enum class RegisterError : std::uint8_t {
  RosterFull,
  DuplicateShirt,
  MatchAlreadyStarted,
  BadShirt,
};

const char* to_string(RegisterError e);

struct Registration {
  AgentId id = 0;
  double will = 0.0;
  std::uint8_t shirt = 0;  // resolved shirt for players, 0 for supporters
};

enum class Phase : std::uint8_t { Registration, Broadcasting, Finished };

// The authoritative scheduler core. Pure with respect to time: callers hand
// in timed proposal lists (real sockets, the in-process swarm and trace
// replay all feed the same path), and one call advances one tick.
class TickEngine {
 public:
  explicit TickEngine(MatchConfig cfg);

  // Registration phase. Players get will 1; supporters split their favored
  // team's budget evenly across the expected head count, clamped so the
  // total never exceeds the budget.
  Result<Registration, RegisterError> register_agent(Role role, Team team,
                                                     std::optional<std::uint8_t> shirt);

  // Replaces roster and will wholesale (trace replay restores state this way).
  Result<std::monostate, std::string> adopt_roster(const Roster& roster, const WillTable& will);

  Result<std::monostate, std::string> start(std::optional<StateVector> lineup);

  // Runs one full round: classify arrivals, score, select, update will.
  // Requires start() and not finished(). Proposals must be listed in arrival
  // order; on duplicates the first one counts. Unregistered senders are
  // dropped. Invalid state vectors are treated exactly like late arrivals.
  TickRecord run_tick(std::span<const TimedProposal> proposals);

  Phase phase() const { return phase_; }
  bool finished() const { return phase_ == Phase::Finished; }
  std::uint32_t current_tick() const { return current_tick_; }
  const StateVector& reality() const { return current_reality_; }
  const MatchConfig& config() const { return cfg_; }
  const Roster& roster() const { return roster_; }
  const WillTable& will_table() const { return will_; }
  std::int64_t deadline_us() const { return std::int64_t(cfg_.proposal_deadline_ms) * 1000; }
  std::uint64_t dropped_unknown() const { return dropped_unknown_; }

 private:
  MatchConfig cfg_;
  Roster roster_;
  WillTable will_;
  std::map<AgentId, double> supporter_will_;  // registration-time allocations
  Phase phase_ = Phase::Registration;
  std::uint32_t current_tick_ = 0;
  StateVector current_reality_;
  std::map<AgentId, StateVector> prev_proposals_;
  std::set<AgentId> on_time_prev_;
  SplitMix64 rng_;
  AgentId next_id_ = 1;
  std::uint64_t dropped_unknown_ = 0;
};

}  // namespace qcss
