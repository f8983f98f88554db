#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "result.hpp"

namespace qcss {

using AgentId = std::uint32_t;

inline constexpr int kTeamSize = 11;
inline constexpr int kCoordCount = 46;  // ball + 22 players, x and y each
inline constexpr int kMaxPlayers = 2 * kTeamSize;

enum class Team : std::uint8_t { Home = 0, Guest = 1 };
enum class Role : std::uint8_t { Player = 0, Supporter = 1 };

Team opponent(Team t);
const char* to_string(Team t);
const char* to_string(Role r);

struct Position {
  double x = 0.0;
  double y = 0.0;
};

// The 25-tuple world snapshot: ball, eleven home and eleven guest positions,
// plus which team and which shirt touched the ball last. Agents propose whole
// snapshots; the scheduler never edits one.
struct StateVector {
  Position ball;
  std::array<Position, kTeamSize> home{};
  std::array<Position, kTeamSize> guest{};
  Team possessing_team = Team::Home;
  std::uint8_t possessing_player = 1;  // shirt number, 1..11

  Position& player(Team t, int shirt) {
    return t == Team::Home ? home[shirt - 1] : guest[shirt - 1];
  }
  const Position& player(Team t, int shirt) const {
    return t == Team::Home ? home[shirt - 1] : guest[shirt - 1];
  }

  // Flattened view of the 46 continuous coordinates, in wire order.
  std::array<double, kCoordCount> coords() const;
};

// Compares the full tuple, doubles by bit pattern (so -0.0 != +0.0 and
// replays can be checked for exact identity).
bool bit_identical(const StateVector& a, const StateVector& b);

// Euclidean distance over the 46 continuous coordinates. The two possession
// fields are categorical and do not contribute.
double distance(const StateVector& a, const StateVector& b);

struct Pitch {
  double length = 105.0;
  double width = 68.0;

  Position center() const { return {length / 2.0, width / 2.0}; }
};

enum class BoundsCheck : std::uint8_t { Off, Reject };

enum class StateError : std::uint8_t { NonFinite, BadPossession, OutOfBounds };

const char* to_string(StateError e);

// How far outside the pitch rectangle a position may sit before a
// bounds-checked validation rejects it.
inline constexpr double kPitchMargin = 5.0;

// Checks finiteness and possession ranges always; pitch bounds (with the
// 5 m margin) only when `bounds` is Reject. Never mutates the vector: the
// scheduler imposes no physics, so nothing is clamped here.
std::optional<StateError> validate_state_vector(const StateVector& s, const Pitch& pitch,
                                                BoundsCheck bounds);

struct PlayerEntry {
  AgentId id = 0;
  Team team = Team::Home;
  std::uint8_t shirt = 0;  // 1..11
};

struct SupporterEntry {
  AgentId id = 0;
  Team favored = Team::Home;
};

enum class RosterError : std::uint8_t {
  RosterFull,
  DuplicateShirt,
  DuplicateAgent,
  BadShirt,
};

const char* to_string(RosterError e);

// The agent set, partitioned into players (at most 22, unique team+shirt)
// and supporters. Entries are kept sorted by agent id.
class Roster {
 public:
  Result<std::monostate, RosterError> add_player(AgentId id, Team team, std::uint8_t shirt);
  Result<std::monostate, RosterError> add_supporter(AgentId id, Team favored);

  std::optional<Role> role_of(AgentId id) const;
  std::optional<PlayerEntry> player(AgentId id) const;
  std::optional<SupporterEntry> supporter(AgentId id) const;
  std::optional<std::uint8_t> free_shirt(Team team) const;

  const std::vector<PlayerEntry>& players() const { return players_; }
  const std::vector<SupporterEntry>& supporters() const { return supporters_; }
  std::size_t size() const { return players_.size() + supporters_.size(); }
  bool empty() const { return players_.empty() && supporters_.empty(); }

  // All agent ids, ascending.
  std::vector<AgentId> all_ids() const;

 private:
  bool known(AgentId id) const;

  std::vector<PlayerEntry> players_;
  std::vector<SupporterEntry> supporters_;
};

enum class WillError : std::uint8_t {
  UnknownAgent,
  NegativeWill,
  PlayerSumMismatch,
  SupporterSumExceeded,
};

const char* to_string(WillError e);

inline constexpr double kWillSumTolerance = 1e-9;

struct WillEntry {
  AgentId id = 0;
  Role role = Role::Player;
  double value = 0.0;
};

// Per-agent power-of-will weights. Two hard constraints: the player values
// sum to the player count and the supporter values sum to at most 1. Any
// mutation that would break them fails; nothing renormalizes silently.
// Stored as a flat id-sorted vector: lookups are binary searches and the
// per-tick copies in the will update stay cheap at swarm sizes.
class WillTable {
 public:
  WillTable() = default;

  // Builds a table from explicit values; every roster member must be covered.
  static Result<WillTable, WillError> create(const Roster& roster,
                                             const std::map<AgentId, double>& values);

  // Builds the default table: players at 1, supporters as given (pass the
  // per-agent allocations from registration).
  static WillTable uniform_players(const Roster& roster,
                                   const std::map<AgentId, double>& supporter_will);

  // Adopts entries that are already id-sorted and constraint-preserving
  // (the will-update fast path). Fails on any violation.
  static Result<WillTable, WillError> from_entries(std::vector<WillEntry> entries);

  double will(AgentId id) const;
  Role role_of(AgentId id) const;
  bool contains(AgentId id) const;

  double player_sum() const { return player_sum_; }
  double supporter_sum() const { return supporter_sum_; }
  std::size_t player_count() const { return player_count_; }

  // Replaces one agent's value; fails unless both role sums still hold.
  Result<std::monostate, WillError> set(AgentId id, double w);

  // Wholesale replacement used by the will-update step, which renormalizes
  // by contract. Values must be non-negative and satisfy both constraints.
  Result<std::monostate, WillError> replace_all(const std::map<AgentId, double>& values);

  const std::vector<WillEntry>& entries() const { return entries_; }

 private:
  const WillEntry* find(AgentId id) const;
  void recompute_sums();
  bool sums_ok() const;

  std::vector<WillEntry> entries_;  // ascending by id
  double player_sum_ = 0.0;
  double supporter_sum_ = 0.0;
  std::size_t player_count_ = 0;
};

// Runtime parameters of one match. Roster and will table are assembled by
// the scheduler's registration phase and live alongside this.
struct MatchConfig {
  Pitch pitch;
  std::uint32_t tick_period_ms = 100;
  std::uint32_t proposal_deadline_ms = 80;
  std::uint32_t match_ticks = 6000;
  std::uint64_t rng_seed = 0;
  BoundsCheck bounds_check = BoundsCheck::Off;
  double will_update_rate = 0.1;  // alpha in [0,1]
  // Supporter registration budget: favored-team budgets must sum to <= 1.
  double supporter_budget_home = 0.5;
  double supporter_budget_guest = 0.5;
  std::uint32_t expected_supporters_home = 0;
  std::uint32_t expected_supporters_guest = 0;

  std::optional<std::string> validate() const;
};

// Deterministic kickoff snapshot: ball at the pitch center, both teams in a
// mirrored 4-4-2 grid, home team in possession through the shirt nearest the
// ball (lowest shirt on ties).
StateVector make_kickoff_lineup(const Pitch& pitch);

// The 4-4-2 anchor grid used both for kickoff and for the reference players'
// formation anchors. Shirt 1 is the goalkeeper.
Position formation_anchor(const Pitch& pitch, Team team, int shirt);

}  // namespace qcss
