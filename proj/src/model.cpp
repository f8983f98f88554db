#include "model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace qcss {

Team opponent(Team t) { return t == Team::Home ? Team::Guest : Team::Home; }

const char* to_string(Team t) { return t == Team::Home ? "home" : "guest"; }
const char* to_string(Role r) { return r == Role::Player ? "player" : "supporter"; }

const char* to_string(StateError e) {
  switch (e) {
    case StateError::NonFinite: return "NonFinite";
    case StateError::BadPossession: return "BadPossession";
    case StateError::OutOfBounds: return "OutOfBounds";
  }
  return "?";
}

const char* to_string(RosterError e) {
  switch (e) {
    case RosterError::RosterFull: return "RosterFull";
    case RosterError::DuplicateShirt: return "DuplicateShirt";
    case RosterError::DuplicateAgent: return "DuplicateAgent";
    case RosterError::BadShirt: return "BadShirt";
  }
  return "?";
}

const char* to_string(WillError e) {
  switch (e) {
    case WillError::UnknownAgent: return "UnknownAgent";
    case WillError::NegativeWill: return "NegativeWill";
    case WillError::PlayerSumMismatch: return "PlayerSumMismatch";
    case WillError::SupporterSumExceeded: return "SupporterSumExceeded";
  }
  return "?";
}

std::array<double, kCoordCount> StateVector::coords() const {
  std::array<double, kCoordCount> out;
  out[0] = ball.x;
  out[1] = ball.y;
  for (int i = 0; i < kTeamSize; ++i) {
    out[2 + 2 * i] = home[i].x;
    out[3 + 2 * i] = home[i].y;
    out[24 + 2 * i] = guest[i].x;
    out[25 + 2 * i] = guest[i].y;
  }
  return out;
}

bool bit_identical(const StateVector& a, const StateVector& b) {
  const auto ca = a.coords();
  const auto cb = b.coords();
  for (int i = 0; i < kCoordCount; ++i) {
    if (std::bit_cast<std::uint64_t>(ca[i]) != std::bit_cast<std::uint64_t>(cb[i])) return false;
  }
  return a.possessing_team == b.possessing_team && a.possessing_player == b.possessing_player;
}

double distance(const StateVector& a, const StateVector& b) {
  auto sq = [](double d) { return d * d; };
  double sum = sq(a.ball.x - b.ball.x) + sq(a.ball.y - b.ball.y);
  for (int i = 0; i < kTeamSize; ++i) {
    sum += sq(a.home[i].x - b.home[i].x) + sq(a.home[i].y - b.home[i].y);
    sum += sq(a.guest[i].x - b.guest[i].x) + sq(a.guest[i].y - b.guest[i].y);
  }
  return std::sqrt(sum);
}

std::optional<StateError> validate_state_vector(const StateVector& s, const Pitch& pitch,
                                                BoundsCheck bounds) {
  const double x_lo = -kPitchMargin, x_hi = pitch.length + kPitchMargin;
  const double y_lo = -kPitchMargin, y_hi = pitch.width + kPitchMargin;
  const bool check_bounds = bounds == BoundsCheck::Reject;
  auto bad = [&](const Position& p) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) return std::optional(StateError::NonFinite);
    if (check_bounds && (p.x < x_lo || p.x > x_hi || p.y < y_lo || p.y > y_hi)) {
      return std::optional(StateError::OutOfBounds);
    }
    return std::optional<StateError>();
  };
  // Finiteness of every position is checked before any bounds verdict, so
  // a NaN anywhere reports NonFinite even with bounds checking on.
  std::optional<StateError> bounds_error;
  auto scan = [&](const Position& p) -> std::optional<StateError> {
    auto err = bad(p);
    if (err == StateError::NonFinite) return err;
    if (err && !bounds_error) bounds_error = err;
    return std::nullopt;
  };
  if (auto err = scan(s.ball)) return err;
  for (int i = 0; i < kTeamSize; ++i) {
    if (auto err = scan(s.home[i])) return err;
    if (auto err = scan(s.guest[i])) return err;
  }
  if (s.possessing_player < 1 || s.possessing_player > kTeamSize) {
    return StateError::BadPossession;
  }
  if (s.possessing_team != Team::Home && s.possessing_team != Team::Guest) {
    return StateError::BadPossession;
  }
  if (bounds_error) return bounds_error;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Roster

bool Roster::known(AgentId id) const {
  return player(id).has_value() || supporter(id).has_value();
}

Result<std::monostate, RosterError> Roster::add_player(AgentId id, Team team,
                                                       std::uint8_t shirt) {
  if (shirt < 1 || shirt > kTeamSize) return RosterError::BadShirt;
  if (players_.size() >= kMaxPlayers) return RosterError::RosterFull;
  if (known(id)) return RosterError::DuplicateAgent;
  for (const auto& p : players_) {
    if (p.team == team && p.shirt == shirt) return RosterError::DuplicateShirt;
  }
  players_.push_back({id, team, shirt});
  std::sort(players_.begin(), players_.end(),
            [](const PlayerEntry& a, const PlayerEntry& b) { return a.id < b.id; });
  return std::monostate{};
}

Result<std::monostate, RosterError> Roster::add_supporter(AgentId id, Team favored) {
  if (known(id)) return RosterError::DuplicateAgent;
  supporters_.push_back({id, favored});
  std::sort(supporters_.begin(), supporters_.end(),
            [](const SupporterEntry& a, const SupporterEntry& b) { return a.id < b.id; });
  return std::monostate{};
}

std::optional<Role> Roster::role_of(AgentId id) const {
  if (player(id)) return Role::Player;
  if (supporter(id)) return Role::Supporter;
  return std::nullopt;
}

std::optional<PlayerEntry> Roster::player(AgentId id) const {
  auto it = std::lower_bound(players_.begin(), players_.end(), id,
                             [](const PlayerEntry& e, AgentId t) { return e.id < t; });
  if (it != players_.end() && it->id == id) return *it;
  return std::nullopt;
}

std::optional<SupporterEntry> Roster::supporter(AgentId id) const {
  auto it = std::lower_bound(supporters_.begin(), supporters_.end(), id,
                             [](const SupporterEntry& e, AgentId t) { return e.id < t; });
  if (it != supporters_.end() && it->id == id) return *it;
  return std::nullopt;
}

std::optional<std::uint8_t> Roster::free_shirt(Team team) const {
  for (std::uint8_t shirt = 1; shirt <= kTeamSize; ++shirt) {
    bool taken = false;
    for (const auto& p : players_) {
      if (p.team == team && p.shirt == shirt) {
        taken = true;
        break;
      }
    }
    if (!taken) return shirt;
  }
  return std::nullopt;
}

std::vector<AgentId> Roster::all_ids() const {
  std::vector<AgentId> ids;
  ids.reserve(size());
  for (const auto& p : players_) ids.push_back(p.id);
  for (const auto& s : supporters_) ids.push_back(s.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

// ---------------------------------------------------------------------------
// WillTable

Result<WillTable, WillError> WillTable::create(const Roster& roster,
                                               const std::map<AgentId, double>& values) {
  std::vector<WillEntry> entries;
  entries.reserve(values.size());
  for (const auto& p : roster.players()) {
    auto it = values.find(p.id);
    if (it == values.end()) return WillError::UnknownAgent;
    entries.push_back({p.id, Role::Player, it->second});
  }
  for (const auto& s : roster.supporters()) {
    auto it = values.find(s.id);
    if (it == values.end()) return WillError::UnknownAgent;
    entries.push_back({s.id, Role::Supporter, it->second});
  }
  if (values.size() != entries.size()) return WillError::UnknownAgent;
  std::sort(entries.begin(), entries.end(),
            [](const WillEntry& a, const WillEntry& b) { return a.id < b.id; });
  return from_entries(std::move(entries));
}

WillTable WillTable::uniform_players(const Roster& roster,
                                     const std::map<AgentId, double>& supporter_will) {
  WillTable table;
  for (const auto& p : roster.players()) table.entries_.push_back({p.id, Role::Player, 1.0});
  for (const auto& s : roster.supporters()) {
    auto it = supporter_will.find(s.id);
    table.entries_.push_back(
        {s.id, Role::Supporter, it == supporter_will.end() ? 0.0 : it->second});
  }
  std::sort(table.entries_.begin(), table.entries_.end(),
            [](const WillEntry& a, const WillEntry& b) { return a.id < b.id; });
  table.recompute_sums();
  return table;
}

Result<WillTable, WillError> WillTable::from_entries(std::vector<WillEntry> entries) {
  WillTable table;
  table.entries_ = std::move(entries);
  for (const auto& e : table.entries_) {
    if (e.value < 0.0 || !std::isfinite(e.value)) return WillError::NegativeWill;
  }
  table.recompute_sums();
  if (std::abs(table.player_sum_ - double(table.player_count_)) > kWillSumTolerance) {
    return WillError::PlayerSumMismatch;
  }
  if (table.supporter_sum_ > 1.0 + kWillSumTolerance) {
    return WillError::SupporterSumExceeded;
  }
  return table;
}

const WillEntry* WillTable::find(AgentId id) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), id,
      [](const WillEntry& e, AgentId target) { return e.id < target; });
  return it != entries_.end() && it->id == id ? &*it : nullptr;
}

double WillTable::will(AgentId id) const {
  const WillEntry* e = find(id);
  return e ? e->value : 0.0;
}

Role WillTable::role_of(AgentId id) const {
  const WillEntry* e = find(id);
  return e ? e->role : Role::Supporter;
}

bool WillTable::contains(AgentId id) const { return find(id) != nullptr; }

Result<std::monostate, WillError> WillTable::set(AgentId id, double w) {
  auto* entry = const_cast<WillEntry*>(find(id));
  if (!entry) return WillError::UnknownAgent;
  if (w < 0.0 || !std::isfinite(w)) return WillError::NegativeWill;
  const double old = entry->value;
  entry->value = w;
  recompute_sums();
  if (!sums_ok()) {
    entry->value = old;
    recompute_sums();
    return entry->role == Role::Player ? WillError::PlayerSumMismatch
                                       : WillError::SupporterSumExceeded;
  }
  return std::monostate{};
}

Result<std::monostate, WillError> WillTable::replace_all(
    const std::map<AgentId, double>& values) {
  if (values.size() != entries_.size()) return WillError::UnknownAgent;
  std::vector<WillEntry> next = entries_;
  for (auto& e : next) {
    auto it = values.find(e.id);
    if (it == values.end()) return WillError::UnknownAgent;
    e.value = it->second;
  }
  auto table = from_entries(std::move(next));
  if (!table.ok()) return table.error();
  *this = std::move(table.value());
  return std::monostate{};
}

void WillTable::recompute_sums() {
  player_sum_ = 0.0;
  supporter_sum_ = 0.0;
  player_count_ = 0;
  for (const auto& e : entries_) {
    if (e.role == Role::Player) {
      player_sum_ += e.value;
      ++player_count_;
    } else {
      supporter_sum_ += e.value;
    }
  }
}

bool WillTable::sums_ok() const {
  return std::abs(player_sum_ - double(player_count_)) <= kWillSumTolerance &&
         supporter_sum_ <= 1.0 + kWillSumTolerance;
}

// ---------------------------------------------------------------------------
// Kickoff

Position formation_anchor(const Pitch& pitch, Team team, int shirt) {
  // 4-4-2, expressed as fractions of the pitch; home attacks toward +x.
  static constexpr double kGrid[kTeamSize][2] = {
      {0.05, 0.50},                                              // 1: goalkeeper
      {0.20, 0.20}, {0.20, 0.40}, {0.20, 0.60}, {0.20, 0.80},    // 2-5: defenders
      {0.35, 0.20}, {0.35, 0.40}, {0.35, 0.60}, {0.35, 0.80},    // 6-9: midfielders
      {0.45, 0.35}, {0.45, 0.65},                                // 10-11: forwards
  };
  const double fx = kGrid[shirt - 1][0];
  const double fy = kGrid[shirt - 1][1];
  const double x = team == Team::Home ? fx * pitch.length : (1.0 - fx) * pitch.length;
  return {x, fy * pitch.width};
}

StateVector make_kickoff_lineup(const Pitch& pitch) {
  StateVector s;
  s.ball = pitch.center();
  for (int shirt = 1; shirt <= kTeamSize; ++shirt) {
    s.home[shirt - 1] = formation_anchor(pitch, Team::Home, shirt);
    s.guest[shirt - 1] = formation_anchor(pitch, Team::Guest, shirt);
  }
  s.possessing_team = Team::Home;
  int best_shirt = 1;
  double best_d2 = -1.0;
  for (int shirt = 1; shirt <= kTeamSize; ++shirt) {
    const Position& p = s.home[shirt - 1];
    const double dx = p.x - s.ball.x, dy = p.y - s.ball.y;
    const double d2 = dx * dx + dy * dy;
    if (best_d2 < 0.0 || d2 < best_d2) {
      best_d2 = d2;
      best_shirt = shirt;
    }
  }
  s.possessing_player = static_cast<std::uint8_t>(best_shirt);
  return s;
}

std::optional<std::string> MatchConfig::validate() const {
  if (pitch.length <= 0.0 || pitch.width <= 0.0) return "pitch dimensions must be positive";
  if (proposal_deadline_ms >= tick_period_ms) {
    return "proposal_deadline_ms must be smaller than tick_period_ms";
  }
  if (match_ticks < 1) return "match_ticks must be at least 1";
  if (!(will_update_rate >= 0.0 && will_update_rate <= 1.0)) {
    return "will_update_rate must lie in [0,1]";
  }
  if (supporter_budget_home < 0.0 || supporter_budget_guest < 0.0 ||
      supporter_budget_home + supporter_budget_guest > 1.0 + kWillSumTolerance) {
    return "supporter budgets must be non-negative and sum to at most 1";
  }
  return std::nullopt;
}

}  // namespace qcss
