#include "scheduler.hpp"

#include <algorithm>
#include <cassert>

namespace qcss {

const char* to_string(RegisterError e) {
  switch (e) {
    case RegisterError::RosterFull: return "RosterFull";
    case RegisterError::DuplicateShirt: return "DuplicateShirt";
    case RegisterError::MatchAlreadyStarted: return "MatchAlreadyStarted";
    case RegisterError::BadShirt: return "BadShirt";
  }
  return "?";
}

TickEngine::TickEngine(MatchConfig cfg) : cfg_(cfg), rng_(cfg.rng_seed) {}

Result<Registration, RegisterError> TickEngine::register_agent(
    Role role, Team team, std::optional<std::uint8_t> shirt) {
  if (phase_ != Phase::Registration) return RegisterError::MatchAlreadyStarted;
  const AgentId id = next_id_;

  if (role == Role::Player) {
    std::uint8_t chosen = 0;
    if (shirt) {
      chosen = *shirt;
    } else {
      auto fs = roster_.free_shirt(team);
      if (!fs) return RegisterError::RosterFull;
      chosen = *fs;
    }
    auto added = roster_.add_player(id, team, chosen);
    if (!added.ok()) {
      switch (added.error()) {
        case RosterError::RosterFull: return RegisterError::RosterFull;
        case RosterError::DuplicateShirt: return RegisterError::DuplicateShirt;
        case RosterError::BadShirt: return RegisterError::BadShirt;
        case RosterError::DuplicateAgent: return RegisterError::RosterFull;
      }
    }
    ++next_id_;
    return Registration{id, 1.0, chosen};
  }

  // Supporter: equal split of the favored team's budget over the expected
  // head count, clamped to whatever budget is left.
  const bool home = team == Team::Home;
  const double budget = home ? cfg_.supporter_budget_home : cfg_.supporter_budget_guest;
  const std::uint32_t expected =
      std::max<std::uint32_t>(1, home ? cfg_.expected_supporters_home
                                      : cfg_.expected_supporters_guest);
  double used = 0.0;
  for (const auto& s : roster_.supporters()) {
    if (s.favored == team) used += supporter_will_[s.id];
  }
  const double share = std::max(0.0, std::min(budget / expected, budget - used));

  auto added = roster_.add_supporter(id, team);
  if (!added.ok()) return RegisterError::RosterFull;
  supporter_will_[id] = share;
  ++next_id_;
  return Registration{id, share, 0};
}

Result<std::monostate, std::string> TickEngine::adopt_roster(const Roster& roster,
                                                             const WillTable& will) {
  if (phase_ != Phase::Registration) return std::string("match already started");
  for (AgentId id : roster.all_ids()) {
    if (!will.contains(id)) return std::string("will table does not cover the roster");
  }
  roster_ = roster;
  will_ = will;
  supporter_will_.clear();
  for (const auto& s : roster_.supporters()) supporter_will_[s.id] = will.will(s.id);
  AgentId max_id = 0;
  for (AgentId id : roster_.all_ids()) max_id = std::max(max_id, id);
  next_id_ = max_id + 1;
  return std::monostate{};
}

Result<std::monostate, std::string> TickEngine::start(std::optional<StateVector> lineup) {
  if (phase_ != Phase::Registration) return std::string("match already started");
  if (roster_.empty()) return std::string("cannot start with an empty roster");
  if (auto problem = cfg_.validate()) return *problem;

  if (will_.entries().empty()) {
    will_ = WillTable::uniform_players(roster_, supporter_will_);
  }
  StateVector initial = lineup ? *lineup : make_kickoff_lineup(cfg_.pitch);
  if (auto err = validate_state_vector(initial, cfg_.pitch, BoundsCheck::Reject)) {
    return std::string("invalid starting lineup: ") + to_string(*err);
  }
  current_reality_ = initial;
  current_tick_ = 0;
  prev_proposals_.clear();
  on_time_prev_.clear();
  rng_ = SplitMix64(cfg_.rng_seed);
  phase_ = Phase::Broadcasting;
  return std::monostate{};
}

TickRecord TickEngine::run_tick(std::span<const TimedProposal> proposals) {
  assert(phase_ == Phase::Broadcasting);

  TickRecord record;
  record.tick = current_tick_;
  record.reality = current_reality_;

  // First arrival per agent wins; later ones are recorded but ignored.
  std::map<AgentId, const TimedProposal*> first;
  for (const auto& p : proposals) {
    if (!roster_.role_of(p.agent)) {
      ++dropped_unknown_;
      continue;
    }
    record.proposals_received.emplace_back(p.agent, p.arrival_us);
    first.try_emplace(p.agent, &p);
  }

  std::set<AgentId> on_time_now;
  for (const auto& [id, p] : first) {
    if (p->arrival_us >= deadline_us()) continue;
    if (validate_state_vector(p->state, cfg_.pitch, cfg_.bounds_check)) continue;
    on_time_now.insert(id);
  }

  std::vector<ScoredProposal> scored;
  if (current_tick_ == 0) {
    // Bootstrap: nobody has a previous proposal yet, which is the same
    // degenerate case as an all-perfect role, so everyone scores its will.
    for (AgentId id : on_time_now) scored.push_back({id, will_.will(id), true});
    record.distribution = selection_distribution(scored);
  } else {
    std::vector<ScoreInput> inputs;
    for (AgentId id : on_time_now) {
      if (!on_time_prev_.count(id)) continue;
      auto it = prev_proposals_.find(id);
      assert(it != prev_proposals_.end());
      inputs.push_back({id, *roster_.role_of(id), will_.will(id), &it->second});
    }
    scored = soccer_consciousness(inputs, current_reality_);
    record.distribution = late_filtered_distribution(on_time_now, on_time_prev_, scored);
  }
  for (const auto& s : scored) record.eligible.push_back(s.agent);
  std::sort(record.eligible.begin(), record.eligible.end());

  record.winner = sample(record.distribution, rng_);
  for (const auto& [id, entry] : will_.entries()) {
    record.will.emplace_back(id, entry.second);
  }

  will_ = update_will(will_, scored, cfg_.will_update_rate);

  StateVector next_reality = current_reality_;
  if (record.winner) {
    next_reality = first.at(*record.winner)->state;
  }
  prev_proposals_.clear();
  for (AgentId id : on_time_now) prev_proposals_[id] = first.at(id)->state;
  on_time_prev_ = std::move(on_time_now);

  current_reality_ = next_reality;
  ++current_tick_;
  if (current_tick_ >= cfg_.match_ticks) phase_ = Phase::Finished;
  return record;
}

}  // namespace qcss
