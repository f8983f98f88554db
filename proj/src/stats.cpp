#include "stats.hpp"

namespace qcss {

using nlohmann::json;

StatsAccumulator::StatsAccumulator(const std::vector<AgentDescriptor>& roster,
                                   const Pitch& pitch, std::int64_t deadline_us)
    : pitch_(pitch), deadline_us_(deadline_us) {
  for (const auto& a : roster) {
    info_[a.id] = {a.role, a.team};
    acc_.agents[a.id];  // ensure every agent appears, even with zero wins
  }
}

void StatsAccumulator::add(const TickRecord& record) {
  acc_.ticks++;
  acc_.ball_mean_x += record.reality.ball.x;
  acc_.ball_mean_y += record.reality.ball.y;
  if (record.reality.ball.x < pitch_.length / 2.0) acc_.home_half_share += 1.0;
  if (record.reality.ball.x > pitch_.length / 2.0) acc_.away_half_share += 1.0;

  for (const auto& [id, arrival] : record.proposals_received) {
    if (arrival >= deadline_us_) acc_.agents[id].late_count++;
  }

  if (record.winner) {
    const auto& info = info_.at(*record.winner);
    acc_.agents[*record.winner].wins++;
    (info.role == Role::Player ? acc_.players : acc_.supporters).wins++;
    if (info.role == Role::Supporter) {
      (info.team == Team::Home ? acc_.supporter_wins_home : acc_.supporter_wins_guest)++;
    }
  } else {
    acc_.stalls++;
  }

  if (!record.distribution.entries.empty()) {
    scored_ticks_++;
    double mass_players = 0.0, mass_supporters = 0.0;
    double mass_home = 0.0, mass_guest = 0.0;
    for (const auto& e : record.distribution.entries) {
      const auto& info = info_.at(e.agent);
      if (info.role == Role::Player) {
        mass_players += e.probability;
      } else {
        mass_supporters += e.probability;
        (info.team == Team::Home ? mass_home : mass_guest) += e.probability;
      }
    }
    mass_sum_players_ += mass_players;
    mass_sum_supporters_ += mass_supporters;
    acc_.supporter_mass_home += mass_home;
    acc_.supporter_mass_guest += mass_guest;
    acc_.supporter_mass_var_home += mass_home * (1.0 - mass_home);
    acc_.supporter_mass_var_guest += mass_guest * (1.0 - mass_guest);
  }
}

MatchStats StatsAccumulator::finish() const {
  MatchStats out = acc_;
  if (out.ticks == 0) return out;
  const double ticks = double(out.ticks);
  out.stall_share = double(out.stalls) / ticks;
  for (auto& [id, a] : out.agents) a.selection_share = double(a.wins) / ticks;
  out.players.selection_share = double(out.players.wins) / ticks;
  out.supporters.selection_share = double(out.supporters.wins) / ticks;
  if (scored_ticks_ > 0) {
    out.players.prob_mass_mean = mass_sum_players_ / double(scored_ticks_);
    out.supporters.prob_mass_mean = mass_sum_supporters_ / double(scored_ticks_);
  }
  out.ball_mean_x /= ticks;
  out.ball_mean_y /= ticks;
  out.home_half_share /= ticks;
  out.away_half_share /= ticks;
  return out;
}

MatchStats compute_stats(const TraceData& trace) {
  const auto& cfg = trace.header.setup.config;
  StatsAccumulator acc(trace.header.roster, cfg.pitch,
                       std::int64_t(cfg.proposal_deadline_ms) * 1000);
  for (const auto& tick : trace.ticks) acc.add(tick);
  return acc.finish();
}

json MatchStats::to_json() const {
  json agents_json = json::object();
  for (const auto& [id, a] : agents) {
    agents_json[std::to_string(id)] = {{"wins", a.wins},
                                       {"selection_share", a.selection_share},
                                       {"late_count", a.late_count}};
  }
  auto role_json = [](const RoleStats& r) {
    return json{{"wins", r.wins},
                {"selection_share", r.selection_share},
                {"prob_mass_mean", r.prob_mass_mean}};
  };
  return json{
      {"ticks", ticks},
      {"stalls", stalls},
      {"stall_share", stall_share},
      {"agents", agents_json},
      {"players", role_json(players)},
      {"supporters", role_json(supporters)},
      {"supporter_mass", {{"home", supporter_mass_home}, {"guest", supporter_mass_guest}}},
      {"supporter_mass_var",
       {{"home", supporter_mass_var_home}, {"guest", supporter_mass_var_guest}}},
      {"supporter_wins", {{"home", supporter_wins_home}, {"guest", supporter_wins_guest}}},
      {"ball", {{"mean_x", ball_mean_x}, {"mean_y", ball_mean_y}}},
      {"occupancy", {{"home_half", home_half_share}, {"away_half", away_half_share}}},
  };
}

}  // namespace qcss
