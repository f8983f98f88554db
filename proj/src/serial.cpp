#include "serial.hpp"

namespace qcss::serial {

namespace {

json position_to_json(const Position& p) { return json::array({p.x, p.y}); }

Result<Position, std::string> position_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    return std::string("position must be a [x, y] number pair");
  }
  return Position{j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

Result<Team, std::string> team_from_json(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "home") return Team::Home;
    if (s == "guest") return Team::Guest;
  }
  return std::string("team must be \"home\" or \"guest\"");
}

Result<Role, std::string> role_from_json(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "player") return Role::Player;
    if (s == "supporter") return Role::Supporter;
  }
  return std::string("role must be \"player\" or \"supporter\"");
}

json state_to_json(const StateVector& s) {
  json home = json::array();
  json guest = json::array();
  for (int i = 0; i < kTeamSize; ++i) {
    home.push_back(position_to_json(s.home[i]));
    guest.push_back(position_to_json(s.guest[i]));
  }
  return json{{"ball", position_to_json(s.ball)},
              {"home", home},
              {"guest", guest},
              {"team", to_string(s.possessing_team)},
              {"shirt", s.possessing_player}};
}

Result<StateVector, std::string> state_from_json(const json& j) {
  if (!j.is_object()) return std::string("state must be an object");
  for (const char* key : {"ball", "home", "guest", "team", "shirt"}) {
    if (!j.contains(key)) return std::string("state missing field \"") + key + "\"";
  }
  StateVector s;
  auto ball = position_from_json(j["ball"]);
  if (!ball.ok()) return "ball: " + ball.error();
  s.ball = ball.value();

  for (const char* side : {"home", "guest"}) {
    const json& arr = j[side];
    if (!arr.is_array() || arr.size() != kTeamSize) {
      return std::string(side) + " must be an array of 11 positions";
    }
    for (int i = 0; i < kTeamSize; ++i) {
      auto p = position_from_json(arr[i]);
      if (!p.ok()) return std::string(side) + "[" + std::to_string(i) + "]: " + p.error();
      (side[0] == 'h' ? s.home : s.guest)[i] = p.value();
    }
  }
  auto team = team_from_json(j["team"]);
  if (!team.ok()) return team.error();
  s.possessing_team = team.value();
  if (!j["shirt"].is_number_unsigned() || j["shirt"].get<std::uint64_t>() < 1 ||
      j["shirt"].get<std::uint64_t>() > kTeamSize) {
    return std::string("shirt must be an integer in 1..11");
  }
  s.possessing_player = j["shirt"].get<std::uint8_t>();
  return s;
}

json tick_to_json(const TickRecord& r) {
  json received = json::array();
  for (const auto& [id, us] : r.proposals_received) received.push_back(json::array({id, us}));
  json entries = json::array();
  for (const auto& e : r.distribution.entries) {
    entries.push_back(json::array({e.agent, e.probability}));
  }
  json will = json::array();
  for (const auto& [id, w] : r.will) will.push_back(json::array({id, w}));
  return json{
      {"tick", r.tick},
      {"reality", state_to_json(r.reality)},
      {"received", received},
      {"eligible", r.eligible},
      {"dist",
       {{"entries", entries},
        {"fallback", r.distribution.fallback == Fallback::RepeatReality ? "repeat" : "none"}}},
      {"winner", r.winner ? json(*r.winner) : json(nullptr)},
      {"will", will},
  };
}

Result<TickRecord, std::string> tick_from_json(const json& j) {
  if (!j.is_object()) return std::string("tick record must be an object");
  for (const char* key : {"tick", "reality", "received", "eligible", "dist", "winner", "will"}) {
    if (!j.contains(key)) return std::string("tick record missing field \"") + key + "\"";
  }
  TickRecord r;
  r.tick = j["tick"].get<std::uint32_t>();
  auto state = state_from_json(j["reality"]);
  if (!state.ok()) return "reality: " + state.error();
  r.reality = state.value();

  for (const auto& item : j["received"]) {
    if (!item.is_array() || item.size() != 2) return std::string("received: bad entry");
    r.proposals_received.emplace_back(item[0].get<AgentId>(), item[1].get<std::int64_t>());
  }
  for (const auto& item : j["eligible"]) r.eligible.push_back(item.get<AgentId>());

  const json& dist = j["dist"];
  if (!dist.contains("entries") || !dist.contains("fallback")) {
    return std::string("dist missing entries/fallback");
  }
  for (const auto& item : dist["entries"]) {
    if (!item.is_array() || item.size() != 2) return std::string("dist: bad entry");
    r.distribution.entries.push_back({item[0].get<AgentId>(), item[1].get<double>()});
  }
  r.distribution.fallback =
      dist["fallback"] == "repeat" ? Fallback::RepeatReality : Fallback::None;

  if (!j["winner"].is_null()) r.winner = j["winner"].get<AgentId>();
  for (const auto& item : j["will"]) {
    if (!item.is_array() || item.size() != 2) return std::string("will: bad entry");
    r.will.emplace_back(item[0].get<AgentId>(), item[1].get<double>());
  }
  return r;
}

json behavior_to_json(const BehaviorSpec& spec) {
  json j{{"kind", spec.kind}};
  if (spec.kind == "player") {
    if (!spec.archetype.empty()) j["archetype"] = spec.archetype;
    j["max_speed"] = spec.max_speed;
  } else if (spec.kind == "supporter") {
    j["bias"] = spec.bias;
  }
  return j;
}

Result<BehaviorSpec, std::string> behavior_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    return std::string("behavior must be an object with a \"kind\"");
  }
  BehaviorSpec spec;
  spec.kind = j["kind"].get<std::string>();
  if (spec.kind != "echo" && spec.kind != "player" && spec.kind != "supporter") {
    return std::string("behavior kind must be echo, player or supporter");
  }
  if (j.contains("archetype")) {
    spec.archetype = j["archetype"].get<std::string>();
    if (!archetype_from_string(spec.archetype)) {
      return std::string("unknown archetype \"") + spec.archetype + "\"";
    }
  }
  if (j.contains("max_speed")) {
    spec.max_speed = j["max_speed"].get<double>();
    if (!(spec.max_speed > 0.0)) return std::string("max_speed must be positive");
  }
  if (j.contains("bias")) {
    spec.bias = j["bias"].get<double>();
    if (spec.bias < 0.0) return std::string("bias must be non-negative");
  }
  return spec;
}

}  // namespace qcss::serial
