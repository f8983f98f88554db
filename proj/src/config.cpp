#include "config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "serial.hpp"

namespace qcss {

using nlohmann::json;

namespace {

struct FieldError {
  std::string message;
};

// Pulls a value out of `j` with type and range checks, building the
// dotted-path diagnostics the CLI prints on bad configs.
class Fields {
 public:
  Fields(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw FieldError{path_ + ": must be an object"};
  }

  ~Fields() = default;

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) {
        throw FieldError{path_ + ": unknown field \"" + it.key() + "\""};
      }
    }
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key);
  }

  template <typename T>
  void get(const std::string& key, T& out) {
    if (!has(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const json::exception&) {
      throw FieldError{path_ + "." + key + ": wrong type"};
    }
  }

  const json& raw(const std::string& key) {
    seen_.insert(key);
    return j_.at(key);
  }

  [[noreturn]] void fail(const std::string& key, const std::string& why) const {
    throw FieldError{path_ + "." + key + ": " + why};
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

TeamPlayersSpec parse_players(const json& j, const std::string& path, TeamPlayersSpec spec) {
  Fields f(j, path);
  f.get("count", spec.count);
  f.get("behavior", spec.behavior);
  f.get("max_speed", spec.max_speed);
  f.finish();
  if (spec.count > kTeamSize) f.fail("count", "must be at most 11");
  if (spec.behavior != "reference" && spec.behavior != "echo") {
    f.fail("behavior", "must be \"reference\" or \"echo\"");
  }
  if (!(spec.max_speed > 0.0)) f.fail("max_speed", "must be positive");
  return spec;
}

TeamSupportersSpec parse_supporters(const json& j, const std::string& path,
                                    TeamSupportersSpec spec) {
  Fields f(j, path);
  f.get("count", spec.count);
  f.get("budget", spec.budget);
  f.get("behavior", spec.behavior);
  f.get("bias", spec.bias);
  f.finish();
  if (spec.budget < 0.0) f.fail("budget", "must be non-negative");
  if (spec.behavior != "bias" && spec.behavior != "echo") {
    f.fail("behavior", "must be \"bias\" or \"echo\"");
  }
  if (spec.bias < 0.0) f.fail("bias", "must be non-negative");
  return spec;
}

}  // namespace

Result<MatchSetup, std::string> setup_from_json(const json& j) {
  try {
    MatchSetup setup;
    MatchConfig& cfg = setup.config;
    Fields f(j, "config");

    if (f.has("pitch")) {
      Fields p(f.raw("pitch"), "pitch");
      p.get("length", cfg.pitch.length);
      p.get("width", cfg.pitch.width);
      p.finish();
    }
    f.get("tick_period_ms", cfg.tick_period_ms);
    f.get("proposal_deadline_ms", cfg.proposal_deadline_ms);
    f.get("match_ticks", cfg.match_ticks);
    f.get("seed", cfg.rng_seed);
    f.get("will_update_rate", cfg.will_update_rate);
    if (f.has("bounds_check")) {
      const auto v = f.raw("bounds_check").get<std::string>();
      if (v == "off") {
        cfg.bounds_check = BoundsCheck::Off;
      } else if (v == "reject") {
        cfg.bounds_check = BoundsCheck::Reject;
      } else {
        f.fail("bounds_check", "must be \"off\" or \"reject\"");
      }
    }
    f.get("transport", setup.transport);
    f.get("port", setup.port);
    f.get("agent_deadline_margin_ms", setup.agent_deadline_margin_ms);

    if (f.has("players")) {
      Fields p(f.raw("players"), "players");
      if (p.has("home")) {
        setup.players_home = parse_players(p.raw("home"), "players.home", setup.players_home);
      }
      if (p.has("guest")) {
        setup.players_guest =
            parse_players(p.raw("guest"), "players.guest", setup.players_guest);
      }
      p.finish();
    }
    if (f.has("supporters")) {
      Fields s(f.raw("supporters"), "supporters");
      if (s.has("home")) {
        setup.supporters_home =
            parse_supporters(s.raw("home"), "supporters.home", setup.supporters_home);
      }
      if (s.has("guest")) {
        setup.supporters_guest =
            parse_supporters(s.raw("guest"), "supporters.guest", setup.supporters_guest);
      }
      s.finish();
    }
    if (f.has("starting_lineup") && !f.raw("starting_lineup").is_null()) {
      auto state = serial::state_from_json(f.raw("starting_lineup"));
      if (!state.ok()) f.fail("starting_lineup", state.error());
      setup.starting_lineup = state.value();
    }
    f.finish();

    if (setup.transport != "inproc" && setup.transport != "loopback") {
      f.fail("transport", "must be \"inproc\" or \"loopback\"");
    }

    cfg.supporter_budget_home = setup.supporters_home.budget;
    cfg.supporter_budget_guest = setup.supporters_guest.budget;
    cfg.expected_supporters_home = setup.supporters_home.count;
    cfg.expected_supporters_guest = setup.supporters_guest.count;

    if (setup.players_home.count + setup.players_guest.count + setup.supporters_home.count +
            setup.supporters_guest.count ==
        0) {
      return std::string("config: no agents configured");
    }
    if (auto problem = cfg.validate()) return std::string("config: ") + *problem;
    return setup;
  } catch (const FieldError& e) {
    return e.message;
  }
}

Result<MatchSetup, std::string> setup_from_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    // Re-parse with exceptions to surface the byte position.
    try {
      (void)json::parse(text);
    } catch (const json::parse_error& e) {
      return std::string(e.what());
    }
    return std::string("config: invalid JSON");
  }
  return setup_from_json(j);
}

Result<MatchSetup, std::string> load_setup(const std::string& path) {
  std::ifstream in(path);
  if (!in) return "cannot open config file: " + path;
  std::stringstream buffer;
  buffer << in.rdbuf();
  auto setup = setup_from_text(buffer.str());
  if (!setup.ok()) return path + ": " + setup.error();
  return setup;
}

json setup_to_json(const MatchSetup& setup) {
  const MatchConfig& cfg = setup.config;
  json j{
      {"pitch", {{"length", cfg.pitch.length}, {"width", cfg.pitch.width}}},
      {"tick_period_ms", cfg.tick_period_ms},
      {"proposal_deadline_ms", cfg.proposal_deadline_ms},
      {"match_ticks", cfg.match_ticks},
      {"seed", cfg.rng_seed},
      {"will_update_rate", cfg.will_update_rate},
      {"bounds_check", cfg.bounds_check == BoundsCheck::Reject ? "reject" : "off"},
      {"transport", setup.transport},
      {"port", setup.port},
      {"agent_deadline_margin_ms", setup.agent_deadline_margin_ms},
      {"players",
       {{"home",
         {{"count", setup.players_home.count},
          {"behavior", setup.players_home.behavior},
          {"max_speed", setup.players_home.max_speed}}},
        {"guest",
         {{"count", setup.players_guest.count},
          {"behavior", setup.players_guest.behavior},
          {"max_speed", setup.players_guest.max_speed}}}}},
      {"supporters",
       {{"home",
         {{"count", setup.supporters_home.count},
          {"budget", setup.supporters_home.budget},
          {"behavior", setup.supporters_home.behavior},
          {"bias", setup.supporters_home.bias}}},
        {"guest",
         {{"count", setup.supporters_guest.count},
          {"budget", setup.supporters_guest.budget},
          {"behavior", setup.supporters_guest.behavior},
          {"bias", setup.supporters_guest.bias}}}}},
  };
  j["starting_lineup"] =
      setup.starting_lineup ? serial::state_to_json(*setup.starting_lineup) : json(nullptr);
  return j;
}

}  // namespace qcss
