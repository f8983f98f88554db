#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "model.hpp"

namespace qcss {

struct TeamPlayersSpec {
  std::uint32_t count = 0;
  std::string behavior = "reference";  // "reference" | "echo"
  double max_speed = 0.8;
};

struct TeamSupportersSpec {
  std::uint32_t count = 0;
  double budget = 0.0;
  std::string behavior = "bias";  // "bias" | "echo"
  double bias = 1.0;
};

// A whole match as described by a config file: engine parameters plus the
// agents the runner should field and how to connect them.
struct MatchSetup {
  MatchConfig config;
  std::string transport = "inproc";  // "inproc" | "loopback"
  std::uint16_t port = 0;
  std::uint32_t agent_deadline_margin_ms = 10;
  TeamPlayersSpec players_home{11, "reference", 0.8};
  TeamPlayersSpec players_guest{11, "reference", 0.8};
  TeamSupportersSpec supporters_home;
  TeamSupportersSpec supporters_guest;
  std::optional<StateVector> starting_lineup;

  const TeamPlayersSpec& players(Team t) const {
    return t == Team::Home ? players_home : players_guest;
  }
  const TeamSupportersSpec& supporters(Team t) const {
    return t == Team::Home ? supporters_home : supporters_guest;
  }
};

// Parses a setup, rejecting unknown keys and reporting the offending field
// by its path (e.g. "players.home.count: must be at most 11").
Result<MatchSetup, std::string> setup_from_json(const nlohmann::json& j);
Result<MatchSetup, std::string> setup_from_text(const std::string& text);
Result<MatchSetup, std::string> load_setup(const std::string& path);

nlohmann::json setup_to_json(const MatchSetup& setup);

}  // namespace qcss
