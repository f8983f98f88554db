// qcss-agent — a standalone client that joins a running scheduler over UDP
// and plays the match with one of the built-in behaviors.
#include <cstdint>
#include <cstdio>
#include <string>

#include <CLI11.hpp>
#include <qcss.h>

int main(int argc, char** argv) {
  CLI::App app{"QCSS autonomous agent"};

  std::string host = "127.0.0.1";
  std::uint16_t port = 0;
  std::string role = "player", team = "home", behavior, archetype;
  std::uint32_t shirt = 0;
  double bias = 1.0, max_speed = 0.8;
  std::uint32_t margin_ms = 10;
  std::uint64_t seed = 0;

  app.add_option("--host", host, "Scheduler host");
  app.add_option("--port", port, "Scheduler port")->required();
  app.add_option("--role", role, "player or supporter")
      ->check(CLI::IsMember({"player", "supporter"}));
  app.add_option("--team", team, "home or guest (favored team for supporters)")
      ->check(CLI::IsMember({"home", "guest"}));
  app.add_option("--shirt", shirt, "Shirt number 1..11; 0 lets the scheduler pick");
  app.add_option("--behavior", behavior, "reference, bias or echo (defaults by role)")
      ->check(CLI::IsMember({"reference", "bias", "echo"}));
  app.add_option("--archetype", archetype, "attacker, midfielder or defender")
      ->check(CLI::IsMember({"attacker", "midfielder", "defender"}));
  app.add_option("--bias", bias, "Supporter ball nudge in meters");
  app.add_option("--max-speed", max_speed, "Player speed limit, meters per tick");
  app.add_option("--margin", margin_ms, "Deadline safety margin in milliseconds");
  app.add_option("--seed", seed, "Reserved for stochastic behaviors");

  CLI11_PARSE(app, argc, argv);

  std::string params = "{";
  params += "\"host\":\"" + host + "\"";
  params += ",\"port\":" + std::to_string(port);
  params += ",\"role\":\"" + role + "\"";
  params += ",\"team\":\"" + team + "\"";
  params += ",\"shirt\":" + std::to_string(shirt);
  if (!behavior.empty()) params += ",\"behavior\":\"" + behavior + "\"";
  if (!archetype.empty()) params += ",\"archetype\":\"" + archetype + "\"";
  params += ",\"bias\":" + std::to_string(bias);
  params += ",\"max_speed\":" + std::to_string(max_speed);
  params += ",\"deadline_margin_ms\":" + std::to_string(margin_ms);
  params += ",\"seed\":" + std::to_string(seed);
  params += "}";

  char* summary = nullptr;
  if (qcss_agent_run(params.c_str(), &summary) != QCSS_OK) {
    std::fprintf(stderr, "agent failed: %s\n", qcss_last_error());
    return 1;
  }
  std::printf("%s\n", summary);
  qcss_string_free(summary);
  return 0;
}
