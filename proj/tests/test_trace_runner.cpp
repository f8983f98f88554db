#include <sstream>

#include <doctest.h>

#include "experiment.hpp"
#include "runner.hpp"
#include "serial.hpp"
#include "stats.hpp"
#include "trace.hpp"

using namespace qcss;

namespace {

MatchSetup minimal_setup() {
  auto setup = setup_from_text(R"({
    "match_ticks": 10,
    "seed": 5,
    "players": {
      "home": {"count": 1, "behavior": "echo"},
      "guest": {"count": 1, "behavior": "echo"}
    }
  })");
  REQUIRE(setup.ok());
  return setup.value();
}

MatchSetup full_setup(std::uint32_t ticks, std::uint64_t seed) {
  auto setup = setup_from_text(R"({
    "match_ticks": )" + std::to_string(ticks) + R"(,
    "seed": )" + std::to_string(seed) + R"(,
    "will_update_rate": 0.1,
    "players": {
      "home": {"count": 11, "behavior": "reference"},
      "guest": {"count": 11, "behavior": "reference"}
    },
    "supporters": {
      "home": {"count": 3, "budget": 0.6, "behavior": "bias", "bias": 1.0},
      "guest": {"count": 2, "budget": 0.4, "behavior": "bias", "bias": 0.5}
    }
  })");
  REQUIRE(setup.ok());
  return setup.value();
}

}  // namespace

TEST_CASE("config: unknown fields and bad values carry field diagnostics") {
  auto unknown = setup_from_text(R"({"match_tickz": 5})");
  REQUIRE(!unknown.ok());
  CHECK(unknown.error().find("match_tickz") != std::string::npos);

  auto bad_nested = setup_from_text(
      R"({"players": {"home": {"count": 14}}, "match_ticks": 5})");
  REQUIRE(!bad_nested.ok());
  CHECK(bad_nested.error().find("players.home.count") != std::string::npos);

  auto bad_budget = setup_from_text(R"({
    "supporters": {"home": {"count": 1, "budget": 0.8}, "guest": {"count": 1, "budget": 0.8}}
  })");
  REQUIRE(!bad_budget.ok());

  auto no_agents = setup_from_text(
      R"({"players": {"home": {"count": 0}, "guest": {"count": 0}}, "match_ticks": 5})");
  REQUIRE(!no_agents.ok());
  CHECK(no_agents.error().find("no agents") != std::string::npos);

  auto bad_json = setup_from_text("{oops");
  REQUIRE(!bad_json.ok());
}

TEST_CASE("run_match: a minimal echo match produces one line per tick") {
  std::ostringstream trace_out;
  auto result = run_match(minimal_setup(), {}, &trace_out);
  REQUIRE(result.ok());
  CHECK(result.value().stats.ticks == 10);
  CHECK(result.value().stats.stalls == 0);

  int lines = 0;
  std::istringstream in(trace_out.str());
  std::string line;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 11);  // header + 10 ticks
}

TEST_CASE("run_match: identical seeds give byte-identical traces") {
  std::ostringstream a, b;
  REQUIRE(run_match(full_setup(30, 99), {}, &a).ok());
  REQUIRE(run_match(full_setup(30, 99), {}, &b).ok());
  CHECK(a.str() == b.str());
  CHECK(!a.str().empty());

  std::ostringstream c;
  RunOverrides different_seed;
  different_seed.seed = 100;
  REQUIRE(run_match(full_setup(30, 99), different_seed, &c).ok());
  CHECK(a.str() != c.str());
}

TEST_CASE("trace: write, read and rewrite is byte-identical") {
  std::ostringstream first;
  REQUIRE(run_match(full_setup(25, 3), {}, &first).ok());

  std::istringstream in(first.str());
  auto parsed = read_trace(in);
  REQUIRE(parsed.ok());
  CHECK(parsed.value().ticks.size() == 25);

  std::ostringstream second;
  TraceWriter writer(second, parsed.value().header);
  for (const auto& tick : parsed.value().ticks) writer.write(tick);
  CHECK(second.str() == first.str());
}

TEST_CASE("trace: truncated or corrupt input is reported with a line number") {
  auto empty = read_trace(*std::make_unique<std::istringstream>(""));
  REQUIRE(!empty.ok());

  std::istringstream garbage("this is not json\n");
  auto bad = read_trace(garbage);
  REQUIRE(!bad.ok());
  CHECK(bad.error().find("line 1") != std::string::npos);
}

TEST_CASE("replay: a recorded in-process match reproduces itself") {
  std::ostringstream out;
  REQUIRE(run_match(full_setup(40, 12345), {}, &out).ok());
  std::istringstream in(out.str());
  auto trace = read_trace(in);
  REQUIRE(trace.ok());

  auto report = replay_trace(trace.value());
  REQUIRE(report.ok());
  CHECK(report.value().ok);
  CHECK(report.value().mismatch.empty());
  CHECK(report.value().ticks_checked == 40);
}

TEST_CASE("replay: a tampered trace is caught") {
  std::ostringstream out;
  REQUIRE(run_match(full_setup(10, 8), {}, &out).ok());
  std::istringstream in(out.str());
  auto trace = read_trace(in);
  REQUIRE(trace.ok());

  // Flip one winner to some other eligible agent.
  auto& ticks = trace.value().ticks;
  REQUIRE(!ticks.empty());
  for (auto& tick : ticks) {
    if (tick.winner && tick.eligible.size() > 1) {
      for (AgentId candidate : tick.eligible) {
        if (candidate != *tick.winner) {
          tick.winner = candidate;
          break;
        }
      }
      break;
    }
  }
  auto report = replay_trace(trace.value());
  REQUIRE(report.ok());
  CHECK(!report.value().ok);
  CHECK(!report.value().mismatch.empty());
}

TEST_CASE("stats: an ever-winning agent holds the full selection share") {
  std::ostringstream out;
  auto setup = setup_from_text(R"({
    "match_ticks": 8, "seed": 1,
    "players": {"home": {"count": 1, "behavior": "echo"}, "guest": {"count": 0}}
  })");
  REQUIRE(setup.ok());
  REQUIRE(run_match(setup.value(), {}, &out).ok());
  std::istringstream in(out.str());
  auto trace = read_trace(in);
  REQUIRE(trace.ok());
  auto stats = compute_stats(trace.value());
  CHECK(stats.agents.at(1).wins == 8);
  CHECK(stats.agents.at(1).selection_share == doctest::Approx(1.0));
  CHECK(stats.stalls == 0);
}

TEST_CASE("stats: an all-stall trace counts every tick as a stall") {
  std::ostringstream out;
  REQUIRE(run_match(minimal_setup(), {}, &out).ok());
  std::istringstream in(out.str());
  auto trace = read_trace(in);
  REQUIRE(trace.ok());

  // Rewrite the recorded ticks into stalls: nobody sent anything.
  for (auto& tick : trace.value().ticks) {
    tick.proposals_received.clear();
    tick.eligible.clear();
    tick.distribution.entries.clear();
    tick.distribution.fallback = Fallback::RepeatReality;
    tick.winner.reset();
  }
  auto stats = compute_stats(trace.value());
  CHECK(stats.stalls == stats.ticks);
  CHECK(stats.stall_share == doctest::Approx(1.0));
  for (const auto& [id, agent] : stats.agents) CHECK(agent.selection_share == 0.0);
}

TEST_CASE("stats: selection counts equal an independent recount") {
  std::ostringstream out;
  REQUIRE(run_match(full_setup(60, 555), {}, &out).ok());
  std::istringstream in(out.str());
  auto trace = read_trace(in);
  REQUIRE(trace.ok());
  auto stats = compute_stats(trace.value());

  // Recount straight off the trace text, line by line.
  std::map<AgentId, std::uint64_t> recount;
  std::uint64_t recount_stalls = 0;
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);  // header
  while (std::getline(lines, line)) {
    auto j = nlohmann::json::parse(line);
    if (j["winner"].is_null()) {
      recount_stalls++;
    } else {
      recount[j["winner"].get<AgentId>()]++;
    }
  }
  CHECK(recount_stalls == stats.stalls);
  for (const auto& [id, agent] : stats.agents) {
    CHECK(agent.wins == recount[id]);
  }

  // Shares sum to one minus the stall share.
  double share_sum = 0.0;
  for (const auto& [id, agent] : stats.agents) share_sum += agent.selection_share;
  CHECK(share_sum == doctest::Approx(1.0 - stats.stall_share).epsilon(1e-12));
}

TEST_CASE("experiment: report carries the documented fields and reproduces") {
  MatchSetup base = full_setup(150, 42);
  ExperimentOptions options;
  options.repetitions = 3;
  options.supporters = 2;
  options.ticks = 150;

  auto report = home_advantage_experiment(base, options);
  REQUIRE(report.ok());
  const auto& j = report.value();
  CHECK(j.contains("occupancy"));
  CHECK(j.contains("selection_accounting"));
  CHECK(j["occupancy"].contains("bootstrap_ci95"));
  CHECK(j["per_repetition"]["treatment"].size() == 3);
  CHECK(j["per_repetition"]["control"].size() == 3);
  CHECK(j["selection_accounting"]["within_monte_carlo_error"].get<bool>());

  auto again = home_advantage_experiment(base, options);
  REQUIRE(again.ok());
  CHECK(j.dump() == again.value().dump());
}

TEST_CASE("bench: the swarm benchmark reports timing summaries") {
  auto report = bench_swarm(200, 20);
  CHECK(report["supporters"] == 200);
  CHECK(report["scoring_and_selection"]["median_us"].get<double>() > 0.0);
  CHECK(report["proposal_collection"]["median_us"].get<double>() > 0.0);
}
