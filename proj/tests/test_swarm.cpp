#include "swarm.hpp"

#include <thread>

#include <doctest.h>

#include "server.hpp"

using namespace qcss;

namespace {

MatchConfig swarm_config(std::uint32_t ticks, std::uint32_t supporters) {
  MatchConfig cfg;
  cfg.match_ticks = ticks;
  cfg.rng_seed = 77;
  cfg.supporter_budget_home = 1.0;
  cfg.supporter_budget_guest = 0.0;
  cfg.expected_supporters_home = supporters;
  return cfg;
}

struct SemanticTick {
  StateVector reality;
  std::vector<AgentId> eligible;
  std::vector<DistributionEntry> entries;
  std::optional<AgentId> winner;
  std::vector<std::pair<AgentId, double>> will;
};

SemanticTick strip_timing(const TickRecord& r) {
  return {r.reality, r.eligible, r.distribution.entries, r.winner, r.will};
}

bool semantically_equal(const SemanticTick& a, const SemanticTick& b) {
  if (!bit_identical(a.reality, b.reality)) return false;
  if (a.eligible != b.eligible || a.winner != b.winner || a.will != b.will) return false;
  if (a.entries.size() != b.entries.size()) return false;
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    if (a.entries[i].agent != b.entries[i].agent) return false;
    if (a.entries[i].probability != b.entries[i].probability) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("swarm: duplicate member ids are rejected loudly") {
  InProcessSwarm swarm;
  swarm.add(1, std::make_unique<EchoBehavior>());
  CHECK_THROWS_AS(swarm.add(1, std::make_unique<EchoBehavior>()), std::invalid_argument);
  CHECK_THROWS_AS(swarm.add(2, nullptr), std::invalid_argument);
}

TEST_CASE("swarm: echo supporters are a fixed point of the match") {
  TickEngine engine(swarm_config(50, 5));
  InProcessSwarm swarm;
  for (int i = 0; i < 5; ++i) {
    auto reg = engine.register_agent(Role::Supporter, Team::Home, std::nullopt);
    REQUIRE(reg.ok());
    swarm.add(reg.value().id, std::make_unique<EchoBehavior>());
  }
  REQUIRE(engine.start(std::nullopt).ok());
  const StateVector initial = engine.reality();
  while (!engine.finished()) {
    auto record = engine.run_tick(swarm.collect(engine.reality()));
    CHECK(record.winner.has_value());  // somebody always wins
    CHECK(bit_identical(engine.reality(), initial));
  }
}

TEST_CASE("swarm: zero-bias supporters never change reality either") {
  TickEngine engine(swarm_config(20, 3));
  InProcessSwarm swarm;
  for (int i = 0; i < 3; ++i) {
    auto reg = engine.register_agent(Role::Supporter, Team::Home, std::nullopt);
    REQUIRE(reg.ok());
    swarm.add(reg.value().id,
              std::make_unique<BiasSupporter>(Team::Home, 0.0, engine.config().pitch));
  }
  REQUIRE(engine.start(std::nullopt).ok());
  const StateVector initial = engine.reality();
  while (!engine.finished()) {
    (void)engine.run_tick(swarm.collect(engine.reality()));
  }
  CHECK(bit_identical(engine.reality(), initial));
}

TEST_CASE("swarm: one member matches one loopback socket agent tick for tick") {
  // The same single echo supporter, once through the in-process path and
  // once over a real loopback socket. Arrival timestamps differ (physical
  // time), but every semantic field of every tick must agree.
  const std::uint32_t kTicks = 5;

  std::vector<SemanticTick> inproc;
  {
    TickEngine engine(swarm_config(kTicks, 1));
    InProcessSwarm swarm;
    auto reg = engine.register_agent(Role::Supporter, Team::Home, std::nullopt);
    REQUIRE(reg.ok());
    swarm.add(reg.value().id, std::make_unique<EchoBehavior>());
    REQUIRE(engine.start(std::nullopt).ok());
    while (!engine.finished()) {
      inproc.push_back(strip_timing(engine.run_tick(swarm.collect(engine.reality()))));
    }
  }

  std::vector<SemanticTick> socketed;
  {
    MatchConfig cfg = swarm_config(kTicks, 1);
    cfg.tick_period_ms = 30;
    cfg.proposal_deadline_ms = 25;
    TickEngine engine(cfg);
    MatchServer server(engine, {});
    REQUIRE(server.open().ok());
    auto endpoint = net::parse_endpoint("127.0.0.1", server.port());
    REQUIRE(endpoint.ok());

    std::thread agent([&endpoint] {
      auto conn = UdpConnection::connect(endpoint.value());
      REQUIRE(conn.ok());
      auto ack = join_match(*conn.value(), Role::Supporter, Team::Home, 0);
      REQUIRE(ack.ok());
      EchoBehavior echo;
      (void)run_agent_loop(echo, *conn.value(), ack.value().agent_id, ack.value(), {});
    });
    REQUIRE(server.wait_for_agents(1).ok());
    REQUIRE(engine.start(std::nullopt).ok());
    REQUIRE(server.run([&](const TickRecord& r) { socketed.push_back(strip_timing(r)); }).ok());
    agent.join();
  }

  REQUIRE(inproc.size() == kTicks);
  REQUIRE(socketed.size() == kTicks);
  for (std::uint32_t t = 0; t < kTicks; ++t) {
    CHECK(semantically_equal(inproc[t], socketed[t]));
  }
}
