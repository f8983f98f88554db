#include "runner.hpp"

#include <chrono>
#include <thread>

#include "swarm.hpp"

namespace qcss {

namespace {

BehaviorSpec player_behavior(const TeamPlayersSpec& spec) {
  BehaviorSpec b;
  b.kind = spec.behavior == "reference" ? "player" : "echo";
  b.max_speed = spec.max_speed;
  return b;
}

BehaviorSpec supporter_behavior(const TeamSupportersSpec& spec) {
  BehaviorSpec b;
  b.kind = spec.behavior == "bias" ? "supporter" : "echo";
  b.bias = spec.bias;
  return b;
}

struct PlannedAgent {
  Role role = Role::Player;
  Team team = Team::Home;
  std::uint8_t shirt = 0;
  BehaviorSpec behavior;
};

std::vector<PlannedAgent> plan_agents(const MatchSetup& setup) {
  std::vector<PlannedAgent> planned;
  for (Team team : {Team::Home, Team::Guest}) {
    const auto& players = setup.players(team);
    for (std::uint32_t shirt = 1; shirt <= players.count; ++shirt) {
      planned.push_back(
          {Role::Player, team, std::uint8_t(shirt), player_behavior(players)});
    }
  }
  for (Team team : {Team::Home, Team::Guest}) {
    const auto& supporters = setup.supporters(team);
    for (std::uint32_t i = 0; i < supporters.count; ++i) {
      planned.push_back({Role::Supporter, team, 0, supporter_behavior(supporters)});
    }
  }
  return planned;
}

MatchSetup apply_overrides(MatchSetup setup, const RunOverrides& overrides) {
  if (overrides.seed) setup.config.rng_seed = *overrides.seed;
  if (overrides.match_ticks) setup.config.match_ticks = *overrides.match_ticks;
  if (overrides.force_virtual) setup.transport = "inproc";
  return setup;
}

Result<RunResult, std::string> run_inproc(const MatchSetup& setup, const RunOverrides& overrides,
                                          std::ostream* trace_out) {
  TickEngine engine(setup.config);
  InProcessSwarm swarm;
  std::vector<AgentDescriptor> roster;

  for (const auto& planned : plan_agents(setup)) {
    auto reg = engine.register_agent(planned.role, planned.team,
                                     planned.role == Role::Player
                                         ? std::optional<std::uint8_t>(planned.shirt)
                                         : std::nullopt);
    if (!reg.ok()) {
      return std::string("registration failed: ") + to_string(reg.error());
    }
    AgentDescriptor desc{reg.value().id, planned.role,     planned.team,
                         planned.shirt,  planned.behavior, reg.value().will};
    roster.push_back(desc);
    AgentIdentity identity{desc.id, desc.role, desc.team, desc.shirt};
    swarm.add(desc.id, make_behavior(desc.behavior, identity, setup.config.pitch));
  }

  if (auto started = engine.start(setup.starting_lineup); !started.ok()) {
    return started.error();
  }

  TraceHeader header{kTraceVersion, kProtocolVersion, setup.config.rng_seed, setup, roster};
  std::optional<TraceWriter> writer;
  if (trace_out) writer.emplace(*trace_out, header);
  StatsAccumulator stats(roster, setup.config.pitch,
                         std::int64_t(setup.config.proposal_deadline_ms) * 1000);

  using clock = std::chrono::steady_clock;
  while (!engine.finished()) {
    auto proposals = swarm.collect(engine.reality());
    const auto before = clock::now();
    const TickRecord record = engine.run_tick(proposals);
    if (overrides.tick_engine_us) {
      overrides.tick_engine_us->push_back(
          std::chrono::duration<double, std::micro>(clock::now() - before).count());
    }
    if (writer) writer->write(record);
    stats.add(record);
  }
  return RunResult{std::move(header), stats.finish(), {}};
}

Result<RunResult, std::string> run_loopback(const MatchSetup& setup, std::ostream* trace_out) {
  TickEngine engine(setup.config);
  MatchServer server(engine, {setup.port, std::chrono::milliseconds(15000)});
  if (auto opened = server.open(); !opened.ok()) return opened.error();

  auto endpoint = net::parse_endpoint("127.0.0.1", server.port());
  if (!endpoint.ok()) return endpoint.error();

  const auto planned = plan_agents(setup);
  AgentLoopOptions loop_options;
  loop_options.deadline_margin = std::chrono::milliseconds(setup.agent_deadline_margin_ms);
  loop_options.loss_timeout = std::chrono::milliseconds(
      std::max<std::uint32_t>(3000, 20 * setup.config.tick_period_ms));

  std::vector<std::thread> threads;
  threads.reserve(planned.size());
  for (const auto& agent : planned) {
    threads.emplace_back([agent, server_endpoint = endpoint.value(), loop_options,
                          pitch = setup.config.pitch] {
      auto conn = UdpConnection::connect(server_endpoint);
      if (!conn.ok()) return;
      auto ack = join_match(*conn.value(), agent.role, agent.team, agent.shirt);
      if (!ack.ok()) return;
      AgentIdentity identity{ack.value().agent_id, agent.role, agent.team, agent.shirt};
      auto behavior = make_behavior(agent.behavior, identity, pitch);
      (void)run_agent_loop(*behavior, *conn.value(), identity.id, ack.value(), loop_options);
    });
  }
  auto join_all = [&threads] {
    for (auto& t : threads) {
      if (t.joinable()) t.join();
    }
  };

  if (auto waited = server.wait_for_agents(planned.size()); !waited.ok()) {
    join_all();
    return "aborted before tick 0: " + waited.error();
  }

  // Identity -> plan mapping comes from the engine roster: players by
  // (team, shirt), supporters by their team's (uniform) spec.
  std::vector<AgentDescriptor> roster;
  for (const auto& p : engine.roster().players()) {
    roster.push_back({p.id, Role::Player, p.team, p.shirt,
                      player_behavior(setup.players(p.team)), engine.will_table().will(p.id)});
  }
  for (const auto& s : engine.roster().supporters()) {
    roster.push_back({s.id, Role::Supporter, s.favored, 0,
                      supporter_behavior(setup.supporters(s.favored)),
                      engine.will_table().will(s.id)});
  }

  if (auto started = engine.start(setup.starting_lineup); !started.ok()) {
    join_all();
    return started.error();
  }

  TraceHeader header{kTraceVersion, kProtocolVersion, setup.config.rng_seed, setup, roster};
  std::optional<TraceWriter> writer;
  if (trace_out) writer.emplace(*trace_out, header);
  StatsAccumulator stats(roster, setup.config.pitch,
                         std::int64_t(setup.config.proposal_deadline_ms) * 1000);

  auto run_result = server.run([&](const TickRecord& record) {
    if (writer) writer->write(record);
    stats.add(record);
  });
  join_all();
  if (!run_result.ok()) return run_result.error();
  return RunResult{std::move(header), stats.finish(), server.counters()};
}

}  // namespace

Result<RunResult, std::string> run_match(const MatchSetup& raw_setup,
                                         const RunOverrides& overrides,
                                         std::ostream* trace_out) {
  const MatchSetup setup = apply_overrides(raw_setup, overrides);
  if (setup.transport == "inproc") return run_inproc(setup, overrides, trace_out);
  return run_loopback(setup, trace_out);
}

nlohmann::json ReplayReport::to_json() const {
  return nlohmann::json{
      {"ticks_checked", ticks_checked}, {"ok", ok}, {"mismatch", mismatch}};
}

Result<ReplayReport, std::string> replay_trace(const TraceData& trace) {
  const MatchSetup& setup = trace.header.setup;

  Roster roster;
  std::map<AgentId, double> will_values;
  std::map<AgentId, std::unique_ptr<AgentBehavior>> behaviors;
  for (const auto& a : trace.header.roster) {
    if (a.role == Role::Player) {
      if (auto added = roster.add_player(a.id, a.team, a.shirt); !added.ok()) {
        return std::string("trace roster: ") + to_string(added.error());
      }
    } else {
      if (auto added = roster.add_supporter(a.id, a.team); !added.ok()) {
        return std::string("trace roster: ") + to_string(added.error());
      }
    }
    will_values[a.id] = a.will0;
    AgentIdentity identity{a.id, a.role, a.team, a.shirt};
    behaviors[a.id] = make_behavior(a.behavior, identity, setup.config.pitch);
  }
  auto will = WillTable::create(roster, will_values);
  if (!will.ok()) return std::string("trace will table: ") + to_string(will.error());

  TickEngine engine(setup.config);
  if (auto adopted = engine.adopt_roster(roster, will.value()); !adopted.ok()) {
    return adopted.error();
  }
  if (auto started = engine.start(setup.starting_lineup); !started.ok()) {
    return started.error();
  }

  ReplayReport report;
  auto fail = [&report](std::uint32_t tick, const std::string& what) {
    report.ok = false;
    report.mismatch = "tick " + std::to_string(tick) + ": " + what;
    return report;
  };

  for (const auto& recorded : trace.ticks) {
    if (!bit_identical(engine.reality(), recorded.reality)) {
      return fail(recorded.tick, "reality diverged");
    }
    std::vector<TimedProposal> proposals;
    proposals.reserve(recorded.proposals_received.size());
    for (const auto& [id, arrival] : recorded.proposals_received) {
      auto it = behaviors.find(id);
      if (it == behaviors.end()) return fail(recorded.tick, "proposal from unknown agent");
      it->second->observe(engine.reality());
      while (it->second->step()) {
      }
      proposals.push_back({id, it->second->propose(), arrival});
    }
    const TickRecord computed = engine.run_tick(proposals);

    if (computed.winner != recorded.winner) return fail(recorded.tick, "winner diverged");
    if (computed.eligible != recorded.eligible) {
      return fail(recorded.tick, "eligible set diverged");
    }
    if (computed.distribution.entries.size() != recorded.distribution.entries.size()) {
      return fail(recorded.tick, "distribution size diverged");
    }
    for (std::size_t i = 0; i < computed.distribution.entries.size(); ++i) {
      const auto& c = computed.distribution.entries[i];
      const auto& r = recorded.distribution.entries[i];
      if (c.agent != r.agent || c.probability != r.probability) {
        return fail(recorded.tick, "distribution diverged");
      }
    }
    if (computed.will != recorded.will) return fail(recorded.tick, "will snapshot diverged");
    report.ticks_checked++;
  }
  return report;
}

}  // namespace qcss
