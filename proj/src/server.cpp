#include "server.hpp"

#include <variant>
#include <vector>

namespace qcss {

using namespace std::chrono;

MatchServer::MatchServer(TickEngine& engine, ServerOptions options)
    : engine_(engine), options_(options) {}

Result<std::monostate, std::string> MatchServer::open() {
  auto sock = net::UdpSocket::open(options_.port);
  if (!sock.ok()) return sock.error();
  socket_ = std::move(sock.value());
  return std::monostate{};
}

std::uint16_t MatchServer::port() const { return socket_.local_port(); }

void MatchServer::handle_join(const net::Endpoint& from, const wire::JoinMsg& join) {
  if (auto it = joined_.find(from); it != joined_.end()) {
    // Duplicate join (lost ack): repeat the original answer.
    wire::JoinAckMsg ack{it->second.id, it->second.will, engine_.config().tick_period_ms,
                         engine_.config().proposal_deadline_ms};
    socket_.send_to(from, wire::encode(ack));
    return;
  }
  auto reg = engine_.register_agent(join.role, join.team,
                                    join.shirt == 0 ? std::nullopt
                                                    : std::optional<std::uint8_t>(join.shirt));
  if (!reg.ok()) {
    wire::ErrorMsg err;
    switch (reg.error()) {
      case RegisterError::RosterFull:
        err.code = static_cast<std::uint8_t>(wire::ErrorCode::RosterFull);
        break;
      case RegisterError::DuplicateShirt:
        err.code = static_cast<std::uint8_t>(wire::ErrorCode::DuplicateShirt);
        break;
      case RegisterError::MatchAlreadyStarted:
        err.code = static_cast<std::uint8_t>(wire::ErrorCode::MatchAlreadyStarted);
        break;
      case RegisterError::BadShirt:
        err.code = static_cast<std::uint8_t>(wire::ErrorCode::BadMessage);
        break;
    }
    socket_.send_to(from, wire::encode(err));
    return;
  }
  joined_[from] = reg.value();
  endpoints_[reg.value().id] = from;
  wire::JoinAckMsg ack{reg.value().id, reg.value().will, engine_.config().tick_period_ms,
                       engine_.config().proposal_deadline_ms};
  socket_.send_to(from, wire::encode(ack));
}

Result<std::monostate, std::string> MatchServer::wait_for_agents(std::size_t expected) {
  const auto deadline = steady_clock::now() + options_.join_timeout;
  while (endpoints_.size() < expected) {
    const auto now = steady_clock::now();
    if (now >= deadline) {
      return "join phase timed out with " + std::to_string(endpoints_.size()) + "/" +
             std::to_string(expected) + " agents";
    }
    auto got = socket_.recv_from(duration_cast<microseconds>(deadline - now));
    if (!got) continue;
    counters_.datagrams_in++;
    auto decoded = wire::decode(got->second);
    if (!decoded.ok()) {
      counters_.undecodable++;
      continue;
    }
    if (const auto* join = std::get_if<wire::JoinMsg>(&decoded.value())) {
      handle_join(got->first, *join);
    }
  }
  return std::monostate{};
}

Result<std::monostate, std::string> MatchServer::run(const TickSink& sink) {
  if (engine_.phase() != Phase::Broadcasting) return std::string("engine not started");

  const auto tick_period = milliseconds(engine_.config().tick_period_ms);
  while (!engine_.finished()) {
    const auto tick_start = steady_clock::now();
    const auto tick_end = tick_start + tick_period;
    const std::uint32_t tick = engine_.current_tick();

    // Broadcast this tick's reality, personalized with the recipient's will.
    for (const auto& [id, endpoint] : endpoints_) {
      wire::RealityMsg reality{tick, engine_.reality(), engine_.will_table().will(id)};
      socket_.send_to(endpoint, wire::encode(reality));
    }

    // Collect until the period ends; arrivals after the proposal deadline
    // are still recorded (the engine classifies them as late).
    std::vector<TimedProposal> mailbox;
    while (true) {
      const auto now = steady_clock::now();
      if (now >= tick_end) break;
      auto got = socket_.recv_from(duration_cast<microseconds>(tick_end - now));
      if (!got) continue;
      const auto arrival =
          duration_cast<microseconds>(steady_clock::now() - tick_start).count();
      counters_.datagrams_in++;
      auto decoded = wire::decode(got->second);
      if (!decoded.ok()) {
        counters_.undecodable++;
        continue;
      }
      if (const auto* join = std::get_if<wire::JoinMsg>(&decoded.value())) {
        handle_join(got->first, *join);  // answered with MatchAlreadyStarted
        continue;
      }
      const auto* proposal = std::get_if<wire::ProposalMsg>(&decoded.value());
      if (!proposal) continue;
      if (proposal->tick != tick) {
        counters_.wrong_tick++;
        continue;
      }
      auto owner = endpoints_.find(proposal->agent_id);
      if (owner == endpoints_.end() || !(owner->second == got->first)) {
        counters_.spoofed++;
        continue;
      }
      mailbox.push_back({proposal->agent_id, proposal->state, arrival});
    }

    sink(engine_.run_tick(mailbox));
  }

  const wire::MatchEndMsg end{engine_.current_tick()};
  const auto bytes = wire::encode(end);
  for (int repeat = 0; repeat < 3; ++repeat) {
    for (const auto& [id, endpoint] : endpoints_) socket_.send_to(endpoint, bytes);
  }
  return std::monostate{};
}

}  // namespace qcss
