#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <string>

#include "net.hpp"
#include "scheduler.hpp"
#include "wire.hpp"

namespace qcss {

struct ServerOptions {
  std::uint16_t port = 0;  // 0 = pick an ephemeral loopback port
  std::chrono::milliseconds join_timeout{15000};
};

struct ServerCounters {
  std::uint64_t datagrams_in = 0;
  std::uint64_t undecodable = 0;
  std::uint64_t wrong_tick = 0;
  std::uint64_t spoofed = 0;  // proposal id not matching its source endpoint
};

// Datagram front end of the scheduler. Registration runs over Join/JoinAck;
// the match loop broadcasts Reality, collects until the tick period ends
// (stamping arrivals against the tick start) and advances the engine once
// per tick. Single-threaded: one socket, one poll loop.
class MatchServer {
 public:
  using TickSink = std::function<void(const TickRecord&)>;

  MatchServer(TickEngine& engine, ServerOptions options);

  Result<std::monostate, std::string> open();
  std::uint16_t port() const;

  // Serves joins until `expected` agents are registered or the join timeout
  // passes (which is an error: the match must not start short-handed).
  Result<std::monostate, std::string> wait_for_agents(std::size_t expected);

  // Runs the whole match; requires a started engine. Broadcasts MatchEnd
  // a few times once the last tick completes.
  Result<std::monostate, std::string> run(const TickSink& sink);

  const ServerCounters& counters() const { return counters_; }

 private:
  void handle_join(const net::Endpoint& from, const wire::JoinMsg& join);

  TickEngine& engine_;
  ServerOptions options_;
  net::UdpSocket socket_;
  std::map<net::Endpoint, Registration> joined_;  // idempotent re-acks
  std::map<AgentId, net::Endpoint> endpoints_;
  ServerCounters counters_;
};

}  // namespace qcss
