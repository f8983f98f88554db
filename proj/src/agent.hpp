#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <string>

#include "model.hpp"
#include "net.hpp"
#include "wire.hpp"

namespace qcss {

struct AgentIdentity {
  AgentId id = 0;
  Role role = Role::Player;
  Team team = Team::Home;  // favored team for supporters
  std::uint8_t shirt = 0;  // players only
};

enum class Archetype : std::uint8_t { Attacker, Midfielder, Defender };

const char* to_string(Archetype a);
std::optional<Archetype> archetype_from_string(const std::string& s);

// How strongly each archetype's anchor is dragged toward the ball.
double archetype_pull(Archetype a);

// Canonical shirt -> archetype mapping for the 4-4-2 grid.
Archetype archetype_for_shirt(int shirt);

// The decision interface every agent implements. observe() ingests a fresh
// reality, step() runs one inner world-model iteration (false once settled),
// and propose() returns the complete predicted next snapshot. propose() must
// be callable at any point after observe() and always yields a valid vector.
class AgentBehavior {
 public:
  virtual ~AgentBehavior() = default;
  virtual void observe(const StateVector& reality) = 0;
  virtual bool step() = 0;
  virtual StateVector propose() = 0;
};

// Predicts that nothing changes. Its distance to an unchanged reality is
// zero, which makes it the strongest predictor whenever it loses.
class EchoBehavior : public AgentBehavior {
 public:
  void observe(const StateVector& reality) override { reality_ = reality; }
  bool step() override { return false; }
  StateVector propose() override { return reality_; }

 private:
  StateVector reality_;
};

struct ReferencePlayerParams {
  Archetype archetype = Archetype::Midfielder;
  double max_speed = 0.8;  // meters per tick, per player
};

// Kinematic whole-world model. Own-team players advance at most max_speed
// toward their targets (the ball for the nearest teammate, a ball-shifted
// formation anchor for the rest), opponents are extrapolated in place, the
// possessing teammate passes toward the most advanced teammate or dribbles
// at goal, and possession follows whoever stands within 1 m of the ball.
class ReferencePlayer : public AgentBehavior {
 public:
  ReferencePlayer(AgentIdentity identity, ReferencePlayerParams params, Pitch pitch);

  void observe(const StateVector& reality) override;
  bool step() override;
  StateVector propose() override;

 private:
  void run_step(int index);

  AgentIdentity identity_;
  ReferencePlayerParams params_;
  Pitch pitch_;
  StateVector reality_;
  StateVector next_;
  int step_index_ = 0;  // 0..10 teammates, 11 ball+possession, 12 done
};

// Proposes the received reality with the ball nudged toward the goal its
// favored team attacks, clamped to the pitch. The minimal crowd-will agent.
class BiasSupporter : public AgentBehavior {
 public:
  BiasSupporter(Team favored, double bias, Pitch pitch);

  void observe(const StateVector& reality) override { reality_ = reality; }
  bool step() override { return false; }
  StateVector propose() override;

 private:
  Team favored_;
  double bias_;
  Pitch pitch_;
  StateVector reality_;
};

// Serializable behavior descriptor; traces carry one per agent so a match
// can be replayed by rebuilding the exact same behaviors.
struct BehaviorSpec {
  std::string kind = "echo";  // "echo" | "player" | "supporter"
  std::string archetype;      // players, empty = by shirt
  double max_speed = 0.8;     // players
  double bias = 1.0;          // supporters
};

std::unique_ptr<AgentBehavior> make_behavior(const BehaviorSpec& spec,
                                             const AgentIdentity& identity, const Pitch& pitch);

// Transport seam between an agent and the scheduler, so the loop can run
// over real sockets or a scripted in-memory session.
class Connection {
 public:
  virtual ~Connection() = default;
  virtual bool send(std::span<const std::uint8_t> datagram) = 0;
  virtual std::optional<std::vector<std::uint8_t>> recv(std::chrono::milliseconds timeout) = 0;
};

class UdpConnection : public Connection {
 public:
  static Result<std::unique_ptr<UdpConnection>, std::string> connect(const net::Endpoint& server);

  bool send(std::span<const std::uint8_t> datagram) override;
  std::optional<std::vector<std::uint8_t>> recv(std::chrono::milliseconds timeout) override;

 private:
  UdpConnection(net::UdpSocket socket, net::Endpoint server)
      : socket_(std::move(socket)), server_(server) {}
  net::UdpSocket socket_;
  net::Endpoint server_;
};

struct AgentLoopOptions {
  std::chrono::milliseconds deadline_margin{10};
  std::chrono::milliseconds loss_timeout{3000};  // silence before giving up
};

struct AgentSummary {
  std::uint32_t realities_seen = 0;
  std::uint32_t proposals_sent = 0;
  std::uint64_t step_calls = 0;
  std::int64_t last_tick = -1;
  bool lost_connection = false;
};

// Sends Join until the scheduler acknowledges; returns the assigned identity.
Result<wire::JoinAckMsg, std::string> join_match(Connection& conn, Role role, Team team,
                                                 std::uint8_t shirt, int attempts = 50);

// The agent inner loop: on each fresh Reality, observe, step until the
// proposal deadline minus the margin, then send the proposal stamped with
// the reality's tick. Stale realities are ignored; MatchEnd exits.
AgentSummary run_agent_loop(AgentBehavior& behavior, Connection& conn, AgentId my_id,
                            const wire::JoinAckMsg& ack, const AgentLoopOptions& options);

}  // namespace qcss
