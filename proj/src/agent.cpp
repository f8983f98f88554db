#include "agent.hpp"

#include <algorithm>
#include <cmath>

namespace qcss {

const char* to_string(Archetype a) {
  switch (a) {
    case Archetype::Attacker: return "attacker";
    case Archetype::Midfielder: return "midfielder";
    case Archetype::Defender: return "defender";
  }
  return "?";
}

std::optional<Archetype> archetype_from_string(const std::string& s) {
  if (s == "attacker") return Archetype::Attacker;
  if (s == "midfielder") return Archetype::Midfielder;
  if (s == "defender") return Archetype::Defender;
  return std::nullopt;
}

double archetype_pull(Archetype a) {
  switch (a) {
    case Archetype::Attacker: return 0.4;
    case Archetype::Midfielder: return 0.25;
    case Archetype::Defender: return 0.1;
  }
  return 0.25;
}

Archetype archetype_for_shirt(int shirt) {
  if (shirt <= 5) return Archetype::Defender;  // 1 is the goalkeeper
  if (shirt <= 9) return Archetype::Midfielder;
  return Archetype::Attacker;
}

namespace {

Position clamp_to_pitch(Position p, const Pitch& pitch) {
  p.x = std::clamp(p.x, 0.0, pitch.length);
  p.y = std::clamp(p.y, 0.0, pitch.width);
  return p;
}

double dist2(const Position& a, const Position& b) {
  const double dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// Moves `from` toward `to`, traveling at most `limit`.
Position step_toward(const Position& from, const Position& to, double limit) {
  const double dx = to.x - from.x, dy = to.y - from.y;
  const double d = std::sqrt(dx * dx + dy * dy);
  if (d <= limit || d == 0.0) return to;
  const double f = limit / d;
  return {from.x + dx * f, from.y + dy * f};
}

// Nearest player of either team within `radius` of `ball`; ties go to the
// lowest shirt, home before guest. nullopt when nobody is close enough.
std::optional<std::pair<Team, int>> possession_candidate(const StateVector& s,
                                                         const Position& ball, double radius) {
  std::optional<std::pair<Team, int>> best;
  double best_d2 = 0.0;
  for (Team team : {Team::Home, Team::Guest}) {
    for (int shirt = 1; shirt <= kTeamSize; ++shirt) {
      const double d2 = dist2(s.player(team, shirt), ball);
      if (d2 > radius * radius) continue;
      if (!best || d2 < best_d2) {  // strict: ties keep the earlier candidate
        best_d2 = d2;
        best = {team, shirt};
      }
    }
  }
  return best;
}

constexpr double kPossessionRadius = 1.0;
constexpr double kBallSpeedFactor = 2.0;  // ball travels twice player speed

}  // namespace

// ---------------------------------------------------------------------------
// ReferencePlayer

ReferencePlayer::ReferencePlayer(AgentIdentity identity, ReferencePlayerParams params,
                                 Pitch pitch)
    : identity_(identity), params_(params), pitch_(pitch) {}

void ReferencePlayer::observe(const StateVector& reality) {
  reality_ = reality;
  next_ = reality;
  step_index_ = 0;
}

bool ReferencePlayer::step() {
  if (step_index_ > kTeamSize) return false;
  run_step(step_index_++);
  return step_index_ <= kTeamSize;
}

StateVector ReferencePlayer::propose() {
  while (step()) {
  }
  return next_;
}

void ReferencePlayer::run_step(int index) {
  const Team mine = identity_.team;
  const double attack_sign = mine == Team::Home ? 1.0 : -1.0;

  if (index < kTeamSize) {
    // One teammate per step. The nearest teammate chases the ball, the rest
    // hold ball-shifted formation anchors.
    const int shirt = index + 1;
    int nearest = 1;
    double nearest_d2 = dist2(reality_.player(mine, 1), reality_.ball);
    for (int s = 2; s <= kTeamSize; ++s) {
      const double d2 = dist2(reality_.player(mine, s), reality_.ball);
      if (d2 < nearest_d2) {
        nearest_d2 = d2;
        nearest = s;
      }
    }
    Position target;
    if (shirt == nearest) {
      target = reality_.ball;
    } else {
      const Archetype arch = (shirt == identity_.shirt && identity_.shirt >= 1)
                                 ? params_.archetype
                                 : archetype_for_shirt(shirt);
      const Position anchor = formation_anchor(pitch_, mine, shirt);
      const Position center = pitch_.center();
      const double pull = archetype_pull(arch);
      target = {anchor.x + pull * (reality_.ball.x - center.x),
                anchor.y + pull * (reality_.ball.y - center.y)};
    }
    target = clamp_to_pitch(target, pitch_);
    next_.player(mine, shirt) =
        step_toward(reality_.player(mine, shirt), target, params_.max_speed);
    return;
  }

  // Ball and possession. Opponents never move in this model, so an
  // opponent-held ball stays put; a teammate-held ball is passed toward the
  // most advanced teammate, or driven at goal when the possessor leads.
  Position ball = reality_.ball;
  if (reality_.possessing_team == mine) {
    const int possessor = reality_.possessing_player;
    int pass_target = 0;
    double best_attack = -1e300;
    for (int s = 1; s <= kTeamSize; ++s) {
      if (s == possessor) continue;
      const double ax = attack_sign * reality_.player(mine, s).x;
      if (ax > best_attack) {
        best_attack = ax;
        pass_target = s;
      }
    }
    const double possessor_attack = attack_sign * reality_.player(mine, possessor).x;
    Position ball_target;
    if (pass_target != 0 && best_attack > possessor_attack) {
      ball_target = next_.player(mine, pass_target);
    } else {
      ball_target = {mine == Team::Home ? pitch_.length : 0.0, pitch_.width / 2.0};
    }
    ball = step_toward(ball, clamp_to_pitch(ball_target, pitch_),
                       kBallSpeedFactor * params_.max_speed);
  }
  next_.ball = clamp_to_pitch(ball, pitch_);

  if (auto holder = possession_candidate(next_, next_.ball, kPossessionRadius)) {
    next_.possessing_team = holder->first;
    next_.possessing_player = static_cast<std::uint8_t>(holder->second);
  }
}

// ---------------------------------------------------------------------------
// BiasSupporter

BiasSupporter::BiasSupporter(Team favored, double bias, Pitch pitch)
    : favored_(favored), bias_(bias), pitch_(pitch) {}

StateVector BiasSupporter::propose() {
  StateVector s = reality_;
  const double direction = favored_ == Team::Home ? 1.0 : -1.0;
  s.ball.x = std::clamp(s.ball.x + direction * bias_, 0.0, pitch_.length);
  return s;
}

std::unique_ptr<AgentBehavior> make_behavior(const BehaviorSpec& spec,
                                             const AgentIdentity& identity,
                                             const Pitch& pitch) {
  if (spec.kind == "player") {
    ReferencePlayerParams params;
    params.max_speed = spec.max_speed;
    params.archetype = spec.archetype.empty()
                           ? archetype_for_shirt(identity.shirt)
                           : archetype_from_string(spec.archetype).value_or(
                                 archetype_for_shirt(identity.shirt));
    return std::make_unique<ReferencePlayer>(identity, params, pitch);
  }
  if (spec.kind == "supporter") {
    return std::make_unique<BiasSupporter>(identity.team, spec.bias, pitch);
  }
  return std::make_unique<EchoBehavior>();
}

// ---------------------------------------------------------------------------
// Connection & loop

Result<std::unique_ptr<UdpConnection>, std::string> UdpConnection::connect(
    const net::Endpoint& server) {
  auto sock = net::UdpSocket::open(0);
  if (!sock.ok()) return sock.error();
  return std::unique_ptr<UdpConnection>(
      new UdpConnection(std::move(sock.value()), server));
}

bool UdpConnection::send(std::span<const std::uint8_t> datagram) {
  return socket_.send_to(server_, datagram);
}

std::optional<std::vector<std::uint8_t>> UdpConnection::recv(
    std::chrono::milliseconds timeout) {
  auto got = socket_.recv_from(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
  if (!got) return std::nullopt;
  return std::move(got->second);
}

Result<wire::JoinAckMsg, std::string> join_match(Connection& conn, Role role, Team team,
                                                 std::uint8_t shirt, int attempts) {
  wire::JoinMsg join;
  join.role = role;
  join.team = team;
  join.shirt = shirt;
  const auto datagram = wire::encode(join);

  for (int attempt = 0; attempt < attempts; ++attempt) {
    if (!conn.send(datagram)) return std::string("failed to send join");
    auto reply = conn.recv(std::chrono::milliseconds(200));
    if (!reply) continue;
    auto decoded = wire::decode(*reply);
    if (!decoded.ok()) continue;
    if (const auto* ack = std::get_if<wire::JoinAckMsg>(&decoded.value())) {
      return *ack;
    }
    if (const auto* err = std::get_if<wire::ErrorMsg>(&decoded.value())) {
      return std::string("scheduler refused join: code ") + std::to_string(err->code);
    }
  }
  return std::string("no join acknowledgement");
}

AgentSummary run_agent_loop(AgentBehavior& behavior, Connection& conn, AgentId my_id,
                            const wire::JoinAckMsg& ack, const AgentLoopOptions& options) {
  using clock = std::chrono::steady_clock;
  AgentSummary summary;

  while (true) {
    auto datagram = conn.recv(options.loss_timeout);
    if (!datagram) {
      summary.lost_connection = true;
      return summary;
    }
    const auto received_at = clock::now();
    auto decoded = wire::decode(*datagram);
    if (!decoded.ok()) continue;

    if (std::holds_alternative<wire::MatchEndMsg>(decoded.value())) return summary;
    const auto* reality = std::get_if<wire::RealityMsg>(&decoded.value());
    if (!reality) continue;
    if (std::int64_t(reality->tick) <= summary.last_tick) continue;  // stale datagram

    summary.realities_seen++;
    summary.last_tick = reality->tick;
    behavior.observe(reality->state);

    const auto budget = std::chrono::milliseconds(ack.proposal_deadline_ms) -
                        options.deadline_margin;
    const auto send_by = received_at + budget;
    while (clock::now() < send_by && behavior.step()) summary.step_calls++;

    wire::ProposalMsg proposal;
    proposal.tick = reality->tick;
    proposal.agent_id = my_id;
    proposal.state = behavior.propose();
    if (conn.send(wire::encode(proposal))) summary.proposals_sent++;
  }
}

}  // namespace qcss
