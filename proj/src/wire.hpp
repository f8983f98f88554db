#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "model.hpp"
#include "result.hpp"

namespace qcss::wire {

// Datagram layout, all little-endian, one message per datagram:
//
//   offset 0  : magic   51 43 53 53 ("QCSS")
//   offset 4  : version 01
//   offset 5  : type    01..06
//   offset 6..: fixed payload per type
//
//   Join     (01): role u8 (0=player,1=supporter), team u8 (0=home,1=guest),
//                  shirt u8 (0=assign one, else 1..11)
//   JoinAck  (02): agent_id u32, initial_will f64, tick_period_ms u32,
//                  proposal_deadline_ms u32
//   Reality  (03): tick u32, state[370], will_of_recipient f64
//   Proposal (04): tick u32, agent_id u32, state[370]
//   MatchEnd (05): final_tick u32
//   Error    (06): code u8
//
//   state[370]: 46 f64 — ball x, ball y, home 1..11 (x,y), guest 1..11 (x,y) —
//               then possessing team u8 (0/1) and possessing shirt u8 (1..11).
//
// Every message fits one 512-byte datagram. The decoder accepts exactly the
// encoder's output: wrong lengths, out-of-range enums and non-finite reals
// are rejected, so decode(encode(m)) == m and encode(decode(b)) == b.

inline constexpr std::uint8_t kMagic[4] = {0x51, 0x43, 0x53, 0x53};
inline constexpr std::uint8_t kVersion = 0x01;
inline constexpr std::size_t kMaxDatagram = 512;

enum class MsgType : std::uint8_t {
  Join = 1,
  JoinAck = 2,
  Reality = 3,
  Proposal = 4,
  MatchEnd = 5,
  Error = 6,
};

// Scheduler-reported error codes carried by the Error message.
enum class ErrorCode : std::uint8_t {
  RosterFull = 1,
  DuplicateShirt = 2,
  MatchAlreadyStarted = 3,
  BadMessage = 4,
  UnknownAgent = 5,
};

struct JoinMsg {
  Role role = Role::Player;
  Team team = Team::Home;  // favored team for supporters
  std::uint8_t shirt = 0;  // 0 = let the scheduler assign
};

struct JoinAckMsg {
  AgentId agent_id = 0;
  double initial_will = 0.0;
  std::uint32_t tick_period_ms = 0;
  std::uint32_t proposal_deadline_ms = 0;
};

struct RealityMsg {
  std::uint32_t tick = 0;
  StateVector state;
  double will_of_recipient = 0.0;
};

struct ProposalMsg {
  std::uint32_t tick = 0;
  AgentId agent_id = 0;
  StateVector state;
};

struct MatchEndMsg {
  std::uint32_t final_tick = 0;
};

struct ErrorMsg {
  std::uint8_t code = 0;
};

using Message = std::variant<JoinMsg, JoinAckMsg, RealityMsg, ProposalMsg, MatchEndMsg, ErrorMsg>;

enum class DecodeError : std::uint8_t {
  BadMagic,
  UnknownVersion,
  UnknownType,
  Truncated,
  TrailingBytes,
  BadEnum,
  NonFiniteField,
};

const char* to_string(DecodeError e);

std::vector<std::uint8_t> encode(const Message& m);
Result<Message, DecodeError> decode(std::span<const std::uint8_t> bytes);

}  // namespace qcss::wire
