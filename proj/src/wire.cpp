#include "wire.hpp"

#include <bit>
#include <cmath>
#include <cstring>

namespace qcss::wire {

const char* to_string(DecodeError e) {
  switch (e) {
    case DecodeError::BadMagic: return "BadMagic";
    case DecodeError::UnknownVersion: return "UnknownVersion";
    case DecodeError::UnknownType: return "UnknownType";
    case DecodeError::Truncated: return "Truncated";
    case DecodeError::TrailingBytes: return "TrailingBytes";
    case DecodeError::BadEnum: return "BadEnum";
    case DecodeError::NonFiniteField: return "NonFiniteField";
  }
  return "?";
}

namespace {

class Writer {
 public:
  explicit Writer(std::vector<std::uint8_t>& out) : out_(out) {}

  void u8(std::uint8_t v) { out_.push_back(v); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f64(double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
  }
  void state(const StateVector& s) {
    for (double c : s.coords()) f64(c);
    u8(static_cast<std::uint8_t>(s.possessing_team));
    u8(s.possessing_player);
  }

 private:
  std::vector<std::uint8_t>& out_;
};

// Bounds-checked cursor; every read is validated against the remaining
// length before touching the buffer.
class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> buf) : buf_(buf) {}

  bool u8(std::uint8_t& v) {
    if (pos_ + 1 > buf_.size()) return false;
    v = buf_[pos_++];
    return true;
  }
  bool u32(std::uint32_t& v) {
    if (pos_ + 4 > buf_.size()) return false;
    v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(buf_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return true;
  }
  bool f64(double& v) {
    if (pos_ + 8 > buf_.size()) return false;
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= std::uint64_t(buf_[pos_ + i]) << (8 * i);
    pos_ += 8;
    v = std::bit_cast<double>(bits);
    return true;
  }
  bool done() const { return pos_ == buf_.size(); }

 private:
  std::span<const std::uint8_t> buf_;
  std::size_t pos_ = 0;
};

Result<StateVector, DecodeError> read_state(Reader& r) {
  StateVector s;
  std::array<double, kCoordCount> coords;
  for (double& c : coords) {
    if (!r.f64(c)) return DecodeError::Truncated;
    if (!std::isfinite(c)) return DecodeError::NonFiniteField;
  }
  s.ball = {coords[0], coords[1]};
  for (int i = 0; i < kTeamSize; ++i) {
    s.home[i] = {coords[2 + 2 * i], coords[3 + 2 * i]};
    s.guest[i] = {coords[24 + 2 * i], coords[25 + 2 * i]};
  }
  std::uint8_t team = 0, shirt = 0;
  if (!r.u8(team) || !r.u8(shirt)) return DecodeError::Truncated;
  if (team > 1) return DecodeError::BadEnum;
  if (shirt < 1 || shirt > kTeamSize) return DecodeError::BadEnum;
  s.possessing_team = static_cast<Team>(team);
  s.possessing_player = shirt;
  return s;
}

}  // namespace

std::vector<std::uint8_t> encode(const Message& m) {
  std::vector<std::uint8_t> out;
  out.reserve(kMaxDatagram);
  Writer w(out);
  for (std::uint8_t b : kMagic) w.u8(b);
  w.u8(kVersion);
  std::visit(
      [&](const auto& msg) {
        using T = std::decay_t<decltype(msg)>;
        if constexpr (std::is_same_v<T, JoinMsg>) {
          w.u8(static_cast<std::uint8_t>(MsgType::Join));
          w.u8(static_cast<std::uint8_t>(msg.role));
          w.u8(static_cast<std::uint8_t>(msg.team));
          w.u8(msg.shirt);
        } else if constexpr (std::is_same_v<T, JoinAckMsg>) {
          w.u8(static_cast<std::uint8_t>(MsgType::JoinAck));
          w.u32(msg.agent_id);
          w.f64(msg.initial_will);
          w.u32(msg.tick_period_ms);
          w.u32(msg.proposal_deadline_ms);
        } else if constexpr (std::is_same_v<T, RealityMsg>) {
          w.u8(static_cast<std::uint8_t>(MsgType::Reality));
          w.u32(msg.tick);
          w.state(msg.state);
          w.f64(msg.will_of_recipient);
        } else if constexpr (std::is_same_v<T, ProposalMsg>) {
          w.u8(static_cast<std::uint8_t>(MsgType::Proposal));
          w.u32(msg.tick);
          w.u32(msg.agent_id);
          w.state(msg.state);
        } else if constexpr (std::is_same_v<T, MatchEndMsg>) {
          w.u8(static_cast<std::uint8_t>(MsgType::MatchEnd));
          w.u32(msg.final_tick);
        } else {
          w.u8(static_cast<std::uint8_t>(MsgType::Error));
          w.u8(msg.code);
        }
      },
      m);
  return out;
}

Result<Message, DecodeError> decode(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  std::uint8_t b = 0;
  for (std::uint8_t expected : kMagic) {
    if (!r.u8(b)) return DecodeError::Truncated;
    if (b != expected) return DecodeError::BadMagic;
  }
  if (!r.u8(b)) return DecodeError::Truncated;
  if (b != kVersion) return DecodeError::UnknownVersion;
  if (!r.u8(b)) return DecodeError::Truncated;
  if (b < 1 || b > 6) return DecodeError::UnknownType;

  auto finish = [&r](Message m) -> Result<Message, DecodeError> {
    if (!r.done()) return DecodeError::TrailingBytes;
    return m;
  };

  switch (static_cast<MsgType>(b)) {
    case MsgType::Join: {
      JoinMsg m;
      std::uint8_t role = 0, team = 0, shirt = 0;
      if (!r.u8(role) || !r.u8(team) || !r.u8(shirt)) return DecodeError::Truncated;
      if (role > 1 || team > 1 || shirt > kTeamSize) return DecodeError::BadEnum;
      m.role = static_cast<Role>(role);
      m.team = static_cast<Team>(team);
      m.shirt = shirt;
      return finish(m);
    }
    case MsgType::JoinAck: {
      JoinAckMsg m;
      if (!r.u32(m.agent_id) || !r.f64(m.initial_will) || !r.u32(m.tick_period_ms) ||
          !r.u32(m.proposal_deadline_ms)) {
        return DecodeError::Truncated;
      }
      if (!std::isfinite(m.initial_will)) return DecodeError::NonFiniteField;
      return finish(m);
    }
    case MsgType::Reality: {
      RealityMsg m;
      if (!r.u32(m.tick)) return DecodeError::Truncated;
      auto st = read_state(r);
      if (!st.ok()) return st.error();
      m.state = st.value();
      if (!r.f64(m.will_of_recipient)) return DecodeError::Truncated;
      if (!std::isfinite(m.will_of_recipient)) return DecodeError::NonFiniteField;
      return finish(m);
    }
    case MsgType::Proposal: {
      ProposalMsg m;
      if (!r.u32(m.tick) || !r.u32(m.agent_id)) return DecodeError::Truncated;
      auto st = read_state(r);
      if (!st.ok()) return st.error();
      m.state = st.value();
      return finish(m);
    }
    case MsgType::MatchEnd: {
      MatchEndMsg m;
      if (!r.u32(m.final_tick)) return DecodeError::Truncated;
      return finish(m);
    }
    case MsgType::Error: {
      ErrorMsg m;
      if (!r.u8(m.code)) return DecodeError::Truncated;
      return finish(m);
    }
  }
  return DecodeError::UnknownType;
}

}  // namespace qcss::wire
