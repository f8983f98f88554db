#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "agent.hpp"
#include "config.hpp"
#include "scheduler.hpp"

namespace qcss {

inline constexpr int kTraceVersion = 1;
inline constexpr int kProtocolVersion = 1;

// One fielded agent as the trace header records it: identity, behavior and
// starting will. Enough to rebuild the exact agent for replay.
struct AgentDescriptor {
  AgentId id = 0;
  Role role = Role::Player;
  Team team = Team::Home;
  std::uint8_t shirt = 0;
  BehaviorSpec behavior;
  double will0 = 0.0;
};

struct TraceHeader {
  int trace_version = kTraceVersion;
  int protocol_version = kProtocolVersion;
  std::uint64_t seed = 0;
  MatchSetup setup;
  std::vector<AgentDescriptor> roster;
};

struct TraceData {
  TraceHeader header;
  std::vector<TickRecord> ticks;
};

// JSON-lines trace: one header object, then one tick record per line.
// Floats serialize with round-trip precision, so read-back is exact and
// rewriting a parsed trace is byte-identical.
class TraceWriter {
 public:
  TraceWriter(std::ostream& out, const TraceHeader& header);
  void write(const TickRecord& record);

 private:
  std::ostream& out_;
};

nlohmann::json header_to_json(const TraceHeader& header);
Result<TraceHeader, std::string> header_from_json(const nlohmann::json& j);

Result<TraceData, std::string> read_trace(std::istream& in);
Result<TraceData, std::string> load_trace(const std::string& path);

}  // namespace qcss
