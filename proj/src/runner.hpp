#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "server.hpp"
#include "stats.hpp"
#include "trace.hpp"

namespace qcss {

struct RunOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::uint32_t> match_ticks;
  bool force_virtual = false;  // run in-process on the virtual clock
  std::vector<double>* tick_engine_us = nullptr;  // optional per-tick timings
};

struct RunResult {
  TraceHeader header;
  MatchStats stats;
  ServerCounters counters;  // zeros for in-process runs
};

// Runs a configured match end to end. In-process transport drives the
// engine on a virtual clock (deterministic, replayable byte for byte);
// loopback transport fields every agent as a thread with its own UDP
// socket against a real-time scheduler. The trace, when requested, is
// streamed line by line.
Result<RunResult, std::string> run_match(const MatchSetup& setup, const RunOverrides& overrides,
                                         std::ostream* trace_out);

struct ReplayReport {
  std::uint32_t ticks_checked = 0;
  bool ok = true;
  std::string mismatch;  // first divergence, empty when ok

  nlohmann::json to_json() const;
};

// Re-derives the whole match from the trace: behaviors are rebuilt from the
// header roster, proposals regenerated against each recorded reality, and
// arrival times taken from the record, so winners, distributions and will
// values must reproduce exactly.
Result<ReplayReport, std::string> replay_trace(const TraceData& trace);

}  // namespace qcss
