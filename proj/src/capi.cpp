#include "qcss.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "experiment.hpp"
#include "runner.hpp"
#include "serial.hpp"
#include "trace.hpp"
#include "wire.hpp"

using nlohmann::json;

namespace {

thread_local std::string g_last_error;

qcss_status fail(qcss_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

qcss_status out_string(char** out, const std::string& s) {
  if (!out) return fail(QCSS_ERR_INVALID_ARGUMENT, "null output pointer");
  *out = dup_string(s);
  return *out ? QCSS_OK : fail(QCSS_ERR_INTERNAL, "allocation failed");
}

json parse_or_null(const char* text) {
  if (!text) return json(nullptr);
  return json::parse(text, nullptr, false);
}

qcss::Result<qcss::wire::Message, std::string> message_from_json(const json& j) {
  using namespace qcss;
  using namespace qcss::wire;
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    return std::string("message must be an object with a \"type\"");
  }
  const std::string type = j["type"].get<std::string>();
  try {
    if (type == "join") {
      JoinMsg m;
      auto role = serial::role_from_json(j.at("role"));
      if (!role.ok()) return role.error();
      m.role = role.value();
      auto team = serial::team_from_json(j.at("team"));
      if (!team.ok()) return team.error();
      m.team = team.value();
      m.shirt = j.value("shirt", 0);
      if (m.shirt > kTeamSize) return std::string("shirt must be in 0..11");
      return Message(m);
    }
    if (type == "join_ack") {
      JoinAckMsg m;
      m.agent_id = j.at("agent_id").get<AgentId>();
      m.initial_will = j.at("initial_will").get<double>();
      m.tick_period_ms = j.at("tick_period_ms").get<std::uint32_t>();
      m.proposal_deadline_ms = j.at("proposal_deadline_ms").get<std::uint32_t>();
      return Message(m);
    }
    if (type == "reality") {
      RealityMsg m;
      m.tick = j.at("tick").get<std::uint32_t>();
      auto state = serial::state_from_json(j.at("state"));
      if (!state.ok()) return state.error();
      m.state = state.value();
      m.will_of_recipient = j.at("will").get<double>();
      return Message(m);
    }
    if (type == "proposal") {
      ProposalMsg m;
      m.tick = j.at("tick").get<std::uint32_t>();
      m.agent_id = j.at("agent_id").get<AgentId>();
      auto state = serial::state_from_json(j.at("state"));
      if (!state.ok()) return state.error();
      m.state = state.value();
      return Message(m);
    }
    if (type == "match_end") {
      MatchEndMsg m;
      m.final_tick = j.at("final_tick").get<std::uint32_t>();
      return Message(m);
    }
    if (type == "error") {
      ErrorMsg m;
      m.code = j.at("code").get<std::uint8_t>();
      return Message(m);
    }
  } catch (const json::exception& e) {
    return std::string("bad message field: ") + e.what();
  }
  return std::string("unknown message type \"") + type + "\"";
}

json message_to_json(const qcss::wire::Message& message) {
  using namespace qcss;
  using namespace qcss::wire;
  return std::visit(
      [](const auto& m) -> json {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, JoinMsg>) {
          return {{"type", "join"},
                  {"role", to_string(m.role)},
                  {"team", to_string(m.team)},
                  {"shirt", m.shirt}};
        } else if constexpr (std::is_same_v<T, JoinAckMsg>) {
          return {{"type", "join_ack"},
                  {"agent_id", m.agent_id},
                  {"initial_will", m.initial_will},
                  {"tick_period_ms", m.tick_period_ms},
                  {"proposal_deadline_ms", m.proposal_deadline_ms}};
        } else if constexpr (std::is_same_v<T, RealityMsg>) {
          return {{"type", "reality"},
                  {"tick", m.tick},
                  {"state", serial::state_to_json(m.state)},
                  {"will", m.will_of_recipient}};
        } else if constexpr (std::is_same_v<T, ProposalMsg>) {
          return {{"type", "proposal"},
                  {"tick", m.tick},
                  {"agent_id", m.agent_id},
                  {"state", serial::state_to_json(m.state)}};
        } else if constexpr (std::is_same_v<T, MatchEndMsg>) {
          return {{"type", "match_end"}, {"final_tick", m.final_tick}};
        } else {
          return {{"type", "error"}, {"code", m.code}};
        }
      },
      message);
}

}  // namespace

struct qcss_trace {
  qcss::TraceData data;
};

extern "C" {

const char* qcss_version(void) { return "1.0.0"; }

const char* qcss_last_error(void) { return g_last_error.c_str(); }

void qcss_string_free(char* s) { std::free(s); }
void qcss_bytes_free(uint8_t* p) { std::free(p); }

qcss_status qcss_match_run(const char* config_path, const char* trace_path,
                           const char* overrides_json, char** stats_json_out) {
  if (!config_path) return fail(QCSS_ERR_INVALID_ARGUMENT, "config_path is null");
  auto setup = qcss::load_setup(config_path);
  if (!setup.ok()) return fail(QCSS_ERR_PARSE, setup.error());

  qcss::RunOverrides overrides;
  if (overrides_json) {
    const json j = parse_or_null(overrides_json);
    if (j.is_discarded() || !j.is_object()) {
      return fail(QCSS_ERR_PARSE, "overrides must be a JSON object");
    }
    try {
      if (j.contains("seed")) overrides.seed = j["seed"].get<std::uint64_t>();
      if (j.contains("match_ticks")) {
        overrides.match_ticks = j["match_ticks"].get<std::uint32_t>();
      }
      if (j.contains("virtual_clock")) overrides.force_virtual = j["virtual_clock"].get<bool>();
    } catch (const json::exception& e) {
      return fail(QCSS_ERR_PARSE, std::string("overrides: ") + e.what());
    }
  }

  std::ofstream trace_file;
  std::ostream* trace_out = nullptr;
  if (trace_path) {
    trace_file.open(trace_path);
    if (!trace_file) {
      return fail(QCSS_ERR_IO, std::string("cannot write trace file: ") + trace_path);
    }
    trace_out = &trace_file;
  }

  auto run = qcss::run_match(setup.value(), overrides, trace_out);
  if (!run.ok()) return fail(QCSS_ERR_STATE, run.error());
  return out_string(stats_json_out, run.value().stats.to_json().dump());
}

qcss_status qcss_trace_open(const char* path, qcss_trace** out) {
  if (!path || !out) return fail(QCSS_ERR_INVALID_ARGUMENT, "null argument");
  auto data = qcss::load_trace(path);
  if (!data.ok()) return fail(QCSS_ERR_PARSE, data.error());
  *out = new qcss_trace{std::move(data.value())};
  return QCSS_OK;
}

void qcss_trace_close(qcss_trace* trace) { delete trace; }

qcss_status qcss_trace_replay(const qcss_trace* trace, char** report_json_out) {
  if (!trace) return fail(QCSS_ERR_INVALID_ARGUMENT, "trace is null");
  auto report = qcss::replay_trace(trace->data);
  if (!report.ok()) return fail(QCSS_ERR_STATE, report.error());
  return out_string(report_json_out, report.value().to_json().dump());
}

qcss_status qcss_trace_stats(const qcss_trace* trace, char** stats_json_out) {
  if (!trace) return fail(QCSS_ERR_INVALID_ARGUMENT, "trace is null");
  return out_string(stats_json_out, qcss::compute_stats(trace->data).to_json().dump());
}

qcss_status qcss_experiment_home_advantage(const char* config_path,
                                           const char* overrides_json,
                                           char** report_json_out) {
  if (!config_path) return fail(QCSS_ERR_INVALID_ARGUMENT, "config_path is null");
  auto setup = qcss::load_setup(config_path);
  if (!setup.ok()) return fail(QCSS_ERR_PARSE, setup.error());

  qcss::ExperimentOptions options;
  if (overrides_json) {
    const json j = parse_or_null(overrides_json);
    if (j.is_discarded() || !j.is_object()) {
      return fail(QCSS_ERR_PARSE, "overrides must be a JSON object");
    }
    try {
      if (j.contains("repetitions")) {
        options.repetitions = j["repetitions"].get<std::uint32_t>();
      }
      if (j.contains("supporters")) options.supporters = j["supporters"].get<std::uint32_t>();
      if (j.contains("ticks")) options.ticks = j["ticks"].get<std::uint32_t>();
      if (j.contains("seed")) options.seed = j["seed"].get<std::uint64_t>();
    } catch (const json::exception& e) {
      return fail(QCSS_ERR_PARSE, std::string("overrides: ") + e.what());
    }
  }
  auto report = qcss::home_advantage_experiment(setup.value(), options);
  if (!report.ok()) return fail(QCSS_ERR_STATE, report.error());
  return out_string(report_json_out, report.value().dump());
}

qcss_status qcss_bench_swarm(uint32_t supporters, uint32_t ticks, char** report_json_out) {
  if (supporters == 0) return fail(QCSS_ERR_INVALID_ARGUMENT, "supporters must be positive");
  return out_string(report_json_out, qcss::bench_swarm(supporters, ticks).dump());
}

qcss_status qcss_message_decode(const uint8_t* data, size_t size, char** message_json_out) {
  if (!data && size > 0) return fail(QCSS_ERR_INVALID_ARGUMENT, "data is null");
  auto decoded = qcss::wire::decode(std::span<const std::uint8_t>(data, size));
  if (!decoded.ok()) {
    return fail(QCSS_ERR_DECODE, qcss::wire::to_string(decoded.error()));
  }
  return out_string(message_json_out, message_to_json(decoded.value()).dump());
}

qcss_status qcss_message_encode(const char* message_json, uint8_t** data_out,
                                size_t* size_out) {
  if (!message_json || !data_out || !size_out) {
    return fail(QCSS_ERR_INVALID_ARGUMENT, "null argument");
  }
  const json j = parse_or_null(message_json);
  if (j.is_discarded()) return fail(QCSS_ERR_PARSE, "message is not valid JSON");
  auto message = message_from_json(j);
  if (!message.ok()) return fail(QCSS_ERR_PARSE, message.error());
  const auto bytes = qcss::wire::encode(message.value());
  auto* out = static_cast<uint8_t*>(std::malloc(bytes.size()));
  if (!out) return fail(QCSS_ERR_INTERNAL, "allocation failed");
  std::memcpy(out, bytes.data(), bytes.size());
  *data_out = out;
  *size_out = bytes.size();
  return QCSS_OK;
}

qcss_status qcss_agent_run(const char* params_json, char** summary_json_out) {
  using namespace qcss;
  if (!params_json) return fail(QCSS_ERR_INVALID_ARGUMENT, "params is null");
  const json j = parse_or_null(params_json);
  if (j.is_discarded() || !j.is_object()) {
    return fail(QCSS_ERR_PARSE, "params must be a JSON object");
  }

  std::string host = "127.0.0.1";
  std::uint16_t port = 0;
  Role role = Role::Player;
  Team team = Team::Home;
  std::uint8_t shirt = 0;
  BehaviorSpec behavior;
  AgentLoopOptions loop_options;
  Pitch pitch;
  try {
    if (j.contains("pitch_length")) pitch.length = j["pitch_length"].get<double>();
    if (j.contains("pitch_width")) pitch.width = j["pitch_width"].get<double>();
    if (j.contains("host")) host = j["host"].get<std::string>();
    if (!j.contains("port")) return fail(QCSS_ERR_PARSE, "params: \"port\" is required");
    port = j["port"].get<std::uint16_t>();
    if (j.contains("role")) {
      auto r = serial::role_from_json(j["role"]);
      if (!r.ok()) return fail(QCSS_ERR_PARSE, r.error());
      role = r.value();
    }
    if (j.contains("team")) {
      auto t = serial::team_from_json(j["team"]);
      if (!t.ok()) return fail(QCSS_ERR_PARSE, t.error());
      team = t.value();
    }
    shirt = j.value("shirt", 0);
    const std::string kind = j.value("behavior", role == Role::Player ? "reference" : "bias");
    if (kind == "reference") {
      behavior.kind = "player";
    } else if (kind == "bias") {
      behavior.kind = "supporter";
    } else if (kind == "echo") {
      behavior.kind = "echo";
    } else {
      return fail(QCSS_ERR_PARSE, "behavior must be reference, bias or echo");
    }
    if (j.contains("archetype")) behavior.archetype = j["archetype"].get<std::string>();
    behavior.bias = j.value("bias", 1.0);
    behavior.max_speed = j.value("max_speed", 0.8);
    loop_options.deadline_margin =
        std::chrono::milliseconds(j.value("deadline_margin_ms", 10));
    if (j.contains("loss_timeout_ms")) {
      loop_options.loss_timeout = std::chrono::milliseconds(j["loss_timeout_ms"].get<int>());
    }
  } catch (const json::exception& e) {
    return fail(QCSS_ERR_PARSE, std::string("params: ") + e.what());
  }

  auto endpoint = net::parse_endpoint(host, port);
  if (!endpoint.ok()) return fail(QCSS_ERR_NETWORK, endpoint.error());
  auto conn = UdpConnection::connect(endpoint.value());
  if (!conn.ok()) return fail(QCSS_ERR_NETWORK, conn.error());

  auto ack = join_match(*conn.value(), role, team, shirt);
  if (!ack.ok()) return fail(QCSS_ERR_NETWORK, ack.error());

  AgentIdentity identity{ack.value().agent_id, role, team, shirt};
  auto agent = make_behavior(behavior, identity, pitch);
  const AgentSummary summary =
      run_agent_loop(*agent, *conn.value(), identity.id, ack.value(), loop_options);

  const json out{{"agent_id", identity.id},
                 {"initial_will", ack.value().initial_will},
                 {"realities_seen", summary.realities_seen},
                 {"proposals_sent", summary.proposals_sent},
                 {"step_calls", summary.step_calls},
                 {"last_tick", summary.last_tick},
                 {"lost_connection", summary.lost_connection}};
  return out_string(summary_json_out, out.dump());
}

}  // extern "C"
