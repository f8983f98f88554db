#include "trace.hpp"

#include <fstream>
#include <ostream>

#include "serial.hpp"

namespace qcss {

using nlohmann::json;

TraceWriter::TraceWriter(std::ostream& out, const TraceHeader& header) : out_(out) {
  out_ << header_to_json(header).dump() << "\n";
}

void TraceWriter::write(const TickRecord& record) {
  out_ << serial::tick_to_json(record).dump() << "\n";
}

json header_to_json(const TraceHeader& header) {
  json roster = json::array();
  for (const auto& a : header.roster) {
    json entry{{"id", a.id},
               {"role", to_string(a.role)},
               {"team", to_string(a.team)},
               {"behavior", serial::behavior_to_json(a.behavior)},
               {"will", a.will0}};
    if (a.role == Role::Player) entry["shirt"] = a.shirt;
    roster.push_back(entry);
  }
  return json{{"trace_version", header.trace_version},
              {"protocol_version", header.protocol_version},
              {"seed", header.seed},
              {"config", setup_to_json(header.setup)},
              {"roster", roster}};
}

Result<TraceHeader, std::string> header_from_json(const json& j) {
  if (!j.is_object()) return std::string("trace header must be an object");
  for (const char* key : {"trace_version", "protocol_version", "seed", "config", "roster"}) {
    if (!j.contains(key)) return std::string("trace header missing \"") + key + "\"";
  }
  TraceHeader header;
  header.trace_version = j["trace_version"].get<int>();
  if (header.trace_version != kTraceVersion) {
    return "unsupported trace version " + std::to_string(header.trace_version);
  }
  header.protocol_version = j["protocol_version"].get<int>();
  header.seed = j["seed"].get<std::uint64_t>();

  auto setup = setup_from_json(j["config"]);
  if (!setup.ok()) return "trace config: " + setup.error();
  header.setup = setup.value();

  for (const auto& item : j["roster"]) {
    AgentDescriptor a;
    a.id = item.at("id").get<AgentId>();
    auto role = serial::role_from_json(item.at("role"));
    if (!role.ok()) return role.error();
    a.role = role.value();
    auto team = serial::team_from_json(item.at("team"));
    if (!team.ok()) return team.error();
    a.team = team.value();
    if (item.contains("shirt")) a.shirt = item["shirt"].get<std::uint8_t>();
    auto behavior = serial::behavior_from_json(item.at("behavior"));
    if (!behavior.ok()) return behavior.error();
    a.behavior = behavior.value();
    a.will0 = item.at("will").get<double>();
    header.roster.push_back(a);
  }
  return header;
}

Result<TraceData, std::string> read_trace(std::istream& in) {
  TraceData data;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      return "trace line " + std::to_string(line_no) + ": invalid JSON";
    }
    if (!have_header) {
      auto header = header_from_json(j);
      if (!header.ok()) return "trace line 1: " + header.error();
      data.header = header.value();
      have_header = true;
      continue;
    }
    auto tick = serial::tick_from_json(j);
    if (!tick.ok()) return "trace line " + std::to_string(line_no) + ": " + tick.error();
    data.ticks.push_back(tick.value());
  }
  if (!have_header) return std::string("trace has no header line");
  return data;
}

Result<TraceData, std::string> load_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) return "cannot open trace file: " + path;
  auto data = read_trace(in);
  if (!data.ok()) return path + ": " + data.error();
  return data;
}

}  // namespace qcss
