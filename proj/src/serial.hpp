#pragma once

#include <json.hpp>

#include "agent.hpp"
#include "model.hpp"
#include "scheduler.hpp"

namespace qcss::serial {

using nlohmann::json;

json state_to_json(const StateVector& s);
Result<StateVector, std::string> state_from_json(const json& j);

json tick_to_json(const TickRecord& r);
Result<TickRecord, std::string> tick_from_json(const json& j);

json behavior_to_json(const BehaviorSpec& spec);
Result<BehaviorSpec, std::string> behavior_from_json(const json& j);

Result<Team, std::string> team_from_json(const json& j);
Result<Role, std::string> role_from_json(const json& j);

}  // namespace qcss::serial
