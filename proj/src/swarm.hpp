#pragma once

#include <map>
#include <memory>

#include "agent.hpp"
#include "scheduler.hpp"

namespace qcss {

// Agents living inside the scheduler process. They skip the datagram layer
// but feed the identical scoring path: each tick every member observes the
// reality, settles its inner steps and files a proposal with a synthetic
// on-time arrival stamp (its rank among the members, in microseconds).
class InProcessSwarm {
 public:
  void add(AgentId id, std::unique_ptr<AgentBehavior> behavior);
  std::size_t size() const { return members_.size(); }

  // Builds the tick's proposal list, ascending by agent id.
  std::vector<TimedProposal> collect(const StateVector& reality);

 private:
  std::map<AgentId, std::unique_ptr<AgentBehavior>> members_;
};

}  // namespace qcss
