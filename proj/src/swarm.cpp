#include "swarm.hpp"

#include <stdexcept>

namespace qcss {

void InProcessSwarm::add(AgentId id, std::unique_ptr<AgentBehavior> behavior) {
  if (!behavior) throw std::invalid_argument("swarm member without behavior");
  if (!members_.emplace(id, std::move(behavior)).second) {
    throw std::invalid_argument("duplicate swarm member id " + std::to_string(id));
  }
}

std::vector<TimedProposal> InProcessSwarm::collect(const StateVector& reality) {
  std::vector<TimedProposal> proposals;
  proposals.reserve(members_.size());
  std::int64_t rank = 0;
  for (auto& [id, behavior] : members_) {
    behavior->observe(reality);
    while (behavior->step()) {
    }
    proposals.push_back({id, behavior->propose(), rank++});
  }
  return proposals;
}

}  // namespace qcss
