#include "consciousness.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qcss {

double neumaier_sum(std::span<const double> values) {
  double sum = 0.0;
  double comp = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

std::vector<ScoredProposal> soccer_consciousness(std::span<const ScoreInput> agents,
                                                 const StateVector& reality) {
  std::vector<ScoredProposal> out(agents.size());
  // Role-scoped running max over the d > 0 scores, filled in the first pass.
  double role_max[2] = {-1.0, -1.0};
  std::vector<double> dist_cache(agents.size());

  for (std::size_t i = 0; i < agents.size(); ++i) {
    const ScoreInput& a = agents[i];
    if (a.prev_sent == nullptr) {
      throw std::invalid_argument("soccer_consciousness: agent without prev_sent");
    }
    if (a.will < 0.0) {
      throw std::invalid_argument("soccer_consciousness: negative will");
    }
    const double d = distance(*a.prev_sent, reality);
    dist_cache[i] = d;
    out[i].agent = a.agent;
    out[i].eligible = true;
    if (d > 0.0) {
      double sc = a.will / d;
      if (std::isinf(sc)) sc = std::numeric_limits<double>::max();
      out[i].sc = sc;
      double& mx = role_max[static_cast<int>(a.role)];
      mx = std::max(mx, sc);
    }
  }
  for (std::size_t i = 0; i < agents.size(); ++i) {
    if (dist_cache[i] > 0.0) continue;
    const double mx = role_max[static_cast<int>(agents[i].role)];
    // No same-role agent with d > 0 means the whole role predicted
    // perfectly; fall back to the agent's own will.
    out[i].sc = mx >= 0.0 ? mx : agents[i].will;
  }
  return out;
}

SelectionDistribution selection_distribution(std::span<const ScoredProposal> scored) {
  SelectionDistribution dist;
  std::vector<const ScoredProposal*> eligible;
  eligible.reserve(scored.size());
  for (const auto& s : scored) {
    if (s.sc < 0.0 || std::isnan(s.sc)) {
      throw std::invalid_argument("selection_distribution: negative sc");
    }
    if (s.eligible) eligible.push_back(&s);
  }
  std::sort(eligible.begin(), eligible.end(),
            [](const ScoredProposal* a, const ScoredProposal* b) { return a->agent < b->agent; });

  std::vector<double> values;
  values.reserve(eligible.size());
  for (const auto* s : eligible) values.push_back(s->sc);
  double total = neumaier_sum(values);
  if (eligible.empty() || total <= 0.0) {
    dist.fallback = Fallback::RepeatReality;
    return dist;
  }
  // Huge score magnitudes can overflow the plain sum; renormalize by the
  // maximum first so the ratios stay exact up to rounding.
  if (std::isinf(total)) {
    double mx = 0.0;
    for (double v : values) mx = std::max(mx, v);
    for (double& v : values) v /= mx;
    total = neumaier_sum(values);
  }
  dist.entries.reserve(eligible.size());
  for (std::size_t i = 0; i < eligible.size(); ++i) {
    dist.entries.push_back({eligible[i]->agent, values[i] / total});
  }
  return dist;
}

SelectionDistribution late_filtered_distribution(const std::set<AgentId>& on_time_now,
                                                 const std::set<AgentId>& on_time_prev,
                                                 std::span<const ScoredProposal> scored) {
  std::vector<ScoredProposal> filtered(scored.begin(), scored.end());
  for (auto& s : filtered) {
    const bool eligible = on_time_now.count(s.agent) != 0 && on_time_prev.count(s.agent) != 0;
    assert(eligible && "scored must cover exactly the on-time intersection");
    s.eligible = s.eligible && eligible;
  }
  return selection_distribution(filtered);
}

std::optional<AgentId> sample(const SelectionDistribution& dist, SplitMix64& rng) {
  if (dist.entries.empty()) return std::nullopt;
  const double u = rng.next_double();
  double cumulative = 0.0;
  std::optional<AgentId> last_positive;
  for (const auto& e : dist.entries) {
    cumulative += e.probability;
    if (e.probability > 0.0) last_positive = e.agent;
    if (u < cumulative) return e.agent;
  }
  // Rounding can leave the final cumulative a hair under 1; the draw then
  // belongs to the last entry that had any mass.
  return last_positive ? last_positive : std::optional<AgentId>(dist.entries.back().agent);
}

WillTable update_will(const WillTable& current, std::span<const ScoredProposal> scored,
                      double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("update_will: alpha outside [0,1]");
  }
  if (alpha == 0.0) return current;

  std::map<AgentId, double> sc_of;
  for (const auto& s : scored) sc_of[s.agent] = s.sc;

  // Role sums over the whole table (absent agents count as sc = 0).
  double will_sum[2] = {0.0, 0.0};
  double sc_sum[2] = {0.0, 0.0};
  for (const auto& [id, entry] : current.entries()) {
    const int role = static_cast<int>(entry.first);
    will_sum[role] += entry.second;
    auto it = sc_of.find(id);
    if (it != sc_of.end()) sc_sum[role] += it->second;
  }

  std::map<AgentId, double> raw;
  double raw_sum[2] = {0.0, 0.0};
  for (const auto& [id, entry] : current.entries()) {
    const int role = static_cast<int>(entry.first);
    const double w = entry.second;
    double value = w;
    if (sc_sum[role] > 0.0) {
      auto it = sc_of.find(id);
      const double sc = it == sc_of.end() ? 0.0 : it->second;
      value = (1.0 - alpha) * w + alpha * sc * (will_sum[role] / sc_sum[role]);
    }
    raw[id] = value;
    raw_sum[role] += value;
  }

  // Rescale each role group back to its pre-update sum. Algebraically the
  // blend already preserves it; this squashes the accumulated rounding.
  std::map<AgentId, double> next;
  for (const auto& [id, entry] : current.entries()) {
    const int role = static_cast<int>(entry.first);
    const double factor = raw_sum[role] > 0.0 ? will_sum[role] / raw_sum[role] : 1.0;
    next[id] = raw[id] * factor;
  }

  WillTable updated = current;
  auto res = updated.replace_all(next);
  assert(res.ok());
  (void)res;
  return updated;
}

}  // namespace qcss
