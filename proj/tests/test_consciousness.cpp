#include "consciousness.hpp"

#include <cmath>
#include <stdexcept>
#include <map>
#include <vector>

#include <doctest.h>

#include "oracles.hpp"

using namespace qcss;

namespace {

// A state vector whose only difference from the zero vector is the ball's x,
// so d(make_offset(d), zero) == d.
StateVector offset_state(double d) {
  StateVector s;
  s.ball.x = d;
  return s;
}

std::vector<ScoredProposal> as_scored(const std::vector<double>& sc) {
  std::vector<ScoredProposal> out;
  for (std::size_t i = 0; i < sc.size(); ++i) {
    out.push_back({AgentId(i + 1), sc[i], true});
  }
  return out;
}

}  // namespace

TEST_CASE("sc: the division branch is will over distance") {
  const StateVector reality;
  const StateVector prev = offset_state(2.0);
  ScoreInput in{1, Role::Player, 1.0, &prev};
  auto scored = soccer_consciousness(std::span(&in, 1), reality);
  REQUIRE(scored.size() == 1);
  CHECK(scored[0].sc == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("sc: a perfect predictor inherits the role maximum") {
  const StateVector reality;
  const StateVector p1 = offset_state(2.0);
  const StateVector p2 = offset_state(4.0);
  const StateVector p3 = offset_state(0.0);
  std::vector<ScoreInput> in{
      {1, Role::Player, 1.0, &p1},
      {2, Role::Player, 1.0, &p2},
      {3, Role::Player, 1.0, &p3},
  };
  auto scored = soccer_consciousness(in, reality);
  CHECK(scored[0].sc == doctest::Approx(0.5));
  CHECK(scored[1].sc == doctest::Approx(0.25));
  CHECK(scored[2].sc == doctest::Approx(0.5));  // the worked fixture: (0.5, 0.25, 0.5)
}

TEST_CASE("sc: the role maximum does not cross roles") {
  const StateVector reality;
  const StateVector far = offset_state(0.5);   // player, sc = 2.0
  const StateVector perfect = offset_state(0.0);
  std::vector<ScoreInput> in{
      {1, Role::Player, 1.0, &far},
      {2, Role::Supporter, 0.25, &perfect},  // alone in its role, all d = 0
  };
  auto scored = soccer_consciousness(in, reality);
  CHECK(scored[0].sc == doctest::Approx(2.0));
  CHECK(scored[1].sc == doctest::Approx(0.25));  // falls back to its own will
}

TEST_CASE("sc: when the whole role predicted perfectly, sc equals the will") {
  const StateVector reality;
  const StateVector perfect;
  std::vector<ScoreInput> in{
      {1, Role::Player, 0.3, &perfect},
      {2, Role::Player, 0.7, &perfect},
  };
  auto scored = soccer_consciousness(in, reality);
  CHECK(scored[0].sc == doctest::Approx(0.3));
  CHECK(scored[1].sc == doctest::Approx(0.7));
}

TEST_CASE("sc: missing prev_sent is a caller error") {
  std::vector<ScoreInput> in{{1, Role::Player, 1.0, nullptr}};
  CHECK_THROWS_AS((void)soccer_consciousness(in, StateVector{}), std::invalid_argument);
}

TEST_CASE("selection_distribution: normalization fixture") {
  auto dist = selection_distribution(as_scored({1.0, 1.0, 2.0}));
  REQUIRE(dist.entries.size() == 3);
  CHECK(dist.entries[0].probability == doctest::Approx(0.25));
  CHECK(dist.entries[1].probability == doctest::Approx(0.25));
  CHECK(dist.entries[2].probability == doctest::Approx(0.5));
  CHECK(dist.fallback == Fallback::None);
}

TEST_CASE("selection_distribution: single eligible agent takes it all") {
  auto dist = selection_distribution(as_scored({3.7}));
  REQUIRE(dist.entries.size() == 1);
  CHECK(dist.entries[0].probability == 1.0);
}

TEST_CASE("selection_distribution: matches the extended-precision oracle") {
  SplitMix64 rng(2024);
  for (int round = 0; round < 1000; ++round) {
    const std::size_t n = 1 + rng.next_below(200);
    std::vector<double> sc(n);
    for (auto& v : sc) v = rng.next_double() * 10.0;
    auto dist = selection_distribution(as_scored(sc));
    auto want = testing::normalize_oracle(sc);
    REQUIRE(dist.entries.size() == n);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double w = static_cast<double>(want[i]);
      CHECK(std::abs(dist.entries[i].probability - w) <= 1e-12 * std::max(w, 1e-300));
      sum += dist.entries[i].probability;
    }
    CHECK(std::abs(sum - 1.0) <= 1e-12);
  }
}

TEST_CASE("selection_distribution: negative scores are rejected") {
  std::vector<ScoredProposal> scored{{1, -0.5, true}};
  CHECK_THROWS_AS((void)selection_distribution(scored), std::invalid_argument);
}

TEST_CASE("selection_distribution: empty or zero-mass input falls back") {
  auto empty = selection_distribution({});
  CHECK(empty.entries.empty());
  CHECK(empty.fallback == Fallback::RepeatReality);

  auto zeros = selection_distribution(as_scored({0.0, 0.0}));
  CHECK(zeros.entries.empty());
  CHECK(zeros.fallback == Fallback::RepeatReality);
}

TEST_CASE("late filter: a late agent is excluded and the rest renormalize") {
  std::set<AgentId> now{1, 3};
  std::set<AgentId> prev{1, 2, 3};
  std::vector<ScoredProposal> scored{{1, 1.0, true}, {3, 1.0, true}};
  auto dist = late_filtered_distribution(now, prev, scored);
  REQUIRE(dist.entries.size() == 2);
  CHECK(dist.entries[0].agent == 1);
  CHECK(dist.entries[0].probability == doctest::Approx(0.5));
  CHECK(dist.entries[1].agent == 3);
  CHECK(dist.entries[1].probability == doctest::Approx(0.5));
}

TEST_CASE("late filter: on time now but late before still yields zero") {
  // Agent 2 sent on time at t but was late at t-1: it must not appear.
  std::set<AgentId> now{1, 2};
  std::set<AgentId> prev{1};
  std::vector<ScoredProposal> scored{{1, 2.0, true}};
  auto dist = late_filtered_distribution(now, prev, scored);
  REQUIRE(dist.entries.size() == 1);
  CHECK(dist.entries[0].agent == 1);
  CHECK(dist.entries[0].probability == 1.0);
}

TEST_CASE("late filter: nobody on time repeats reality") {
  auto dist = late_filtered_distribution({}, {1, 2}, {});
  CHECK(dist.entries.empty());
  CHECK(dist.fallback == Fallback::RepeatReality);
}

TEST_CASE("sample: degenerate distribution always picks its agent") {
  SelectionDistribution dist;
  dist.entries.push_back({7, 1.0});
  SplitMix64 rng(1);
  for (int i = 0; i < 100; ++i) {
    auto winner = sample(dist, rng);
    REQUIRE(winner.has_value());
    CHECK(*winner == 7);
  }
}

TEST_CASE("sample: empty distribution repeats reality") {
  SelectionDistribution dist;
  dist.fallback = Fallback::RepeatReality;
  SplitMix64 rng(1);
  CHECK(!sample(dist, rng).has_value());
}

TEST_CASE("sample: empirical frequencies track the distribution") {
  SelectionDistribution dist;
  dist.entries = {{1, 0.25}, {2, 0.25}, {3, 0.5}};
  SplitMix64 rng(123);
  std::map<AgentId, int> counts;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) counts[*sample(dist, rng)]++;
  CHECK(std::abs(counts[1] / double(draws) - 0.25) <= 0.01);
  CHECK(std::abs(counts[2] / double(draws) - 0.25) <= 0.01);
  CHECK(std::abs(counts[3] / double(draws) - 0.5) <= 0.01);
}

TEST_CASE("sample: identical seed reproduces the identical sequence") {
  SelectionDistribution dist;
  dist.entries = {{1, 0.3}, {2, 0.3}, {3, 0.4}};
  SplitMix64 a(555), b(555);
  for (int i = 0; i < 1000; ++i) {
    CHECK(*sample(dist, a) == *sample(dist, b));
  }
}

TEST_CASE("update_will: alpha zero is an exact identity") {
  Roster r;
  CHECK(r.add_player(1, Team::Home, 1).ok());
  CHECK(r.add_player(2, Team::Guest, 1).ok());
  auto table = WillTable::create(r, {{1, 1.25}, {2, 0.75}});
  REQUIRE(table.ok());
  auto next = update_will(table.value(), as_scored({5.0, 0.1}), 0.0);
  CHECK(next.will(1) == 1.25);
  CHECK(next.will(2) == 0.75);
}

TEST_CASE("update_will: worked fixture at alpha one") {
  Roster r;
  CHECK(r.add_player(1, Team::Home, 1).ok());
  CHECK(r.add_player(2, Team::Guest, 1).ok());
  auto table = WillTable::create(r, {{1, 1.0}, {2, 1.0}});
  REQUIRE(table.ok());
  auto next = update_will(table.value(), as_scored({1.0, 3.0}), 1.0);
  // raw = sc * (sum_w / sum_sc) = (1,3) * (2/4) = (0.5, 1.5); sum stays 2.
  CHECK(next.will(1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(next.will(2) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(next.player_sum() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("update_will: independent re-derivation on random inputs") {
  SplitMix64 rng(31337);
  Roster r;
  for (AgentId id = 1; id <= 6; ++id) {
    CHECK(r.add_player(id, id % 2 ? Team::Home : Team::Guest, std::uint8_t((id + 1) / 2)).ok());
  }
  auto table = WillTable::create(r, {{1, 1.0}, {2, 1.0}, {3, 1.0}, {4, 1.0}, {5, 1.0}, {6, 1.0}});
  REQUIRE(table.ok());

  for (int round = 0; round < 50; ++round) {
    const double alpha = rng.next_double();
    std::vector<double> sc(6);
    for (auto& v : sc) v = rng.next_double() * 4.0;
    auto next = update_will(table.value(), as_scored(sc), alpha);

    // Re-derive with the rule stated from scratch.
    long double sum_w = 6.0L, sum_sc = 0.0L;
    for (double v : sc) sum_sc += v;
    std::vector<long double> raw(6);
    long double raw_sum = 0.0L;
    for (int i = 0; i < 6; ++i) {
      raw[i] = sum_sc > 0.0L ? (1.0L - alpha) * 1.0L + alpha * sc[i] * (sum_w / sum_sc) : 1.0L;
      raw_sum += raw[i];
    }
    for (int i = 0; i < 6; ++i) {
      const double want = static_cast<double>(raw[i] * (sum_w / raw_sum));
      CHECK(next.will(AgentId(i + 1)) == doctest::Approx(want).epsilon(1e-12));
    }
  }
}

TEST_CASE("update_will: role sums preserved under random churn") {
  SplitMix64 rng(4242);
  Roster r;
  AgentId id = 1;
  for (int shirt = 1; shirt <= 11; ++shirt) {
    CHECK(r.add_player(id++, Team::Home, std::uint8_t(shirt)).ok());
    CHECK(r.add_player(id++, Team::Guest, std::uint8_t(shirt)).ok());
  }
  std::map<AgentId, double> supp;
  for (int i = 0; i < 5; ++i) {
    CHECK(r.add_supporter(id, i % 2 ? Team::Home : Team::Guest).ok());
    supp[id++] = 0.15;
  }
  WillTable w = WillTable::uniform_players(r, supp);
  const double supporter_sum0 = w.supporter_sum();

  for (int round = 0; round < 500; ++round) {
    std::vector<ScoredProposal> scored;
    for (AgentId a = 1; a < id; ++a) {
      if (rng.next_double() < 0.3) continue;  // some agents absent
      scored.push_back({a, rng.next_double() * 10.0, true});
    }
    w = update_will(w, scored, rng.next_double());
    CHECK(std::abs(w.player_sum() - 22.0) <= 1e-9);
    CHECK(std::abs(w.supporter_sum() - supporter_sum0) <= 1e-9);
  }
}

TEST_CASE("update_will: iterating with constant sc approaches proportionality") {
  Roster r;
  CHECK(r.add_player(1, Team::Home, 1).ok());
  CHECK(r.add_player(2, Team::Home, 2).ok());
  CHECK(r.add_player(3, Team::Home, 3).ok());
  auto table = WillTable::create(r, {{1, 1.0}, {2, 1.0}, {3, 1.0}});
  REQUIRE(table.ok());
  WillTable w = table.value();

  const std::vector<double> sc{1.0, 2.0, 3.0};
  // Proportional target: w_i = 3 * sc_i / sum(sc).
  const std::vector<double> target{0.5, 1.0, 1.5};
  auto l1 = [&](const WillTable& t) {
    double acc = 0.0;
    for (int i = 0; i < 3; ++i) acc += std::abs(t.will(AgentId(i + 1)) - target[i]);
    return acc;
  };
  double prev = l1(w);
  for (int i = 0; i < 1000; ++i) {
    w = update_will(w, as_scored(sc), 0.1);
    const double cur = l1(w);
    CHECK(cur <= prev + 1e-12);
    prev = cur;
  }
  CHECK(prev <= 1e-9);
}

TEST_CASE("update_will: alpha outside [0,1] is rejected") {
  Roster r;
  CHECK(r.add_player(1, Team::Home, 1).ok());
  auto table = WillTable::create(r, {{1, 1.0}});
  REQUIRE(table.ok());
  CHECK_THROWS_AS((void)update_will(table.value(), {}, -0.1), std::invalid_argument);
  CHECK_THROWS_AS((void)update_will(table.value(), {}, 1.1), std::invalid_argument);
}

TEST_CASE("property: probabilities sum to one for random scored sets") {
  SplitMix64 rng(777);
  for (int round = 0; round < 200; ++round) {
    const std::size_t n = 1 + rng.next_below(500);
    std::vector<ScoredProposal> scored;
    for (std::size_t i = 0; i < n; ++i) {
      scored.push_back({AgentId(i + 1), rng.next_double() * 100.0, true});
    }
    auto dist = selection_distribution(scored);
    std::vector<double> ps;
    for (const auto& e : dist.entries) {
      CHECK(e.probability >= 0.0);
      ps.push_back(e.probability);
    }
    CHECK(std::abs(neumaier_sum(ps) - 1.0) <= 1e-12);
  }
}

TEST_CASE("property: the distribution is invariant under positive will scaling") {
  SplitMix64 rng(888);
  // Exercise all three branches: players with d > 0, one perfect player,
  // and a supporter role where everyone has d = 0.
  std::vector<StateVector> prevs;
  std::vector<Role> roles;
  std::vector<double> base_will;
  for (int i = 0; i < 10; ++i) {
    prevs.push_back(offset_state(0.5 + rng.next_double() * 8.0));
    roles.push_back(Role::Player);
    base_will.push_back(0.2 + rng.next_double());
  }
  prevs.push_back(offset_state(0.0));
  roles.push_back(Role::Player);
  base_will.push_back(0.7);
  for (int i = 0; i < 3; ++i) {
    prevs.push_back(offset_state(0.0));
    roles.push_back(Role::Supporter);
    base_will.push_back(0.1 + 0.05 * i);
  }
  const StateVector reality;

  auto distribution_for = [&](double c) {
    std::vector<ScoreInput> in;
    for (std::size_t i = 0; i < prevs.size(); ++i) {
      in.push_back({AgentId(i + 1), roles[i], c * base_will[i], &prevs[i]});
    }
    return selection_distribution(soccer_consciousness(in, reality));
  };

  const auto reference = distribution_for(1.0);
  for (double c : {1e-6, 1e6}) {
    const auto scaled = distribution_for(c);
    REQUIRE(scaled.entries.size() == reference.entries.size());
    for (std::size_t i = 0; i < reference.entries.size(); ++i) {
      CHECK(std::abs(scaled.entries[i].probability - reference.entries[i].probability) <= 1e-12);
    }
  }
}

TEST_CASE("property: decreasing one agent's distance never hurts it") {
  const StateVector reality;
  std::vector<double> other_d{3.0, 5.0, 9.0};
  double prev_p = -1.0;
  for (double d : {8.0, 4.0, 2.0, 1.0, 0.5}) {
    const StateVector mine = offset_state(d);
    const StateVector o1 = offset_state(other_d[0]);
    const StateVector o2 = offset_state(other_d[1]);
    const StateVector o3 = offset_state(other_d[2]);
    std::vector<ScoreInput> in{
        {1, Role::Player, 1.0, &mine},
        {2, Role::Player, 1.0, &o1},
        {3, Role::Player, 1.0, &o2},
        {4, Role::Player, 1.0, &o3},
    };
    auto dist = selection_distribution(soccer_consciousness(in, reality));
    CHECK(dist.entries[0].agent == 1);
    CHECK(dist.entries[0].probability >= prev_p);
    prev_p = dist.entries[0].probability;
  }
}

TEST_CASE("property: a perfect predictor dominates its role under uniform will") {
  SplitMix64 rng(999);
  const StateVector reality;
  for (int round = 0; round < 50; ++round) {
    std::vector<StateVector> prevs;
    prevs.push_back(offset_state(0.0));  // the perfect one
    for (int i = 0; i < 9; ++i) prevs.push_back(offset_state(0.5 + rng.next_double() * 10.0));
    std::vector<ScoreInput> in;
    for (std::size_t i = 0; i < prevs.size(); ++i) {
      in.push_back({AgentId(i + 1), Role::Player, 1.0, &prevs[i]});
    }
    auto scored = soccer_consciousness(in, reality);
    for (std::size_t i = 1; i < scored.size(); ++i) {
      CHECK(scored[0].sc >= scored[i].sc);
    }
    auto dist = selection_distribution(scored);
    for (std::size_t i = 1; i < dist.entries.size(); ++i) {
      CHECK(dist.entries[0].probability >= dist.entries[i].probability);
    }
  }
}
