#include "model.hpp"

#include <cmath>
#include <limits>

#include <doctest.h>

#include "oracles.hpp"
#include "rng.hpp"

using namespace qcss;

TEST_CASE("distance: identical vectors are at distance zero") {
  SplitMix64 rng(7);
  for (int i = 0; i < 10; ++i) {
    const StateVector s = testing::random_state(rng);
    CHECK(distance(s, s) == 0.0);
  }
}

TEST_CASE("distance: ball offset alone gives the plain Euclidean length") {
  StateVector a, b;
  b.ball = {3.0, 4.0};
  CHECK(distance(a, b) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(distance(b, a) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("distance: possession fields do not contribute") {
  StateVector a, b;
  a.possessing_team = Team::Home;
  a.possessing_player = 1;
  b.possessing_team = Team::Guest;
  b.possessing_player = 11;
  CHECK(distance(a, b) == 0.0);
}

TEST_CASE("distance: matches the per-coordinate accumulation oracle") {
  SplitMix64 rng(42);
  for (int i = 0; i < 100; ++i) {
    const StateVector a = testing::random_state(rng);
    const StateVector b = testing::random_state(rng);
    const double got = distance(a, b);
    const double want = static_cast<double>(testing::distance_oracle(a, b));
    CHECK(std::abs(got - want) <= 1e-12 * want);
  }
}

TEST_CASE("distance: metric properties on random triples") {
  SplitMix64 rng(99);
  for (int i = 0; i < 200; ++i) {
    const StateVector a = testing::random_state(rng);
    const StateVector b = testing::random_state(rng);
    const StateVector c = testing::random_state(rng);
    const double ab = distance(a, b);
    const double ba = distance(b, a);
    const double ac = distance(a, c);
    const double bc = distance(b, c);
    CHECK(ab == ba);
    CHECK(ab >= 0.0);
    CHECK(ac <= ab + bc + 1e-9);
  }
}

TEST_CASE("validate_state_vector: all-zero vector is valid without bounds") {
  StateVector s;
  s.possessing_player = 1;
  CHECK(!validate_state_vector(s, Pitch{}, BoundsCheck::Off));
}

TEST_CASE("validate_state_vector: non-finite coordinates are rejected") {
  StateVector s;
  s.ball.x = std::numeric_limits<double>::quiet_NaN();
  auto err = validate_state_vector(s, Pitch{}, BoundsCheck::Off);
  REQUIRE(err.has_value());
  CHECK(*err == StateError::NonFinite);

  StateVector t;
  t.guest[10].y = std::numeric_limits<double>::infinity();
  err = validate_state_vector(t, Pitch{}, BoundsCheck::Off);
  REQUIRE(err.has_value());
  CHECK(*err == StateError::NonFinite);
}

TEST_CASE("validate_state_vector: possession ranges") {
  StateVector s;
  s.possessing_player = 0;
  auto err = validate_state_vector(s, Pitch{}, BoundsCheck::Off);
  REQUIRE(err.has_value());
  CHECK(*err == StateError::BadPossession);

  s.possessing_player = 12;
  err = validate_state_vector(s, Pitch{}, BoundsCheck::Off);
  REQUIRE(err.has_value());
  CHECK(*err == StateError::BadPossession);
}

TEST_CASE("validate_state_vector: bounds checking is opt-in") {
  StateVector s = make_kickoff_lineup(Pitch{});
  s.ball = {-100.0, 0.0};
  auto err = validate_state_vector(s, Pitch{105.0, 68.0}, BoundsCheck::Reject);
  REQUIRE(err.has_value());
  CHECK(*err == StateError::OutOfBounds);
  CHECK(!validate_state_vector(s, Pitch{105.0, 68.0}, BoundsCheck::Off));

  // The margin tolerates slightly-off-pitch positions.
  s.ball = {-4.9, 0.0};
  CHECK(!validate_state_vector(s, Pitch{105.0, 68.0}, BoundsCheck::Reject));
}

TEST_CASE("make_kickoff_lineup: ball at the pitch center, valid, deterministic") {
  const Pitch pitch{105.0, 68.0};
  const StateVector a = make_kickoff_lineup(pitch);
  CHECK(a.ball.x == doctest::Approx(52.5));
  CHECK(a.ball.y == doctest::Approx(34.0));
  CHECK(!validate_state_vector(a, pitch, BoundsCheck::Reject));
  CHECK(a.possessing_team == Team::Home);
  CHECK(a.possessing_player >= 1);
  CHECK(a.possessing_player <= 11);

  const StateVector b = make_kickoff_lineup(pitch);
  CHECK(bit_identical(a, b));
}

TEST_CASE("roster: player limits and shirt uniqueness") {
  Roster r;
  AgentId id = 1;
  for (int team = 0; team < 2; ++team) {
    for (int shirt = 1; shirt <= 11; ++shirt) {
      CHECK(r.add_player(id++, static_cast<Team>(team), std::uint8_t(shirt)).ok());
    }
  }
  CHECK(r.players().size() == 22);
  auto overflow = r.add_player(id++, Team::Home, 1);
  REQUIRE(!overflow.ok());
  CHECK(overflow.error() == RosterError::RosterFull);

  Roster small;
  CHECK(small.add_player(1, Team::Home, 7).ok());
  auto dup = small.add_player(2, Team::Home, 7);
  REQUIRE(!dup.ok());
  CHECK(dup.error() == RosterError::DuplicateShirt);
  CHECK(small.add_player(2, Team::Guest, 7).ok());  // same shirt, other team
}

TEST_CASE("roster: players and supporters are disjoint") {
  Roster r;
  CHECK(r.add_player(1, Team::Home, 1).ok());
  auto err = r.add_supporter(1, Team::Home);
  REQUIRE(!err.ok());
  CHECK(err.error() == RosterError::DuplicateAgent);
}

TEST_CASE("will table: constructor enforces both role sums") {
  Roster r;
  CHECK(r.add_player(1, Team::Home, 1).ok());
  CHECK(r.add_player(2, Team::Guest, 1).ok());
  CHECK(r.add_supporter(3, Team::Home).ok());

  auto ok = WillTable::create(r, {{1, 1.5}, {2, 0.5}, {3, 0.9}});
  REQUIRE(ok.ok());
  CHECK(ok.value().player_sum() == doctest::Approx(2.0));
  CHECK(ok.value().supporter_sum() == doctest::Approx(0.9));

  auto bad_players = WillTable::create(r, {{1, 1.5}, {2, 1.5}, {3, 0.9}});
  REQUIRE(!bad_players.ok());
  CHECK(bad_players.error() == WillError::PlayerSumMismatch);

  auto bad_supporters = WillTable::create(r, {{1, 1.0}, {2, 1.0}, {3, 1.5}});
  REQUIRE(!bad_supporters.ok());
  CHECK(bad_supporters.error() == WillError::SupporterSumExceeded);

  auto negative = WillTable::create(r, {{1, 3.0}, {2, -1.0}, {3, 0.0}});
  REQUIRE(!negative.ok());
  CHECK(negative.error() == WillError::NegativeWill);
}

TEST_CASE("will table: mutations fail rather than renormalize") {
  Roster r;
  CHECK(r.add_player(1, Team::Home, 1).ok());
  CHECK(r.add_player(2, Team::Guest, 1).ok());
  auto table = WillTable::create(r, {{1, 1.0}, {2, 1.0}});
  REQUIRE(table.ok());
  WillTable w = table.value();

  auto res = w.set(1, 2.0);  // would push the player sum to 3
  REQUIRE(!res.ok());
  CHECK(res.error() == WillError::PlayerSumMismatch);
  CHECK(w.will(1) == 1.0);  // untouched after the failed set

  // A compensating wholesale replacement is fine.
  CHECK(w.replace_all({{1, 2.0}, {2, 0.0}}).ok());
  CHECK(w.will(1) == 2.0);
  CHECK(w.player_sum() == doctest::Approx(2.0));
}

TEST_CASE("match config validation") {
  MatchConfig cfg;
  CHECK(!cfg.validate().has_value());

  cfg.proposal_deadline_ms = cfg.tick_period_ms;
  CHECK(cfg.validate().has_value());

  cfg = MatchConfig{};
  cfg.match_ticks = 0;
  CHECK(cfg.validate().has_value());

  cfg = MatchConfig{};
  cfg.supporter_budget_home = 0.8;
  cfg.supporter_budget_guest = 0.3;
  CHECK(cfg.validate().has_value());
}
