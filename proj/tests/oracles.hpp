// Test-only oracles, written independently of the implementation paths they
// check: the distance oracle walks the struct fields itself, the
// normalization oracle accumulates in extended precision, and the wire
// oracle parses buffers at hard-coded offsets.
#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <optional>
#include <vector>

#include "consciousness.hpp"
#include "model.hpp"
#include "rng.hpp"

namespace qcss::testing {

inline long double distance_oracle(const StateVector& a, const StateVector& b) {
  long double acc = 0.0L;
  auto add = [&acc](double p, double q) {
    const long double d = static_cast<long double>(p) - static_cast<long double>(q);
    acc += d * d;
  };
  add(a.ball.x, b.ball.x);
  add(a.ball.y, b.ball.y);
  for (int i = 0; i < kTeamSize; ++i) {
    add(a.home[i].x, b.home[i].x);
    add(a.home[i].y, b.home[i].y);
  }
  for (int i = 0; i < kTeamSize; ++i) {
    add(a.guest[i].x, b.guest[i].x);
    add(a.guest[i].y, b.guest[i].y);
  }
  return std::sqrt(acc);
}

inline std::vector<long double> normalize_oracle(const std::vector<double>& sc) {
  long double total = 0.0L;
  for (double v : sc) total += static_cast<long double>(v);
  std::vector<long double> out;
  out.reserve(sc.size());
  for (double v : sc) out.push_back(static_cast<long double>(v) / total);
  return out;
}

inline StateVector random_state(SplitMix64& rng, double span = 100.0) {
  StateVector s;
  auto coord = [&rng, span]() { return (rng.next_double() * 2.0 - 1.0) * span; };
  s.ball = {coord(), coord()};
  for (int i = 0; i < kTeamSize; ++i) {
    s.home[i] = {coord(), coord()};
    s.guest[i] = {coord(), coord()};
  }
  s.possessing_team = rng.next_below(2) == 0 ? Team::Home : Team::Guest;
  s.possessing_player = static_cast<std::uint8_t>(1 + rng.next_below(kTeamSize));
  return s;
}

// Fixed-offset parse of the two state-carrying messages; returns the 46
// coordinates plus the two possession bytes.
struct WireStateOracle {
  double coords[46];
  std::uint8_t team;
  std::uint8_t shirt;
};

inline std::optional<WireStateOracle> wire_state_at(const std::vector<std::uint8_t>& buf,
                                                    std::size_t offset) {
  if (buf.size() < offset + 370) return std::nullopt;
  WireStateOracle out{};
  for (int i = 0; i < 46; ++i) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, buf.data() + offset + 8 * i, 8);
    std::memcpy(&out.coords[i], &bits, 8);
  }
  out.team = buf[offset + 368];
  out.shirt = buf[offset + 369];
  return out;
}

}  // namespace qcss::testing
