#include "hmap/decider.hpp"
#include "hmap/errors.hpp"
#include "hmap/shuttle_router.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using namespace hmap;

namespace {

HardwareSpec lattice(std::size_t l, double rInt) {
  HardwareSpec s;
  s.l = l;
  s.d = 3.0;
  s.rInt = rInt;
  s.rRestr = rInt;
  s.v = 0.55;
  s.tAct = 20.0;
  s.tDeact = 20.0;
  return s;
}

GateNode gate(std::vector<Qubit> qubits) {
  GateNode g;
  g.kind = controlledZ(qubits.size());
  g.qubits = std::move(qubits);
  return g;
}

// Applies the chain move by move; every target must be free at that point.
bool replay(MappingState state, const MoveChain& chain, const GateNode& g) {
  for (const auto& m : chain.moves) {
    if (state.site(m.atom) != m.from || state.occupied(m.to)) {
      return false;
    }
    state.applyMove(m.atom, m.to);
  }
  return state.executable(g);
}

std::size_t shortest(const std::vector<MoveChain>& chains) {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (const auto& c : chains) {
    best = std::min(best, c.moves.size());
  }
  return best;
}

} // namespace

TEST(FreeSiteOutside, NearestByDistance) {
  const auto spec = lattice(5, 1.0);
  MappingState s(spec, {{0, 0}, {2, 0}}, {0});
  EXPECT_EQ(nearestFreeSiteOutside(s, {1, 0}, {0, 0}, 1.0), (Coordinate{1, 1}));
  EXPECT_EQ(nearestFreeSiteOutside(s, {0, 1}, {0, 0}, 1.0), (Coordinate{1, 1}));
}

TEST(Chains, FreeAdjacentSiteGivesSingleMove) {
  const auto spec = lattice(5, 1.0);
  MappingState s(spec, {{0, 0}, {3, 0}}, {0, 1});
  const auto g = gate({0, 1});
  const auto chains = buildChains(s, g);
  ASSERT_FALSE(chains.empty());
  EXPECT_EQ(shortest(chains), 1U);
  for (const auto& c : chains) {
    EXPECT_EQ(c.moves.front().kind, MoveKind::Direct);
    EXPECT_TRUE(replay(s, c, g));
  }
}

TEST(Chains, OccupiedTargetRegionNeedsMoveAway) {
  const auto spec = lattice(5, 1.0);
  // both gate qubits are walled in by spare atoms
  MappingState s(spec, {{0, 0}, {4, 4}, {1, 0}, {0, 1}, {3, 4}, {4, 3}}, {0, 1});
  const auto g = gate({0, 1});
  const auto chains = buildChains(s, g);
  ASSERT_FALSE(chains.empty());
  for (const auto& c : chains) {
    ASSERT_EQ(c.moves.size(), 2U);
    EXPECT_EQ(c.moves[0].kind, MoveKind::MoveAway);
    EXPECT_EQ(c.moves[1].kind, MoveKind::Direct);
    EXPECT_EQ(c.moves[1].to, c.moves[0].from);
    EXPECT_TRUE(replay(s, c, g));
  }
}

TEST(Chains, FourQubitWorstCase) {
  const auto spec = lattice(7, std::sqrt(2.0));
  std::vector<Coordinate> sites{{3, 3}, {6, 6}, {6, 0}, {0, 6}};
  for (int dx = -1; dx <= 1; ++dx) {
    for (int dy = -1; dy <= 1; ++dy) {
      if (dx != 0 || dy != 0) {
        sites.push_back({3 + dx, 3 + dy});
      }
    }
  }
  MappingState s(spec, sites, {0, 1, 2, 3});
  const auto g = gate({0, 1, 2, 3});
  const auto chains = buildChains(s, g);
  bool anchoredAtCentre = false;
  for (const auto& c : chains) {
    EXPECT_LE(c.moves.size(), 6U);
    EXPECT_TRUE(replay(s, c, g));
    const bool centreMoves = std::ranges::any_of(c.moves, [](const Move& m) { return m.atom == 0; });
    if (!centreMoves) {
      anchoredAtCentre = true;
      EXPECT_EQ(c.moves.size(), 6U);
    }
  }
  EXPECT_TRUE(anchoredAtCentre);
}

TEST(Chains, FuzzedBoundAndValidity) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const auto spec = lattice(6 + rng() % 4, 1.0 + 0.5 * static_cast<double>(rng() % 3));
    std::vector<std::size_t> idx(spec.sites());
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    const std::size_t atoms = 4 + rng() % (spec.sites() - 6);
    std::vector<Coordinate> sites;
    for (std::size_t i = 0; i < atoms; ++i) {
      sites.push_back(spec.siteAt(idx[i]));
    }
    const std::size_t m = 2 + rng() % 3;
    std::vector<HwQubit> hosts(m);
    std::iota(hosts.begin(), hosts.end(), 0);
    MappingState s(spec, sites, hosts);
    std::vector<Qubit> qubits(m);
    std::iota(qubits.begin(), qubits.end(), 0);
    const auto g = gate(qubits);
    if (s.executable(g)) {
      continue;
    }
    for (const auto& c : buildChains(s, g)) {
      EXPECT_LE(c.moves.size(), 2 * (m - 1));
      EXPECT_TRUE(replay(s, c, g));
    }
  }
}

TEST(Parallel, Cases) {
  const auto spec = lattice(10, 1.0);
  const Move move{0, {1, 2}, {2, 2}};
  const Move sameRow{1, {4, 2}, {5, 2}};
  const Move sameRowOther{1, {4, 2}, {4, 3}};
  const Move elsewhere{1, {7, 7}, {8, 8}};
  EXPECT_DOUBLE_EQ(deltaTParallel(move, std::vector{sameRow}, spec), 0.0);
  EXPECT_DOUBLE_EQ(deltaTParallel(move, std::vector{sameRowOther}, spec), 40.0);
  EXPECT_NEAR(deltaTParallel(move, std::vector{elsewhere}, spec), 20 + 3 / 0.55 + 20, 1e-9);
  EXPECT_NEAR(deltaTParallel(move, {}, spec), 45.4545, 1e-4);
  // chained target onto the other origin cannot share a shift
  const Move chained{1, {2, 2}, {3, 2}};
  EXPECT_DOUBLE_EQ(deltaTParallel(move, std::vector{chained}, spec), 40.0);
}

TEST(Cost, SingleMove) {
  const auto spec = lattice(6, 1.0);
  MappingState s(spec, {{0, 0}, {3, 0}}, {0, 1});
  QuantumCircuit c;
  c.n = 2;
  c.add(GateKind::CZ, {0, 1});
  CapabilityAssignment a;
  a.frontShuttle = {0};
  MoveChain chain{{Move{1, {3, 0}, {2, 0}}}, 0};
  MapperParams p;
  p.wT = 0.0;
  EXPECT_NEAR(shuttleCost(s, chain, c, a, {}, p), -3.0, 1e-12);
  p.wT = 0.1;
  EXPECT_NEAR(shuttleCost(s, chain, c, a, {}, p), -3.0 + 0.1 * (20 + 3 / 0.55 + 20), 1e-9);
  const std::vector<Move> history{Move{5, {0, 5}, {1, 5}}, Move{6, {5, 0}, {5, 1}}};
  p.window = 1;
  // only the last history entry (same column, other displacement) is seen
  EXPECT_NEAR(shuttleCost(s, chain, c, a, history, p), -3.0 + 0.1 * 40.0, 1e-9);
}

TEST(Route, SingleDirectMove) {
  const auto spec = lattice(5, 1.0);
  MappingState s(spec, {{0, 0}, {3, 0}}, {0, 1});
  QuantumCircuit c;
  c.n = 2;
  c.add(GateKind::CZ, {0, 1});
  CapabilityAssignment a;
  a.frontShuttle = {0};
  std::vector<Move> history;
  const std::vector<std::size_t> front{0};
  const auto r = routeShuttleLayer(s, c, a, front, history, MapperParams{});
  EXPECT_EQ(r.chain.moves.size(), 1U);
  EXPECT_EQ(r.executable, (std::vector<std::size_t>{0}));
  EXPECT_EQ(history.size(), 1U);
  EXPECT_TRUE(s.graphConsistent());
}

TEST(Route, MoveAwayThenDirect) {
  const auto spec = lattice(3, 1.0);
  MappingState s(spec, {{0, 0}, {2, 2}, {1, 0}, {0, 1}, {2, 1}, {1, 2}}, {0, 1});
  QuantumCircuit c;
  c.n = 2;
  c.add(GateKind::CZ, {0, 1});
  CapabilityAssignment a;
  a.frontShuttle = {0};
  std::vector<Move> history;
  const std::vector<std::size_t> front{0};
  const auto r = routeShuttleLayer(s, c, a, front, history, MapperParams{});
  ASSERT_EQ(r.chain.moves.size(), 2U);
  EXPECT_EQ(r.chain.moves[0].kind, MoveKind::MoveAway);
  EXPECT_EQ(r.executable, (std::vector<std::size_t>{0}));
  EXPECT_EQ(s.hosts(), (std::vector<HwQubit>{0, 1}));
}

TEST(Route, NoChainIsAnError) {
  auto spec = lattice(2, 1.0);
  spec.rRestr = 1.0;
  MappingState s(spec, {{0, 0}, {1, 1}, {1, 0}, {0, 1}}, {0, 1});
  QuantumCircuit c;
  c.n = 2;
  c.add(GateKind::CZ, {0, 1});
  CapabilityAssignment a;
  a.frontShuttle = {0};
  std::vector<Move> history;
  const std::vector<std::size_t> front{0};
  EXPECT_THROW((void)routeShuttleLayer(s, c, a, front, history, MapperParams{}), RoutingError);
}
