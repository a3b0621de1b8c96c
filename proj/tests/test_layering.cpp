#include "hmap/errors.hpp"
#include "hmap/layering.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace hmap;

namespace {

using Ids = std::vector<std::size_t>;

HardwareSpec line(std::size_t l) {
  HardwareSpec s;
  s.l = l;
  s.d = 1.0;
  s.rInt = 1.0;
  s.rRestr = 1.0;
  return s;
}

// Longest-path levels measured from the front by brute force.
Ids lookaheadOracle(const DependencyDag& dag, const std::vector<bool>& executed,
                    std::size_t depth) {
  std::vector<std::size_t> level(dag.size, 0);
  Ids out;
  for (std::size_t i = 0; i < dag.size; ++i) {
    if (executed[i]) {
      continue;
    }
    for (const auto p : dag.predecessors[i]) {
      if (!executed[p]) {
        level[i] = std::max(level[i], level[p] + 1);
      }
    }
    if (level[i] >= 1 && level[i] <= depth) {
      out.push_back(i);
    }
  }
  return out;
}

} // namespace

TEST(Layers, ChainDepthOne) {
  QuantumCircuit c;
  c.n = 1;
  c.add(GateKind::H, {0});
  c.add(GateKind::U3, {0}, {1.0, 0.0, 0.0});
  c.add(GateKind::H, {0});
  const auto dag = buildDag(c);
  const auto layers = computeLayers(dag, {false, false, false}, 1);
  EXPECT_EQ(layers.front, Ids{0});
  EXPECT_EQ(layers.lookahead, Ids{1});
  EXPECT_TRUE(computeLayers(dag, {true, true, true}, 1).front.empty());
}

TEST(Layers, CommutingGatesShareFront) {
  QuantumCircuit c;
  c.n = 3;
  c.add(GateKind::CZ, {0, 1});
  c.add(GateKind::CZ, {1, 2});
  const auto layers = computeLayers(buildDag(c), {false, false}, 3);
  EXPECT_EQ(layers.front, (Ids{0, 1}));
  EXPECT_TRUE(layers.lookahead.empty());
}

TEST(Layers, UnlimitedDepthCoversEverything) {
  QuantumCircuit c;
  c.n = 3;
  for (int i = 0; i < 6; ++i) {
    c.add(GateKind::H, {static_cast<Qubit>(i % 2)});
    c.add(GateKind::CZ, {0, 1});
  }
  const auto layers = computeLayers(buildDag(c), std::vector<bool>(12, false), UNLIMITED_DEPTH);
  EXPECT_EQ(layers.front.size() + layers.lookahead.size(), 12U);
}

TEST(Tracker, CommitPromotesChildren) {
  const auto spec = line(4);
  QuantumCircuit c;
  c.n = 3;
  c.add(GateKind::H, {0});      // 0
  c.add(GateKind::CZ, {0, 1});  // 1
  c.add(GateKind::H, {2});      // 2
  c.add(GateKind::H, {1});      // 3
  const auto dag = buildDag(c);
  const auto state = MappingState::initial(spec, 3);
  LayerTracker t(dag, 2);
  EXPECT_EQ(t.layers().front, (Ids{0, 2}));
  t.commit(state, c.gates[2]);
  EXPECT_EQ(t.layers().front, (Ids{0}));
  t.commit(state, c.gates[0]);
  EXPECT_EQ(t.layers().front, (Ids{1}));
  EXPECT_EQ(t.layers().lookahead, (Ids{3}));
  t.commit(state, c.gates[1]);
  t.commit(state, c.gates[3]);
  EXPECT_TRUE(t.done());
}

TEST(Tracker, IndependentGateStaysInFront) {
  QuantumCircuit c;
  c.n = 4;
  c.add(GateKind::H, {0});
  c.add(GateKind::H, {3});
  c.add(GateKind::H, {0});
  const auto dag = buildDag(c);
  LayerTracker t(dag, 1);
  t.markExecuted(0);
  EXPECT_EQ(t.layers().front, (Ids{1, 2}));
  EXPECT_TRUE(t.inFront(1));
}

TEST(Tracker, Errors) {
  QuantumCircuit c;
  c.n = 3;
  c.add(GateKind::CZ, {0, 2});
  c.add(GateKind::H, {0});
  const auto dag = buildDag(c);
  const auto state = MappingState::initial(line(3), 3);
  LayerTracker t(dag, 1);
  EXPECT_THROW(t.markExecuted(1), std::invalid_argument);
  EXPECT_THROW(t.commit(state, c.gates[0]), RoutingError);
}

TEST(Tracker, RandomCommitsMatchOracle) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    QuantumCircuit c;
    c.n = 5;
    for (int i = 0; i < 40; ++i) {
      const auto a = static_cast<Qubit>(rng() % 5);
      const auto b = static_cast<Qubit>((a + 1 + rng() % 4) % 5);
      if (rng() % 2 == 0) {
        c.add(GateKind::H, {a});
      } else {
        c.add(GateKind::CZ, {a, b});
      }
    }
    const auto dag = buildDag(c);
    const std::size_t depth = 1 + rng() % 4;
    LayerTracker t(dag, depth);
    std::vector<bool> done(dag.size, false);
    while (!t.done()) {
      const auto oracle = computeLayers(dag, done, depth);
      ASSERT_EQ(t.layers().front, oracle.front);
      ASSERT_EQ(t.layers().lookahead, oracle.lookahead);
      ASSERT_EQ(oracle.lookahead, lookaheadOracle(dag, done, depth));
      const auto& front = t.layers().front;
      const auto pick = front[rng() % front.size()];
      for (const auto p : dag.predecessors[pick]) {
        ASSERT_TRUE(done[p]);
      }
      t.markExecuted(pick);
      done[pick] = true;
    }
  }
}
