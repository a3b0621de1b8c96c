#include "hmap/errors.hpp"
#include "hmap/mapper.hpp"
#include "support/random_circuits.hpp"
#include "support/statevector.hpp"

#include <gtest/gtest.h>

#include <limits>
#include <random>

using namespace hmap;
using namespace hmap::testing;

namespace {

MapperParams modeParams(Mode mode) {
  MapperParams p;
  p.mode = mode;
  return p;
}

void expectSameRun(const MappingResult& a, const MappingResult& b) {
  EXPECT_EQ(formatProgram(a), formatProgram(b));
  EXPECT_DOUBLE_EQ(a.metrics.deltaF, b.metrics.deltaF);
  EXPECT_EQ(a.metrics.deltaCz, b.metrics.deltaCz);
}

} // namespace

TEST(Mapper, EquivalentOnRandomCircuits) {
  std::mt19937_64 rng(1234);
  for (const auto mode : {Mode::GateOnly, Mode::ShuttleOnly, Mode::Hybrid}) {
    for (int trial = 0; trial < 15; ++trial) {
      const std::size_t n = 2 + rng() % 5;
      const auto c = randomMappingCircuit(rng, n, 20);
      const auto spec = smallLattice(n, rng() % 4);
      const auto r = mapCircuit(c, spec, modeParams(mode));
      const double dev = phaseDeviation(circuitUnitary(c), mappedUnitary(r));
      EXPECT_LT(dev, 1e-9) << toString(mode) << " trial " << trial;
      EXPECT_TRUE(restrictionRespected(r));
      EXPECT_TRUE(movesValid(r));
      EXPECT_TRUE(r.finalState.graphConsistent());
    }
  }
}

TEST(Mapper, ModeConsistency) {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 10; ++trial) {
    const auto c = randomMappingCircuit(rng, 6, 30);
    const auto spec = smallLattice(6, 2);
    const auto gateOnly = mapCircuit(c, spec, modeParams(Mode::GateOnly));
    EXPECT_EQ(gateOnly.program.moveGroupCount(), 0U);
    const auto shuttleOnly = mapCircuit(c, spec, modeParams(Mode::ShuttleOnly));
    EXPECT_EQ(shuttleOnly.program.swapDerivedCount(), 0U);
    EXPECT_EQ(shuttleOnly.metrics.deltaCz, 0);
    EXPECT_EQ(shuttleOnly.swaps, 0U);
  }
}

TEST(Mapper, OneSwapAddsThreeCz) {
  auto spec = hardwarePreset("mixed");
  spec.l = 3;
  spec.rInt = spec.rRestr = 1.0;
  spec.nAtoms = 0;
  QuantumCircuit c;
  c.n = 3;
  c.add(GateKind::CZ, {0, 2});
  const auto r = mapCircuit(c, spec, modeParams(Mode::GateOnly));
  EXPECT_EQ(r.swaps, 1U);
  EXPECT_EQ(r.metrics.deltaCz, 3);
  EXPECT_EQ(r.program.swapDerivedCount(), 9U);
  EXPECT_GT(r.metrics.deltaF, 0.0);
}

TEST(Mapper, EmptyCircuit) {
  QuantumCircuit c;
  c.n = 2;
  const auto r = mapCircuit(c, hardwarePreset("mixed"), MapperParams{});
  EXPECT_TRUE(r.program.ops.empty());
  EXPECT_DOUBLE_EQ(r.metrics.deltaF, 0.0);
  EXPECT_DOUBLE_EQ(r.metrics.makespan, 0.0);
  EXPECT_TRUE(formatProgram(r).empty());
}

TEST(Mapper, UnmappedCircuitIsFree) {
  QuantumCircuit c;
  c.n = 2;
  c.add(GateKind::H, {0});
  c.add(GateKind::CZ, {0, 1});
  const auto r = mapCircuit(c, hardwarePreset("mixed"), MapperParams{});
  EXPECT_EQ(r.swaps + r.moves, 0U);
  EXPECT_NEAR(r.metrics.deltaF, 0.0, 1e-15);
  EXPECT_EQ(r.metrics.deltaCz, 0);
  EXPECT_DOUBLE_EQ(r.metrics.deltaT, 0.0);
}

TEST(Mapper, CapacityError) {
  QuantumCircuit c;
  c.n = 20;
  auto spec = hardwarePreset("mixed");
  spec.l = 4;
  spec.nAtoms = 0;
  EXPECT_THROW((void)mapCircuit(c, spec, MapperParams{}), CapacityError);
}

TEST(Sweep, LimitingAlphas) {
  std::mt19937_64 rng(8);
  const auto c = randomMappingCircuit(rng, 6, 30);
  const auto spec = smallLattice(6, 3);
  MapperParams hybrid;
  const std::vector<double> zero{0.0};
  const std::vector<double> inf{std::numeric_limits<double>::infinity()};
  expectSameRun(sweep(c, spec, hybrid, zero).bestResult(),
                mapCircuit(c, spec, modeParams(Mode::ShuttleOnly)));
  expectSameRun(sweep(c, spec, hybrid, inf).bestResult(),
                mapCircuit(c, spec, modeParams(Mode::GateOnly)));
}

TEST(Sweep, KeepsFirstMinimum) {
  std::mt19937_64 rng(12);
  const auto c = randomMappingCircuit(rng, 7, 40);
  const auto spec = smallLattice(7, 3);
  const auto alphas = defaultAlphas();
  EXPECT_EQ(alphas, (std::vector<double>{0.9, 0.95, 1.0, 1.05, 1.1}));
  const auto s = sweep(c, spec, MapperParams{}, alphas);
  ASSERT_EQ(s.entries.size(), alphas.size());
  for (std::size_t i = 0; i < s.entries.size(); ++i) {
    EXPECT_DOUBLE_EQ(s.entries[i].alpha, alphas[i]);
    EXPECT_GE(s.entries[i].result.metrics.deltaF, s.bestResult().metrics.deltaF);
    if (i < s.best) {
      EXPECT_GT(s.entries[i].result.metrics.deltaF, s.bestResult().metrics.deltaF);
    }
  }
  const auto report = formatReport(s.bestResult(), ReportFormat::Table, s.entries);
  EXPECT_NE(report.find("  *"), std::string::npos);
}

TEST(Format, ProgramAndReport) {
  QuantumCircuit c;
  c.n = 3;
  c.add(GateKind::U3, {0}, {0.5, 0.25, -0.125});
  c.add(GateKind::CZ, {0, 2});
  auto spec = hardwarePreset("mixed");
  spec.l = 3;
  spec.rInt = spec.rRestr = 1.0;
  spec.nAtoms = 4;
  const auto r = mapCircuit(c, spec, modeParams(Mode::ShuttleOnly));
  const auto text = formatProgram(r);
  EXPECT_NE(text.find("GATE U3 q=[0] t=0"), std::string::npos);
  EXPECT_NE(text.find("params=["), std::string::npos);
  EXPECT_NE(text.find("AOD_ACT cols=["), std::string::npos);
  EXPECT_NE(text.find("AOD_SHIFT dx="), std::string::npos);
  EXPECT_NE(text.find("AOD_DEACT"), std::string::npos);
  const auto kv = formatReport(r, ReportFormat::KeyValue);
  EXPECT_NE(kv.find("mode=shuttle-only\n"), std::string::npos);
  EXPECT_NE(kv.find("delta_CZ=0\n"), std::string::npos);
  EXPECT_EQ(formatReport(r, ReportFormat::KeyValue), kv);
}
