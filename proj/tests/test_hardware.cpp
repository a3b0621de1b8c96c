#include "hmap/errors.hpp"
#include "hmap/hardware.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace hmap;

TEST(Presets, BundledValues) {
  const auto s = hardwarePreset("shuttling");
  const auto g = hardwarePreset("gate");
  const auto m = hardwarePreset("mixed");
  EXPECT_DOUBLE_EQ(s.rInt, 2.0);
  EXPECT_DOUBLE_EQ(g.rInt, 4.5);
  EXPECT_DOUBLE_EQ(m.rInt, 2.5);
  EXPECT_DOUBLE_EQ(s.fCz, 0.994);
  EXPECT_DOUBLE_EQ(g.fCz, 0.9995);
  EXPECT_DOUBLE_EQ(m.fCz, 0.995);
  EXPECT_DOUBLE_EQ(s.fH, 0.995);
  EXPECT_DOUBLE_EQ(g.fH, 0.9999);
  EXPECT_DOUBLE_EQ(m.fH, 0.999);
  EXPECT_DOUBLE_EQ(s.fShuttle, 1.0);
  EXPECT_DOUBLE_EQ(g.fShuttle, 0.999);
  EXPECT_DOUBLE_EQ(m.fShuttle, 0.9999);
  EXPECT_DOUBLE_EQ(s.v, 0.55);
  EXPECT_DOUBLE_EQ(g.v, 0.2);
  EXPECT_DOUBLE_EQ(m.v, 0.3);
  EXPECT_DOUBLE_EQ(s.tAct, 20.0);
  EXPECT_DOUBLE_EQ(g.tDeact, 50.0);
  EXPECT_DOUBLE_EQ(m.tAct, 40.0);
  for (const auto& name : presetNames()) {
    const auto p = hardwarePreset(name);
    EXPECT_EQ(p.l, 15U);
    EXPECT_DOUBLE_EQ(p.d, 3.0);
    EXPECT_EQ(p.nAtoms, 200U);
    EXPECT_DOUBLE_EQ(p.rRestr, p.rInt);
    EXPECT_DOUBLE_EQ(p.tU3, 0.5);
    EXPECT_DOUBLE_EQ(p.tCz, 0.2);
    EXPECT_DOUBLE_EQ(p.tCcz, 0.4);
    EXPECT_DOUBLE_EQ(p.tCccz, 0.6);
    EXPECT_DOUBLE_EQ(p.t1, 1e8);
    EXPECT_DOUBLE_EQ(p.t2, 1.5e6);
    EXPECT_NO_THROW(p.validate());
  }
  EXPECT_THROW((void)hardwarePreset("nope"), std::invalid_argument);
}

TEST(Spec, EffectiveCoherence) {
  const auto m = hardwarePreset("mixed");
  const double expected = 1e8 * 1.5e6 / (1e8 + 1.5e6);
  EXPECT_LT(std::abs(m.effectiveCoherence() - expected) / expected, 1e-12);
  EXPECT_NEAR(m.effectiveCoherence(), 1477832.5, 0.1);
}

TEST(Spec, Geometry) {
  HardwareSpec s;
  s.d = 3.0;
  EXPECT_DOUBLE_EQ(s.distance({0, 0}, {1, 1}), 3.0 * std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(s.rectangularDistance({0, 0}, {1, 2}), 9.0);
  s.rInt = std::sqrt(2.0);
  EXPECT_TRUE(s.interacting({0, 0}, {1, 1}));
  EXPECT_FALSE(s.interacting({0, 0}, {2, 0}));
  EXPECT_EQ(s.siteAt(s.siteIndex({4, 7})), (Coordinate{4, 7}));
  EXPECT_FALSE(s.inBounds({-1, 0}));
  EXPECT_FALSE(s.inBounds({0, static_cast<int>(s.l)}));
  s.v = 0.55;
  s.tAct = s.tDeact = 20.0;
  EXPECT_NEAR(s.moveTime(3.0), 45.454545454545, 1e-9);
}

TEST(Config, RoundTrip) {
  for (const auto& name : presetNames()) {
    const auto p = hardwarePreset(name);
    const auto q = parseHardwareConfig(formatHardwareConfig(p));
    EXPECT_EQ(formatHardwareConfig(q), formatHardwareConfig(p));
    EXPECT_DOUBLE_EQ(q.fShuttle, p.fShuttle);
    EXPECT_EQ(q.nAtoms, p.nAtoms);
  }
}

TEST(Config, CommentsAndDefaults) {
  const auto s = parseHardwareConfig("# small\nl = 4\nr_int = 2 # radius\n\nr_restr=2\n");
  EXPECT_EQ(s.l, 4U);
  EXPECT_DOUBLE_EQ(s.rInt, 2.0);
  EXPECT_DOUBLE_EQ(s.d, HardwareSpec{}.d);
}

TEST(Config, Rejections) {
  EXPECT_THROW((void)parseHardwareConfig("foo = 1\n"), ParseError);
  EXPECT_THROW((void)parseHardwareConfig("l = 4\nl = 5\n"), ParseError);
  EXPECT_THROW((void)parseHardwareConfig("l = four\n"), ParseError);
  EXPECT_THROW((void)parseHardwareConfig("r_int = 3\nr_restr = 2\n"), ParseError);
  EXPECT_THROW((void)parseHardwareConfig("F_cz = 1.5\n"), ParseError);
  EXPECT_THROW((void)loadHardware("/nonexistent/file.cfg"), ParseError);
}

TEST(Config, BundledPresetFilesMatch) {
  for (const auto& name : presetNames()) {
    const auto file = loadHardware(std::string(HMAP_SOURCE_DIR) + "/presets/" + name + ".cfg");
    EXPECT_EQ(formatHardwareConfig(file), formatHardwareConfig(hardwarePreset(name))) << name;
  }
}
