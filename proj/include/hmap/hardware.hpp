#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hmap {

/// Lattice site; the physical position is (x * d, y * d).
struct Coordinate {
  std::int32_t x = 0;
  std::int32_t y = 0;

  auto operator<=>(const Coordinate&) const = default;
};

/// Neutral-atom hardware parameters. Radii are multiples of the lattice
/// constant d, lengths in µm, times in µs.
struct HardwareSpec {
  std::size_t l = 15;
  double d = 3.0;
  double rInt = 2.0;
  double rRestr = 2.0;
  double fCz = 0.995;
  double fH = 0.999;
  double fShuttle = 0.9999;
  double tU3 = 0.5;
  double tCz = 0.2;
  double tCcz = 0.4;
  double tCccz = 0.6;
  double v = 0.3;
  double tAct = 40.0;
  double tDeact = 40.0;
  double t1 = 1e8;
  double t2 = 1.5e6;
  /// Number of atoms N; 0 places exactly one atom per circuit qubit.
  std::size_t nAtoms = 0;

  /// Throws std::invalid_argument if an invariant is violated.
  void validate() const;

  [[nodiscard]] std::size_t sites() const { return l * l; }
  [[nodiscard]] double effectiveCoherence() const { return t1 * t2 / (t1 + t2); }
  /// Comparison slack for radius checks, 1e-9 * d.
  [[nodiscard]] double tolerance() const { return 1e-9 * d; }
  [[nodiscard]] bool inBounds(Coordinate c) const {
    return c.x >= 0 && c.y >= 0 && static_cast<std::size_t>(c.x) < l &&
           static_cast<std::size_t>(c.y) < l;
  }
  [[nodiscard]] std::size_t siteIndex(Coordinate c) const {
    return static_cast<std::size_t>(c.y) * l + static_cast<std::size_t>(c.x);
  }
  [[nodiscard]] Coordinate siteAt(std::size_t index) const {
    return {static_cast<std::int32_t>(index % l),
            static_cast<std::int32_t>(index / l)};
  }
  /// Euclidean distance in µm.
  [[nodiscard]] double distance(Coordinate a, Coordinate b) const {
    return d * std::hypot(static_cast<double>(a.x - b.x),
                          static_cast<double>(a.y - b.y));
  }
  /// |dx| + |dy| in µm.
  [[nodiscard]] double rectangularDistance(Coordinate a, Coordinate b) const {
    return d * static_cast<double>(std::abs(a.x - b.x) + std::abs(a.y - b.y));
  }
  [[nodiscard]] bool within(Coordinate a, Coordinate b, double radius) const {
    return distance(a, b) <= radius * d + tolerance();
  }
  [[nodiscard]] bool interacting(Coordinate a, Coordinate b) const {
    return within(a, b, rInt);
  }
  /// Time of one elementary move over rectangular distance `s` µm.
  [[nodiscard]] double moveTime(double s) const { return tAct + s / v + tDeact; }
  [[nodiscard]] double gateTime(std::size_t nQubits) const;
};

/// Bundled presets "shuttling", "gate" and "mixed" (15x15 lattice, d = 3 µm,
/// 200 atoms). Throws std::invalid_argument for unknown names.
[[nodiscard]] HardwareSpec hardwarePreset(std::string_view name);
[[nodiscard]] std::vector<std::string> presetNames();

/// Parses `key = value` lines (`#` comments). Unknown or repeated keys are
/// rejected with a ParseError.
[[nodiscard]] HardwareSpec parseHardwareConfig(std::string_view text);
/// A preset name or the path of a config file.
[[nodiscard]] HardwareSpec loadHardware(const std::string& presetOrPath);
[[nodiscard]] std::string formatHardwareConfig(const HardwareSpec& spec);

} // namespace hmap
