#pragma once

#include "hmap/hardware.hpp"
#include "hmap/mapping_state.hpp"
#include "hmap/shuttle_router.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hmap {

enum class AodOpKind : std::uint8_t { Activate, Shift, Deactivate };

struct AodOperation {
  AodOpKind kind = AodOpKind::Activate;
  /// Line positions in µm. For shifts these select the moving lines; empty
  /// lists on both axes move every active line.
  std::vector<double> cols;
  std::vector<double> rows;
  double dx = 0.0; // µm
  double dy = 0.0; // µm
  double start = 0.0;
  double duration = 0.0;
  /// Atoms an activation is meant to pick up.
  std::vector<HwQubit> load;
};

/// Parallel-compatible moves and their native operations, times relative to
/// the group start.
struct AodGroup {
  std::vector<Move> moves;
  std::vector<AodOperation> ops;
  double duration = 0.0;
};

struct AodSchedule {
  std::vector<AodOperation> ops;
};

inline constexpr std::size_t MAX_LOAD_PHASES = 3;

/// Greedily packs consecutive moves with identical displacement, distinct
/// origins and targets, no target on another move's origin and at most
/// MAX_LOAD_PHASES distinct origin rows.
[[nodiscard]] std::vector<std::vector<Move>> groupMoves(std::span<const Move> moves);

/// One activation, shift and deactivation for a single origin row; otherwise
/// rows are loaded one after another with a (d/4, d/4) offset shift after each
/// activation and unloaded in reverse order.
[[nodiscard]] AodGroup lowerGroup(const std::vector<Move>& moves,
                                  const HardwareSpec& spec);
[[nodiscard]] std::vector<AodGroup> lowerMoves(std::span<const Move> moves,
                                               const HardwareSpec& spec);

/// Concatenates groups back to back starting at time 0.
[[nodiscard]] AodSchedule sequential(std::span<const AodGroup> groups);

enum class ViolationKind : std::uint8_t { Ordering, GhostSpot, Landing, Load };

[[nodiscard]] std::string_view toString(ViolationKind kind);

struct Violation {
  ViolationKind kind = ViolationKind::Ordering;
  double time = 0.0;
  std::string message;
};

struct ValidationResult {
  std::optional<Violation> violation;
  /// Atom sites after the schedule (valid when no violation occurred).
  std::vector<Coordinate> finalSites;

  [[nodiscard]] bool ok() const { return !violation.has_value(); }
};

/// Simulates the schedule over atoms initially at `sites` and reports the
/// first ordering, ghost-spot, landing or loading violation. Ghost spots are
/// empty line intersections passing within d/10 of a trapped atom.
[[nodiscard]] ValidationResult validateSchedule(const AodSchedule& schedule,
                                                const std::vector<Coordinate>& sites,
                                                const HardwareSpec& spec);

} // namespace hmap
