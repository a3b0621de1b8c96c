#pragma once

#include "hmap/circuit.hpp"
#include "hmap/mapping_state.hpp"
#include "hmap/params.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <vector>

namespace hmap {

struct CapabilityAssignment;

enum class MoveKind : std::uint8_t { Direct, MoveAway };

struct Move {
  HwQubit atom = 0;
  Coordinate from;
  Coordinate to;
  MoveKind kind = MoveKind::Direct;

  [[nodiscard]] Coordinate displacement() const {
    return {to.x - from.x, to.y - from.y};
  }
  auto operator<=>(const Move&) const = default;
};

struct MoveChain {
  std::vector<Move> moves;
  std::size_t gate = 0;
};

/// Free site closest to `from` (Euclidean, ties row-major) that lies farther
/// than `radius` from `center`.
[[nodiscard]] std::optional<Coordinate>
nearestFreeSiteOutside(const MappingState& state, Coordinate from,
                       Coordinate center, double radius);

/// Minimal-length chains per anchor qubit that make `gate` executable.
/// Atoms in `protectedAtoms` are never moved away.
[[nodiscard]] std::vector<MoveChain>
buildChains(const MappingState& state, const GateNode& gate,
            const std::set<HwQubit>& protectedAtoms = {});

/// Extra AOD time of `move` given the recently issued moves.
[[nodiscard]] double deltaTParallel(const Move& move,
                                    std::span<const Move> recent,
                                    const HardwareSpec& spec);

/// Sum over the chain's moves of the distance change of the shuttle-routed
/// front and lookahead gates plus w_t times the parallelism penalty.
[[nodiscard]] double shuttleCost(const MappingState& state,
                                 const MoveChain& chain,
                                 const QuantumCircuit& circuit,
                                 const CapabilityAssignment& assignment,
                                 std::span<const Move> history,
                                 const MapperParams& params);

struct ShuttleRoutingResult {
  MoveChain chain;
  /// Shuttle-routed front gates that are executable afterwards.
  std::vector<std::size_t> executable;
};

/// Applies the cheapest chain over all shuttle-routed front gates. `front`
/// lists every front gate; their hosts are protected from move-aways.
/// Appends the applied moves to `history`. Throws RoutingError if no gate has
/// a chain.
[[nodiscard]] ShuttleRoutingResult
routeShuttleLayer(MappingState& state, const QuantumCircuit& circuit,
                  const CapabilityAssignment& assignment,
                  std::span<const std::size_t> front, std::vector<Move>& history,
                  const MapperParams& params);

} // namespace hmap
