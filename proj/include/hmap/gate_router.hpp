#pragma once

#include "hmap/circuit.hpp"
#include "hmap/mapping_state.hpp"
#include "hmap/params.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace hmap {

struct CapabilityAssignment;

struct SwapCandidate {
  HwQubit a = 0; // a < b
  HwQubit b = 0;

  auto operator<=>(const SwapCandidate&) const = default;
};

/// An r_int clique for a gate with m >= 3 qubits.
struct PositionCandidate {
  /// slots[i] is the atom that gate qubit i has to reach.
  std::vector<HwQubit> slots;
  /// Summed hop distance of every gate qubit's host to its slot.
  int totalSwaps = 0;
};

using PositionMap = std::map<std::size_t, PositionCandidate>;

/// Searches cliques around the gate's hosts in BFS order and keeps the best of
/// the first `maxCliques` found.
[[nodiscard]] std::optional<PositionCandidate>
findPosition(const MappingState& state, const GateNode& gate,
             std::size_t maxCliques = 20);

/// Sorted edges incident to the hosts of the given gates.
[[nodiscard]] std::vector<SwapCandidate>
swapCandidates(const MappingState& state, const QuantumCircuit& circuit,
               std::span<const std::size_t> gates);

/// Per-atom step of the last SWAP participation or restriction.
class LastUsedTracker {
public:
  explicit LastUsedTracker(std::size_t atoms) : last_(atoms, 0) {}

  [[nodiscard]] std::uint64_t step() const { return step_; }
  /// Steps since either atom of `swap` was last used.
  [[nodiscard]] std::uint64_t age(SwapCandidate swap) const;
  /// Marks the SWAP atoms and every atom within r_restr of them, then advances
  /// the step counter.
  void record(const MappingState& state, SwapCandidate swap);

private:
  std::vector<std::uint64_t> last_;
  std::uint64_t step_ = 0;
};

/// Distance of a gate from executability under a host assignment: the SWAP
/// distance for two-qubit gates, the hop sum to the slots otherwise.
/// Returns UNREACHABLE if undefined.
[[nodiscard]] int routingDistance(const MappingState& state,
                                  const GateNode& gate,
                                  const PositionMap& positions,
                                  std::optional<SwapCandidate> swap = {});

/// exp(-lambda t(S)) * (C_f + w_l C_l) with C_f / C_l the summed distance
/// change over the gate-routed front / lookahead gates.
[[nodiscard]] double gateCost(const MappingState& state, SwapCandidate swap,
                              const QuantumCircuit& circuit,
                              const CapabilityAssignment& assignment,
                              const PositionMap& positions,
                              const LastUsedTracker& tracker,
                              const MapperParams& params);

struct AppliedSwap {
  SwapCandidate swap;
  std::optional<Qubit> labelA; // circuit qubit on swap.a before the SWAP
  std::optional<Qubit> labelB;
};

struct GateRoutingResult {
  std::vector<AppliedSwap> swaps;
  /// Front gates that became executable, ascending ids.
  std::vector<std::size_t> executable;
  /// Gates aborted to shuttling by the livelock guard.
  std::vector<std::size_t> handedOff;
};

/// Inserts minimum-cost SWAPs until a gate-routed front gate is executable.
[[nodiscard]] GateRoutingResult
routeGateLayer(MappingState& state, const QuantumCircuit& circuit,
               const CapabilityAssignment& assignment, LastUsedTracker& tracker,
               const MapperParams& params);

} // namespace hmap
