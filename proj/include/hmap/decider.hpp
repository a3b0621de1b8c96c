#pragma once

#include "hmap/circuit.hpp"
#include "hmap/layering.hpp"
#include "hmap/mapping_state.hpp"
#include "hmap/params.hpp"

#include <cstddef>
#include <set>
#include <vector>

namespace hmap {

struct RouteEstimate {
  bool feasible = false;
  /// SWAPs or elementary moves.
  int count = 0;
  /// Estimated duration in µs.
  double time = 0.0;
};

/// SWAP count and n_swaps (3 t_cz + 4 t_u3); infeasible if no route exists.
[[nodiscard]] RouteEstimate estimateGateRoute(const MappingState& state,
                                              const GateNode& gate);
/// Moves needed to gather the gate around its anchor qubit.
[[nodiscard]] RouteEstimate estimateShuttleRoute(const MappingState& state,
                                                 const GateNode& gate);

/// exp(-t / T_eff) (F_cz^3 F_h^4)^n; 0 when infeasible.
[[nodiscard]] double gateRouteProbability(const HardwareSpec& spec,
                                          const RouteEstimate& estimate);
/// exp(-t / T_eff) F_shuttle^n; 0 when infeasible.
[[nodiscard]] double shuttleRouteProbability(const HardwareSpec& spec,
                                             const RouteEstimate& estimate);

struct CapabilityAssignment {
  std::vector<std::size_t> frontGate;
  std::vector<std::size_t> lookaheadGate;
  std::vector<std::size_t> frontShuttle;
  std::vector<std::size_t> lookaheadShuttle;
};

/// True if the gate goes to SWAP routing under the given weights.
[[nodiscard]] bool prefersGateRouting(const MappingState& state,
                                      const GateNode& gate, double alphaG,
                                      double alphaS);

/// Splits both layers. Executable gates go to gate routing; gates listed in
/// `forcedShuttle` go to shuttling.
[[nodiscard]] CapabilityAssignment
assign(const MappingState& state, const QuantumCircuit& circuit,
       const LayerSet& layers, const MapperParams& params,
       const std::set<std::size_t>& forcedShuttle = {});

} // namespace hmap
