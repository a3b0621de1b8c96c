#include "hmap/decider.hpp"

#include "hmap/gate_router.hpp"
#include "hmap/shuttle_router.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <tuple>

namespace hmap {

RouteEstimate estimateGateRoute(const MappingState& state,
                                const GateNode& gate) {
  if (state.executable(gate)) {
    return {true, 0, 0.0};
  }
  int swaps = UNREACHABLE;
  if (gate.qubits.size() == 2) {
    swaps = state.swapDistance(state.host(gate.qubits[0]),
                               state.host(gate.qubits[1]));
  } else if (const auto position = findPosition(state, gate)) {
    swaps = position->totalSwaps;
  }
  if (swaps == UNREACHABLE) {
    return {};
  }
  const auto& spec = state.spec();
  return {true, swaps, swaps * (3 * spec.tCz + 4 * spec.tU3)};
}

RouteEstimate estimateShuttleRoute(const MappingState& state,
                                   const GateNode& gate) {
  if (state.executable(gate)) {
    return {true, 0, 0.0};
  }
  const auto& spec = state.spec();
  const auto hosts = state.hostsOf(gate);
  const auto m = hosts.size();

  std::size_t anchor = 0;
  double bestSum = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      sum += spec.distance(state.site(hosts[i]), state.site(hosts[j]));
    }
    if (sum < bestSum) {
      bestSum = sum;
      anchor = i;
    }
  }
  const Coordinate center = state.site(hosts[anchor]);

  RouteEstimate out{true, 0, 0.0};
  std::vector<Coordinate> reserved;
  const auto isReserved = [&](Coordinate c) {
    return std::ranges::find(reserved, c) != reserved.end();
  };
  const auto closestTo = [&](Coordinate from, const std::vector<Coordinate>& sites) {
    std::optional<Coordinate> best;
    double bestDistance = std::numeric_limits<double>::infinity();
    for (const auto c : sites) {
      const double dist = spec.rectangularDistance(from, c);
      if (dist < bestDistance) {
        bestDistance = dist;
        best = c;
      }
    }
    return best;
  };

  for (std::size_t i = 0; i < m; ++i) {
    const Coordinate from = state.site(hosts[i]);
    if (i == anchor || spec.interacting(center, from)) {
      continue;
    }
    std::vector<Coordinate> free;
    for (const auto c : state.freeSitesWithin(center, spec.rInt)) {
      if (!isReserved(c)) {
        free.push_back(c);
      }
    }
    if (const auto target = closestTo(from, free)) {
      out.count += 1;
      out.time += spec.moveTime(spec.rectangularDistance(from, *target));
      reserved.push_back(*target);
      continue;
    }
    std::vector<Coordinate> blocked;
    for (const auto atom : state.vicinity(hosts[anchor], spec.rInt)) {
      const auto c = state.site(atom);
      if (std::ranges::find(hosts, atom) == hosts.end() && !isReserved(c)) {
        blocked.push_back(c);
      }
    }
    std::ranges::sort(blocked, [](Coordinate a, Coordinate b) {
      return std::tie(a.y, a.x) < std::tie(b.y, b.x);
    });
    const auto target = closestTo(from, blocked);
    if (!target) {
      return {};
    }
    const auto away = nearestFreeSiteOutside(state, *target, center, spec.rRestr);
    if (!away) {
      return {};
    }
    out.count += 2;
    out.time += spec.moveTime(spec.rectangularDistance(*target, *away)) +
                spec.moveTime(spec.rectangularDistance(from, *target));
    reserved.push_back(*target);
  }
  return out;
}

double gateRouteProbability(const HardwareSpec& spec,
                            const RouteEstimate& estimate) {
  if (!estimate.feasible) {
    return 0.0;
  }
  const double perSwap = std::pow(spec.fCz, 3) * std::pow(spec.fH, 4);
  return std::exp(-estimate.time / spec.effectiveCoherence()) *
         std::pow(perSwap, estimate.count);
}

double shuttleRouteProbability(const HardwareSpec& spec,
                               const RouteEstimate& estimate) {
  if (!estimate.feasible) {
    return 0.0;
  }
  return std::exp(-estimate.time / spec.effectiveCoherence()) *
         std::pow(spec.fShuttle, estimate.count);
}

bool prefersGateRouting(const MappingState& state, const GateNode& gate,
                        double alphaG, double alphaS) {
  const auto gateEstimate = estimateGateRoute(state, gate);
  if (!gateEstimate.feasible) {
    return false;
  }
  if (alphaS == 0.0 || std::isinf(alphaG)) {
    return true;
  }
  const auto& spec = state.spec();
  const double pg = gateRouteProbability(spec, gateEstimate);
  const double ps =
      shuttleRouteProbability(spec, estimateShuttleRoute(state, gate));
  return alphaG * pg >= alphaS * ps;
}

CapabilityAssignment assign(const MappingState& state,
                            const QuantumCircuit& circuit,
                            const LayerSet& layers, const MapperParams& params,
                            const std::set<std::size_t>& forcedShuttle) {
  CapabilityAssignment out;
  const auto route = [&](std::size_t id) {
    const auto& gate = circuit.gates[id];
    if (state.executable(gate)) {
      return true;
    }
    return !forcedShuttle.contains(id) &&
           prefersGateRouting(state, gate, params.alphaG(), params.alphaS());
  };
  for (const auto id : layers.front) {
    (route(id) ? out.frontGate : out.frontShuttle).push_back(id);
  }
  for (const auto id : layers.lookahead) {
    (route(id) ? out.lookaheadGate : out.lookaheadShuttle).push_back(id);
  }
  return out;
}

} // namespace hmap
