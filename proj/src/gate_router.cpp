#include "hmap/gate_router.hpp"

#include "hmap/decider.hpp"
#include "hmap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <string>

namespace hmap {

namespace {

HwQubit hostUnder(const MappingState& state, Qubit q,
                  std::optional<SwapCandidate> swap) {
  const auto h = state.host(q);
  if (swap) {
    if (h == swap->a) {
      return swap->b;
    }
    if (h == swap->b) {
      return swap->a;
    }
  }
  return h;
}

bool touches(const MappingState& state, const GateNode& gate,
             SwapCandidate swap) {
  return std::ranges::any_of(gate.qubits, [&](Qubit q) {
    const auto h = state.host(q);
    return h == swap.a || h == swap.b;
  });
}

/// Greedy nearest (qubit, slot) pairing; nullopt if some pair is unreachable.
std::optional<PositionCandidate> scoreClique(const MappingState& state,
                                             const std::vector<HwQubit>& hosts,
                                             const std::vector<HwQubit>& clique) {
  const auto m = hosts.size();
  std::vector<bool> qubitDone(m, false);
  std::vector<bool> slotDone(m, false);
  PositionCandidate out;
  out.slots.assign(m, 0);
  for (std::size_t round = 0; round < m; ++round) {
    int best = UNREACHABLE;
    std::size_t bq = 0;
    std::size_t bs = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (qubitDone[i]) {
        continue;
      }
      for (std::size_t j = 0; j < m; ++j) {
        if (slotDone[j]) {
          continue;
        }
        const int hops = state.hopDistance(hosts[i], clique[j]);
        if (hops < best) {
          best = hops;
          bq = i;
          bs = j;
        }
      }
    }
    if (best == UNREACHABLE) {
      return std::nullopt;
    }
    qubitDone[bq] = true;
    slotDone[bs] = true;
    out.slots[bq] = clique[bs];
    out.totalSwaps += best;
  }
  return out;
}

/// Shortest path a -> b that avoids `blocked` atoms (b itself is allowed).
std::vector<HwQubit> shortestPath(const MappingState& state, HwQubit a,
                                  HwQubit b, const std::set<HwQubit>& blocked) {
  std::vector<HwQubit> parent(state.atoms(), std::numeric_limits<HwQubit>::max());
  std::queue<HwQubit> frontier;
  parent[a] = a;
  frontier.push(a);
  while (!frontier.empty()) {
    const auto current = frontier.front();
    frontier.pop();
    if (current == b) {
      break;
    }
    for (const auto next : state.neighbors(current)) {
      if (parent[next] != std::numeric_limits<HwQubit>::max() ||
          (next != b && blocked.contains(next))) {
        continue;
      }
      parent[next] = current;
      frontier.push(next);
    }
  }
  if (parent[b] == std::numeric_limits<HwQubit>::max()) {
    return {};
  }
  std::vector<HwQubit> path{b};
  while (path.back() != a) {
    path.push_back(parent[path.back()]);
  }
  std::ranges::reverse(path);
  return path;
}

void applyRecorded(MappingState& state, LastUsedTracker& tracker,
                   SwapCandidate swap, GateRoutingResult& result) {
  result.swaps.push_back({swap, state.hosted(swap.a), state.hosted(swap.b)});
  state.applySwap(swap.a, swap.b);
  tracker.record(state, swap);
}

SwapCandidate ordered(HwQubit a, HwQubit b) {
  return a < b ? SwapCandidate{a, b} : SwapCandidate{b, a};
}

/// Livelock fallback when shuttling is never preferred: walk the lowest-id gate along shortest
/// paths until it is executable.
void forceRoute(MappingState& state, const QuantumCircuit& circuit,
                std::size_t gateId, const PositionMap& positions,
                LastUsedTracker& tracker, GateRoutingResult& result) {
  const auto& gate = circuit.gates[gateId];
  if (gate.qubits.size() == 2) {
    const auto path =
        shortestPath(state, state.host(gate.qubits[0]),
                     state.host(gate.qubits[1]), {});
    for (std::size_t i = 0; i + 1 < path.size() && !state.executable(gate); ++i) {
      applyRecorded(state, tracker, ordered(path[i], path[i + 1]), result);
    }
  } else if (const auto it = positions.find(gateId); it != positions.end()) {
    std::set<HwQubit> placed;
    for (std::size_t i = 0; i < gate.qubits.size(); ++i) {
      const auto slot = it->second.slots[i];
      auto path = shortestPath(state, state.host(gate.qubits[i]), slot, placed);
      if (path.empty()) {
        path = shortestPath(state, state.host(gate.qubits[i]), slot, {});
      }
      for (std::size_t k = 0; k + 1 < path.size(); ++k) {
        applyRecorded(state, tracker, ordered(path[k], path[k + 1]), result);
      }
      placed.insert(slot);
    }
  }
  if (!state.executable(gate)) {
    throw RoutingError("SWAP routing could not make gate " +
                       std::to_string(gateId) + " executable");
  }
}

} // namespace

std::optional<PositionCandidate> findPosition(const MappingState& state,
                                              const GateNode& gate,
                                              std::size_t maxCliques) {
  const auto m = gate.qubits.size();
  const auto hosts = state.hostsOf(gate);
  const std::set<HwQubit> hostSet(hosts.begin(), hosts.end());

  std::vector<int> dist(state.atoms(), UNREACHABLE);
  std::vector<HwQubit> order;
  std::queue<HwQubit> frontier;
  for (const auto h : hosts) {
    dist[h] = 0;
    frontier.push(h);
    order.push_back(h);
  }
  while (!frontier.empty()) {
    const auto current = frontier.front();
    frontier.pop();
    for (const auto next : state.neighbors(current)) {
      if (dist[next] == UNREACHABLE) {
        dist[next] = dist[current] + 1;
        frontier.push(next);
        order.push_back(next);
      }
    }
  }

  std::optional<PositionCandidate> best;
  std::set<std::vector<HwQubit>> seen;
  std::size_t found = 0;
  std::vector<HwQubit> clique;

  for (const auto seed : order) {
    if (found >= maxCliques) {
      break;
    }
    auto candidates = state.neighbors(seed);
    std::ranges::sort(candidates, [&](HwQubit x, HwQubit y) {
      const bool hx = hostSet.contains(x);
      const bool hy = hostSet.contains(y);
      if (hx != hy) {
        return hx;
      }
      if (dist[x] != dist[y]) {
        return dist[x] < dist[y];
      }
      return x < y;
    });
    clique.assign(1, seed);

    // Depth-first extension in candidate order; stops at the clique budget.
    const auto extend = [&](auto&& self, std::size_t from) -> void {
      if (found >= maxCliques) {
        return;
      }
      if (clique.size() == m) {
        auto key = clique;
        std::ranges::sort(key);
        if (!seen.insert(key).second) {
          return;
        }
        ++found;
        if (auto scored = scoreClique(state, hosts, clique)) {
          if (!best || scored->totalSwaps < best->totalSwaps) {
            best = std::move(scored);
          }
        }
        return;
      }
      for (std::size_t i = from; i < candidates.size(); ++i) {
        const auto c = candidates[i];
        const bool fits = std::ranges::all_of(
            clique, [&](HwQubit member) { return state.connected(member, c); });
        if (!fits) {
          continue;
        }
        clique.push_back(c);
        self(self, i + 1);
        clique.pop_back();
        if (found >= maxCliques) {
          return;
        }
      }
    };
    extend(extend, 0);
  }
  return best;
}

std::vector<SwapCandidate> swapCandidates(const MappingState& state,
                                          const QuantumCircuit& circuit,
                                          std::span<const std::size_t> gates) {
  std::set<SwapCandidate> out;
  for (const auto id : gates) {
    for (const auto q : circuit.gates[id].qubits) {
      const auto h = state.host(q);
      for (const auto n : state.neighbors(h)) {
        out.insert(ordered(h, n));
      }
    }
  }
  return {out.begin(), out.end()};
}

std::uint64_t LastUsedTracker::age(SwapCandidate swap) const {
  return std::min(step_ - last_.at(swap.a), step_ - last_.at(swap.b));
}

void LastUsedTracker::record(const MappingState& state, SwapCandidate swap) {
  for (const auto atom : {swap.a, swap.b}) {
    last_[atom] = step_;
    for (const auto other : state.vicinity(atom, state.spec().rRestr)) {
      last_[other] = step_;
    }
  }
  ++step_;
}

int routingDistance(const MappingState& state, const GateNode& gate,
                    const PositionMap& positions,
                    std::optional<SwapCandidate> swap) {
  const auto m = gate.qubits.size();
  if (m < 2) {
    return 0;
  }
  if (m == 2) {
    return state.swapDistance(hostUnder(state, gate.qubits[0], swap),
                              hostUnder(state, gate.qubits[1], swap));
  }
  const auto it = positions.find(gate.id);
  if (it == positions.end()) {
    return UNREACHABLE;
  }
  int total = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const int hops =
        state.hopDistance(hostUnder(state, gate.qubits[i], swap), it->second.slots[i]);
    if (hops == UNREACHABLE) {
      return UNREACHABLE;
    }
    total += hops;
  }
  return total;
}

namespace {

double summedDelta(const MappingState& state, SwapCandidate swap,
                   const QuantumCircuit& circuit,
                   std::span<const std::size_t> gates,
                   const PositionMap& positions) {
  double sum = 0.0;
  for (const auto id : gates) {
    const auto& gate = circuit.gates[id];
    if (gate.qubits.size() < 2 || !touches(state, gate, swap)) {
      continue;
    }
    const int before = routingDistance(state, gate, positions);
    const int after = routingDistance(state, gate, positions, swap);
    if (before == UNREACHABLE || after == UNREACHABLE) {
      continue;
    }
    sum += after - before;
  }
  return sum;
}

int frontDistance(const MappingState& state, const QuantumCircuit& circuit,
                  std::span<const std::size_t> gates,
                  const PositionMap& positions) {
  int total = 0;
  for (const auto id : gates) {
    const int d = routingDistance(state, circuit.gates[id], positions);
    if (d != UNREACHABLE) {
      total += d;
    }
  }
  return total;
}

} // namespace

double gateCost(const MappingState& state, SwapCandidate swap,
                const QuantumCircuit& circuit,
                const CapabilityAssignment& assignment,
                const PositionMap& positions, const LastUsedTracker& tracker,
                const MapperParams& params) {
  const double front =
      summedDelta(state, swap, circuit, assignment.frontGate, positions);
  const double lookahead =
      summedDelta(state, swap, circuit, assignment.lookaheadGate, positions);
  const double decay =
      std::exp(-params.lambdaT * static_cast<double>(tracker.age(swap)));
  return decay * (front + params.wL * lookahead);
}

GateRoutingResult routeGateLayer(MappingState& state,
                                 const QuantumCircuit& circuit,
                                 const CapabilityAssignment& assignment,
                                 LastUsedTracker& tracker,
                                 const MapperParams& params) {
  GateRoutingResult result;
  PositionMap positions;
  for (const auto& list : {assignment.frontGate, assignment.lookaheadGate}) {
    for (const auto id : list) {
      const auto& gate = circuit.gates[id];
      if (gate.qubits.size() >= 3) {
        if (auto p = findPosition(state, gate)) {
          positions.emplace(id, std::move(*p));
        }
      }
    }
  }

  const auto collectExecutable = [&] {
    for (const auto id : assignment.frontGate) {
      if (state.executable(circuit.gates[id])) {
        result.executable.push_back(id);
      }
    }
  };

  const std::size_t limit =
      params.livelockLimit != 0
          ? params.livelockLimit
          : std::max<std::size_t>(50, 2 * state.spec().l);
  int bestFront = frontDistance(state, circuit, assignment.frontGate, positions);
  std::size_t stalled = 0;

  while (true) {
    collectExecutable();
    if (!result.executable.empty()) {
      return result;
    }
    auto candidates = swapCandidates(state, circuit, assignment.frontGate);
    if (candidates.empty()) {
      stalled = limit;
    }
    if (stalled >= limit) {
      if (params.gateRoutingOnly()) {
        forceRoute(state, circuit, assignment.frontGate.front(), positions,
                   tracker, result);
        collectExecutable();
      } else {
        result.handedOff = assignment.frontGate;
      }
      return result;
    }

    SwapCandidate chosen = candidates.front();
    double bestCost = std::numeric_limits<double>::infinity();
    for (const auto& c : candidates) {
      const double cost =
          gateCost(state, c, circuit, assignment, positions, tracker, params);
      if (cost < bestCost) {
        bestCost = cost;
        chosen = c;
      }
    }
    applyRecorded(state, tracker, chosen, result);

    const int now = frontDistance(state, circuit, assignment.frontGate, positions);
    if (now < bestFront) {
      bestFront = now;
      stalled = 0;
    } else {
      ++stalled;
    }
  }
}

} // namespace hmap
