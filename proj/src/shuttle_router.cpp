#include "hmap/shuttle_router.hpp"

#include "hmap/decider.hpp"
#include "hmap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <tuple>

namespace hmap {

namespace {

constexpr std::size_t MAX_FIRST_CHOICES = 8;

bool rowMajorLess(Coordinate a, Coordinate b) {
  return std::tie(a.y, a.x) < std::tie(b.y, b.x);
}

/// Occupancy-only copy of a mapping state for cheap chain simulation.
class Layout {
public:
  explicit Layout(const MappingState& state)
      : spec_(&state.spec()), sites_(state.sites()),
        grid_(state.spec().sites(), NONE) {
    for (std::size_t a = 0; a < sites_.size(); ++a) {
      grid_[spec_->siteIndex(sites_[a])] = static_cast<std::int64_t>(a);
    }
  }

  [[nodiscard]] Coordinate site(HwQubit a) const { return sites_[a]; }
  [[nodiscard]] std::optional<HwQubit> atomAt(Coordinate c) const {
    if (!spec_->inBounds(c) || grid_[spec_->siteIndex(c)] == NONE) {
      return std::nullopt;
    }
    return static_cast<HwQubit>(grid_[spec_->siteIndex(c)]);
  }
  [[nodiscard]] bool occupied(Coordinate c) const { return atomAt(c).has_value(); }
  void move(HwQubit a, Coordinate to) {
    grid_[spec_->siteIndex(sites_[a])] = NONE;
    grid_[spec_->siteIndex(to)] = static_cast<std::int64_t>(a);
    sites_[a] = to;
  }

private:
  static constexpr std::int64_t NONE = -1;
  const HardwareSpec* spec_;
  std::vector<Coordinate> sites_;
  std::vector<std::int64_t> grid_;
};

template <typename Occupied>
std::optional<Coordinate> nearestFreeOutside(const HardwareSpec& spec,
                                             const Occupied& occupied,
                                             Coordinate from, Coordinate center,
                                             double radius) {
  std::optional<Coordinate> best;
  double bestDistance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < spec.sites(); ++i) {
    const auto c = spec.siteAt(i);
    if (occupied(c) || spec.within(center, c, radius)) {
      continue;
    }
    const double dist = spec.distance(from, c);
    if (dist < bestDistance) {
      bestDistance = dist;
      best = c;
    }
  }
  return best;
}

struct Option {
  Coordinate site;
  std::optional<HwQubit> blocker;
};

struct Partial {
  Layout layout;
  std::vector<HwQubit> placed;
  std::vector<HwQubit> remaining;
  std::vector<Move> moves;
};

class ChainBuilder {
public:
  ChainBuilder(const MappingState& state, const std::vector<HwQubit>& hosts,
               const std::set<HwQubit>& protectedAtoms, Coordinate center)
      : spec_(state.spec()), hosts_(hosts), protected_(protectedAtoms),
        center_(center) {}

  [[nodiscard]] bool compatible(const Partial& p, Coordinate c) const {
    return std::ranges::all_of(p.placed, [&](HwQubit a) {
      return spec_.interacting(p.layout.site(a), c);
    });
  }

  void settle(Partial& p) const {
    for (bool changed = true; changed;) {
      changed = false;
      for (auto it = p.remaining.begin(); it != p.remaining.end(); ++it) {
        if (compatible(p, p.layout.site(*it))) {
          p.placed.push_back(*it);
          p.remaining.erase(it);
          changed = true;
          break;
        }
      }
    }
  }

  /// Free options first, then blocker options, each by distance to `atom`.
  [[nodiscard]] std::pair<std::vector<Option>, std::vector<Option>>
  options(const Partial& p, HwQubit atom) const {
    std::vector<Option> free;
    std::vector<Option> blocked;
    const auto reach = static_cast<std::int32_t>(std::floor(spec_.rInt + 1e-9));
    for (std::int32_t dy = -reach; dy <= reach; ++dy) {
      for (std::int32_t dx = -reach; dx <= reach; ++dx) {
        const Coordinate c{center_.x + dx, center_.y + dy};
        if (!spec_.inBounds(c) || !compatible(p, c)) {
          continue;
        }
        const auto occupant = p.layout.atomAt(c);
        if (!occupant) {
          free.push_back({c, std::nullopt});
        } else if (std::ranges::find(hosts_, *occupant) == hosts_.end() &&
                   !protected_.contains(*occupant)) {
          blocked.push_back({c, occupant});
        }
      }
    }
    const Coordinate from = p.layout.site(atom);
    const auto byDistance = [&](const Option& a, const Option& b) {
      const double da = spec_.distance(from, a.site);
      const double db = spec_.distance(from, b.site);
      if (da != db) {
        return da < db;
      }
      return rowMajorLess(a.site, b.site);
    };
    std::ranges::sort(free, byDistance);
    std::ranges::sort(blocked, byDistance);
    return {std::move(free), std::move(blocked)};
  }

  /// Next qubit to place: the first one with a direct move, else the first
  /// one with any option.
  [[nodiscard]] std::optional<std::pair<std::size_t, std::vector<Option>>>
  next(const Partial& p) const {
    std::optional<std::pair<std::size_t, std::vector<Option>>> fallback;
    for (std::size_t i = 0; i < p.remaining.size(); ++i) {
      auto [free, blocked] = options(p, p.remaining[i]);
      if (!free.empty()) {
        return std::pair{i, std::move(free)};
      }
      if (!fallback && !blocked.empty()) {
        fallback = std::pair{i, std::move(blocked)};
      }
    }
    return fallback;
  }

  [[nodiscard]] bool place(Partial& p, std::size_t index,
                           const Option& option) const {
    const auto atom = p.remaining[index];
    if (option.blocker) {
      const auto away = nearestFreeOutside(
          spec_, [&](Coordinate c) { return p.layout.occupied(c); },
          option.site, center_, spec_.rRestr);
      if (!away) {
        return false;
      }
      p.moves.push_back({*option.blocker, option.site, *away, MoveKind::MoveAway});
      p.layout.move(*option.blocker, *away);
    }
    p.moves.push_back({atom, p.layout.site(atom), option.site, MoveKind::Direct});
    p.layout.move(atom, option.site);
    p.placed.push_back(atom);
    p.remaining.erase(p.remaining.begin() + static_cast<std::ptrdiff_t>(index));
    return true;
  }

  [[nodiscard]] bool complete(Partial& p) const {
    while (true) {
      settle(p);
      if (p.remaining.empty()) {
        return true;
      }
      const auto choice = next(p);
      if (!choice || !place(p, choice->first, choice->second.front())) {
        return false;
      }
    }
  }

private:
  const HardwareSpec& spec_;
  const std::vector<HwQubit>& hosts_;
  const std::set<HwQubit>& protected_;
  Coordinate center_;
};

double pairDistanceSum(const Layout& layout, const MappingState& state,
                       const GateNode& gate) {
  const auto& spec = state.spec();
  double sum = 0.0;
  for (std::size_t i = 0; i < gate.qubits.size(); ++i) {
    for (std::size_t j = i + 1; j < gate.qubits.size(); ++j) {
      sum += spec.distance(layout.site(state.host(gate.qubits[i])),
                           layout.site(state.host(gate.qubits[j])));
    }
  }
  return sum;
}

} // namespace

std::optional<Coordinate> nearestFreeSiteOutside(const MappingState& state,
                                                  Coordinate from,
                                                  Coordinate center,
                                                  double radius) {
  return nearestFreeOutside(
      state.spec(), [&](Coordinate c) { return state.occupied(c); }, from,
      center, radius);
}

std::vector<MoveChain> buildChains(const MappingState& state,
                                   const GateNode& gate,
                                   const std::set<HwQubit>& protectedAtoms) {
  const auto hosts = state.hostsOf(gate);
  std::vector<MoveChain> out;
  for (std::size_t anchor = 0; anchor < hosts.size(); ++anchor) {
    const Coordinate center = state.site(hosts[anchor]);
    const ChainBuilder builder(state, hosts, protectedAtoms, center);

    Partial root{Layout(state), {hosts[anchor]}, {}, {}};
    for (std::size_t i = 0; i < hosts.size(); ++i) {
      if (i != anchor) {
        root.remaining.push_back(hosts[i]);
      }
    }
    builder.settle(root);

    std::vector<std::vector<Move>> found;
    if (root.remaining.empty()) {
      found.emplace_back();
    } else if (const auto first = builder.next(root)) {
      const auto& [index, options] = *first;
      const auto n = std::min(options.size(), MAX_FIRST_CHOICES);
      for (std::size_t k = 0; k < n; ++k) {
        Partial branch = root;
        if (builder.place(branch, index, options[k]) && builder.complete(branch)) {
          found.push_back(std::move(branch.moves));
        }
      }
    }
    if (found.empty()) {
      continue;
    }
    const auto shortest =
        std::ranges::min_element(found, {}, &std::vector<Move>::size)->size();
    for (auto& moves : found) {
      const bool duplicate = std::ranges::any_of(
          out, [&](const MoveChain& c) { return c.moves == moves; });
      if (moves.size() == shortest && !duplicate) {
        out.push_back({std::move(moves), gate.id});
      }
    }
  }
  return out;
}

double deltaTParallel(const Move& move, std::span<const Move> recent,
                      const HardwareSpec& spec) {
  bool loadShared = false;
  for (const auto& r : recent) {
    if (r.from.y != move.from.y && r.from.x != move.from.x) {
      continue;
    }
    loadShared = true;
    const bool shuttleShared = r.displacement() == move.displacement() &&
                               r.from != move.from && r.to != move.to &&
                               r.to != move.from && move.to != r.from;
    if (shuttleShared) {
      return 0.0;
    }
  }
  if (loadShared) {
    return spec.tAct + spec.tDeact;
  }
  return spec.moveTime(spec.rectangularDistance(move.from, move.to));
}

double shuttleCost(const MappingState& state, const MoveChain& chain,
                   const QuantumCircuit& circuit,
                   const CapabilityAssignment& assignment,
                   std::span<const Move> history, const MapperParams& params) {
  std::multimap<Qubit, std::size_t> frontByQubit;
  std::multimap<Qubit, std::size_t> lookaheadByQubit;
  for (const auto id : assignment.frontShuttle) {
    for (const auto q : circuit.gates[id].qubits) {
      frontByQubit.emplace(q, id);
    }
  }
  for (const auto id : assignment.lookaheadShuttle) {
    for (const auto q : circuit.gates[id].qubits) {
      lookaheadByQubit.emplace(q, id);
    }
  }

  Layout layout(state);
  std::vector<Move> recent(history.begin(), history.end());
  double total = 0.0;
  for (const auto& move : chain.moves) {
    const auto label = state.hosted(move.atom);
    const auto distanceOf = [&](const std::multimap<Qubit, std::size_t>& byQubit) {
      double sum = 0.0;
      if (label) {
        const auto [lo, hi] = byQubit.equal_range(*label);
        for (auto it = lo; it != hi; ++it) {
          sum += pairDistanceSum(layout, state, circuit.gates[it->second]);
        }
      }
      return sum;
    };
    const double frontBefore = distanceOf(frontByQubit);
    const double lookaheadBefore = distanceOf(lookaheadByQubit);
    layout.move(move.atom, move.to);
    const double front = distanceOf(frontByQubit) - frontBefore;
    const double lookahead = distanceOf(lookaheadByQubit) - lookaheadBefore;

    const auto window = std::min(params.window, recent.size());
    const std::span<const Move> last(recent.data() + recent.size() - window, window);
    const double dt = deltaTParallel(move, last, state.spec());
    total += front + params.wL * lookahead + params.wT * dt;
    recent.push_back(move);
  }
  return total;
}

ShuttleRoutingResult routeShuttleLayer(MappingState& state,
                                       const QuantumCircuit& circuit,
                                       const CapabilityAssignment& assignment,
                                       std::span<const std::size_t> front,
                                       std::vector<Move>& history,
                                       const MapperParams& params) {
  std::set<HwQubit> protectedAtoms;
  for (const auto id : front) {
    for (const auto q : circuit.gates[id].qubits) {
      protectedAtoms.insert(state.host(q));
    }
  }

  std::optional<MoveChain> best;
  double bestCost = 0.0;
  for (const auto id : assignment.frontShuttle) {
    const auto& gate = circuit.gates[id];
    auto chains = buildChains(state, gate, protectedAtoms);
    if (chains.empty()) {
      chains = buildChains(state, gate);
    }
    for (auto& chain : chains) {
      const double cost =
          shuttleCost(state, chain, circuit, assignment, history, params);
      const bool better =
          !best ||
          std::tuple(cost, chain.moves.size(), chain.gate) <
              std::tuple(bestCost, best->moves.size(), best->gate) ||
          (std::tuple(cost, chain.moves.size(), chain.gate) ==
               std::tuple(bestCost, best->moves.size(), best->gate) &&
           chain.moves < best->moves);
      if (better) {
        bestCost = cost;
        best = std::move(chain);
      }
    }
  }
  if (!best) {
    throw RoutingError("no move chain exists for any shuttle-routed gate");
  }
  for (const auto& move : best->moves) {
    state.applyMove(move.atom, move.to);
    history.push_back(move);
  }
  ShuttleRoutingResult result{std::move(*best), {}};
  for (const auto id : assignment.frontShuttle) {
    if (state.executable(circuit.gates[id])) {
      result.executable.push_back(id);
    }
  }
  return result;
}

} // namespace hmap
