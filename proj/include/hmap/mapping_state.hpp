#pragma once

#include "hmap/circuit.hpp"
#include "hmap/hardware.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace hmap {

/// Physical qubit (atom) index.
using HwQubit = std::uint32_t;

/// Marker for a pair of atoms without a path in the connectivity graph.
inline constexpr int UNREACHABLE = std::numeric_limits<int>::max();

/// The qubit mapping (circuit qubit -> atom), the atom mapping
/// (atom -> lattice site) and the connectivity graph derived from the latter.
class MappingState {
public:
  /// `sites[a]` is the site of atom a; `hosts[c]` the atom carrying circuit
  /// qubit c. Throws std::invalid_argument on overlapping or out-of-range data.
  MappingState(HardwareSpec spec, std::vector<Coordinate> sites,
               std::vector<HwQubit> hosts);

  /// Identity placement q_i -> Q_i -> C_i with sites enumerated row-major;
  /// atoms beyond the circuit qubits fill the following sites. Throws
  /// CapacityError if the lattice cannot hold the atoms with a free site left.
  [[nodiscard]] static MappingState initial(const HardwareSpec& spec,
                                            std::size_t nCircuitQubits);

  [[nodiscard]] const HardwareSpec& spec() const { return spec_; }
  [[nodiscard]] std::size_t circuitQubits() const { return hosts_.size(); }
  [[nodiscard]] std::size_t atoms() const { return sites_.size(); }

  [[nodiscard]] HwQubit host(Qubit q) const { return hosts_.at(q); }
  [[nodiscard]] std::optional<Qubit> hosted(HwQubit a) const;
  [[nodiscard]] const std::vector<HwQubit>& hosts() const { return hosts_; }
  [[nodiscard]] Coordinate site(HwQubit a) const { return sites_.at(a); }
  [[nodiscard]] const std::vector<Coordinate>& sites() const { return sites_; }
  [[nodiscard]] std::optional<HwQubit> atomAt(Coordinate c) const;
  [[nodiscard]] bool occupied(Coordinate c) const { return atomAt(c).has_value(); }

  /// Sorted neighbours of `a` in the connectivity graph.
  [[nodiscard]] const std::vector<HwQubit>& neighbors(HwQubit a) const {
    return adjacency_.at(a);
  }
  [[nodiscard]] bool connected(HwQubit a, HwQubit b) const;
  [[nodiscard]] std::size_t edgeCount() const;

  /// Other atoms within `radius` (units of d) of atom `a`, sorted.
  [[nodiscard]] std::vector<HwQubit> vicinity(HwQubit a, double radius) const;
  /// Unoccupied sites within `radius` of `center`, row-major order.
  [[nodiscard]] std::vector<Coordinate> freeSitesWithin(Coordinate center,
                                                        double radius) const;

  /// Number of graph hops between two atoms (0 for a == b).
  [[nodiscard]] int hopDistance(HwQubit a, HwQubit b) const;
  /// SWAPs needed before a and b interact: hops - 1.
  [[nodiscard]] int swapDistance(HwQubit a, HwQubit b) const;

  /// Exchanges the circuit qubits carried by two interacting atoms.
  void applySwap(HwQubit a, HwQubit b);
  /// Shuttles atom `a` to the free site `target`.
  void applyMove(HwQubit a, Coordinate target);

  /// All atoms pairwise within r_int.
  [[nodiscard]] bool executable(std::span<const HwQubit> atoms) const;
  /// Gate on circuit qubits; single-qubit gates are always executable.
  [[nodiscard]] bool executable(const GateNode& gate) const;
  [[nodiscard]] std::vector<HwQubit> hostsOf(const GateNode& gate) const;

  /// Recomputes the graph from scratch and compares with the incremental one.
  [[nodiscard]] bool graphConsistent() const;

private:
  HardwareSpec spec_;
  std::vector<Coordinate> sites_;
  std::vector<HwQubit> hosts_;
  std::vector<std::optional<Qubit>> hosted_;
  std::vector<std::optional<HwQubit>> occupancy_;
  std::vector<std::vector<HwQubit>> adjacency_;
  mutable std::vector<std::vector<int>> hopCache_;

  [[nodiscard]] std::vector<HwQubit> computeNeighbors(HwQubit a) const;
  [[nodiscard]] const std::vector<int>& hopsFrom(HwQubit a) const;
};

} // namespace hmap
