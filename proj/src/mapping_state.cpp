#include "hmap/mapping_state.hpp"

#include "hmap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>

namespace hmap {

MappingState::MappingState(HardwareSpec spec, std::vector<Coordinate> sites,
                           std::vector<HwQubit> hosts)
    : spec_(spec), sites_(std::move(sites)), hosts_(std::move(hosts)) {
  spec_.validate();
  if (hosts_.size() > sites_.size()) {
    throw std::invalid_argument("more circuit qubits than atoms");
  }
  occupancy_.assign(spec_.sites(), std::nullopt);
  for (HwQubit a = 0; a < sites_.size(); ++a) {
    if (!spec_.inBounds(sites_[a])) {
      throw std::invalid_argument("atom " + std::to_string(a) +
                                  " placed outside the lattice");
    }
    auto& slot = occupancy_[spec_.siteIndex(sites_[a])];
    if (slot) {
      throw std::invalid_argument("two atoms on one site");
    }
    slot = a;
  }
  hosted_.assign(sites_.size(), std::nullopt);
  for (Qubit q = 0; q < hosts_.size(); ++q) {
    if (hosts_[q] >= sites_.size() || hosted_[hosts_[q]]) {
      throw std::invalid_argument("qubit mapping is not injective");
    }
    hosted_[hosts_[q]] = q;
  }
  adjacency_.resize(sites_.size());
  for (HwQubit a = 0; a < sites_.size(); ++a) {
    adjacency_[a] = computeNeighbors(a);
  }
  hopCache_.assign(sites_.size(), {});
}

MappingState MappingState::initial(const HardwareSpec& spec,
                                   std::size_t nCircuitQubits) {
  const std::size_t nAtoms = spec.nAtoms == 0 ? nCircuitQubits : spec.nAtoms;
  if (nAtoms < nCircuitQubits) {
    throw CapacityError("hardware has " + std::to_string(nAtoms) +
                        " atoms but the circuit needs " +
                        std::to_string(nCircuitQubits));
  }
  if (nAtoms >= spec.sites()) {
    throw CapacityError("a " + std::to_string(spec.l) + "x" +
                        std::to_string(spec.l) + " lattice cannot hold " +
                        std::to_string(nAtoms) +
                        " atoms and keep a free site");
  }
  std::vector<Coordinate> sites;
  sites.reserve(nAtoms);
  for (std::size_t i = 0; i < nAtoms; ++i) {
    sites.push_back(spec.siteAt(i));
  }
  std::vector<HwQubit> hosts(nCircuitQubits);
  for (std::size_t q = 0; q < nCircuitQubits; ++q) {
    hosts[q] = static_cast<HwQubit>(q);
  }
  return {spec, std::move(sites), std::move(hosts)};
}

std::optional<Qubit> MappingState::hosted(HwQubit a) const {
  return hosted_.at(a);
}

std::optional<HwQubit> MappingState::atomAt(Coordinate c) const {
  if (!spec_.inBounds(c)) {
    return std::nullopt;
  }
  return occupancy_[spec_.siteIndex(c)];
}

bool MappingState::connected(HwQubit a, HwQubit b) const {
  return std::ranges::binary_search(adjacency_.at(a), b);
}

std::size_t MappingState::edgeCount() const {
  std::size_t total = 0;
  for (const auto& n : adjacency_) {
    total += n.size();
  }
  return total / 2;
}

std::vector<HwQubit> MappingState::vicinity(HwQubit a, double radius) const {
  const Coordinate center = sites_.at(a);
  const auto reach = static_cast<std::int32_t>(std::floor(radius + 1e-9));
  std::vector<HwQubit> out;
  for (std::int32_t dy = -reach; dy <= reach; ++dy) {
    for (std::int32_t dx = -reach; dx <= reach; ++dx) {
      const Coordinate c{center.x + dx, center.y + dy};
      if ((dx == 0 && dy == 0) || !spec_.within(center, c, radius)) {
        continue;
      }
      if (const auto other = atomAt(c)) {
        out.push_back(*other);
      }
    }
  }
  std::ranges::sort(out);
  return out;
}

std::vector<Coordinate> MappingState::freeSitesWithin(Coordinate center,
                                                      double radius) const {
  const auto reach = static_cast<std::int32_t>(std::floor(radius + 1e-9));
  std::vector<Coordinate> out;
  for (std::int32_t dy = -reach; dy <= reach; ++dy) {
    for (std::int32_t dx = -reach; dx <= reach; ++dx) {
      const Coordinate c{center.x + dx, center.y + dy};
      if (spec_.inBounds(c) && spec_.within(center, c, radius) && !occupied(c)) {
        out.push_back(c);
      }
    }
  }
  return out;
}

std::vector<HwQubit> MappingState::computeNeighbors(HwQubit a) const {
  return vicinity(a, spec_.rInt);
}

const std::vector<int>& MappingState::hopsFrom(HwQubit a) const {
  auto& hops = hopCache_.at(a);
  if (!hops.empty()) {
    return hops;
  }
  hops.assign(sites_.size(), UNREACHABLE);
  hops[a] = 0;
  std::queue<HwQubit> frontier;
  frontier.push(a);
  while (!frontier.empty()) {
    const auto current = frontier.front();
    frontier.pop();
    for (const auto next : adjacency_[current]) {
      if (hops[next] == UNREACHABLE) {
        hops[next] = hops[current] + 1;
        frontier.push(next);
      }
    }
  }
  return hops;
}

int MappingState::hopDistance(HwQubit a, HwQubit b) const {
  return hopsFrom(a)[b];
}

int MappingState::swapDistance(HwQubit a, HwQubit b) const {
  const int hops = hopDistance(a, b);
  if (hops == UNREACHABLE) {
    return UNREACHABLE;
  }
  return std::max(hops - 1, 0);
}

void MappingState::applySwap(HwQubit a, HwQubit b) {
  if (a == b || !connected(a, b)) {
    throw std::invalid_argument("SWAP between non-interacting atoms " +
                                std::to_string(a) + " and " +
                                std::to_string(b));
  }
  std::swap(hosted_[a], hosted_[b]);
  if (hosted_[a]) {
    hosts_[*hosted_[a]] = a;
  }
  if (hosted_[b]) {
    hosts_[*hosted_[b]] = b;
  }
}

void MappingState::applyMove(HwQubit a, Coordinate target) {
  if (!spec_.inBounds(target)) {
    throw std::out_of_range("move target outside the lattice");
  }
  if (occupied(target)) {
    throw std::invalid_argument("move target (" + std::to_string(target.x) +
                                "," + std::to_string(target.y) +
                                ") is occupied");
  }
  occupancy_[spec_.siteIndex(sites_.at(a))].reset();
  occupancy_[spec_.siteIndex(target)] = a;
  sites_[a] = target;

  for (const auto old : adjacency_[a]) {
    auto& list = adjacency_[old];
    list.erase(std::ranges::lower_bound(list, a));
  }
  adjacency_[a] = computeNeighbors(a);
  for (const auto now : adjacency_[a]) {
    auto& list = adjacency_[now];
    list.insert(std::ranges::lower_bound(list, a), a);
  }
  for (auto& cache : hopCache_) {
    cache.clear();
  }
}

bool MappingState::executable(std::span<const HwQubit> atoms) const {
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    for (std::size_t j = i + 1; j < atoms.size(); ++j) {
      if (!spec_.interacting(sites_.at(atoms[i]), sites_.at(atoms[j]))) {
        return false;
      }
    }
  }
  return true;
}

bool MappingState::executable(const GateNode& gate) const {
  if (gate.qubits.size() < 2) {
    return true;
  }
  const auto atoms = hostsOf(gate);
  return executable(atoms);
}

std::vector<HwQubit> MappingState::hostsOf(const GateNode& gate) const {
  std::vector<HwQubit> out;
  out.reserve(gate.qubits.size());
  for (const auto q : gate.qubits) {
    out.push_back(hosts_.at(q));
  }
  return out;
}

bool MappingState::graphConsistent() const {
  for (HwQubit a = 0; a < sites_.size(); ++a) {
    std::vector<HwQubit> expected;
    for (HwQubit b = 0; b < sites_.size(); ++b) {
      if (a != b && spec_.interacting(sites_[a], sites_[b])) {
        expected.push_back(b);
      }
    }
    if (expected != adjacency_[a]) {
      return false;
    }
  }
  return true;
}

} // namespace hmap
