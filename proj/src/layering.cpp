#include "hmap/layering.hpp"

#include "hmap/errors.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace hmap {

namespace {

std::vector<std::size_t> lookaheadOf(const DependencyDag& dag,
                                     const std::vector<bool>& executed,
                                     const std::vector<std::size_t>& front,
                                     std::size_t depth) {
  if (depth == 0 || front.empty()) {
    return {};
  }
  // Shortest distance bounds the candidate set, the longest chain decides.
  std::unordered_map<std::size_t, std::size_t> shortest;
  std::queue<std::size_t> frontier;
  for (const auto id : front) {
    shortest.emplace(id, 0);
    frontier.push(id);
  }
  while (!frontier.empty()) {
    const auto id = frontier.front();
    frontier.pop();
    const auto level = shortest[id];
    if (level == depth) {
      continue;
    }
    for (const auto next : dag.successors[id]) {
      if (shortest.emplace(next, level + 1).second) {
        frontier.push(next);
      }
    }
  }

  std::vector<std::size_t> candidates;
  candidates.reserve(shortest.size());
  for (const auto& [id, level] : shortest) {
    if (level > 0) {
      candidates.push_back(id);
    }
  }
  std::ranges::sort(candidates);

  // Edges point from lower to higher ids, so id order is topological.
  std::unordered_map<std::size_t, std::size_t> longest;
  for (const auto id : front) {
    longest.emplace(id, 0);
  }
  std::vector<std::size_t> out;
  for (const auto id : candidates) {
    std::size_t level = 0;
    bool bounded = true;
    for (const auto pred : dag.predecessors[id]) {
      if (executed[pred]) {
        continue;
      }
      const auto it = longest.find(pred);
      if (it == longest.end()) {
        bounded = false;
        break;
      }
      level = std::max(level, it->second + 1);
    }
    if (bounded && level <= depth) {
      longest.emplace(id, level);
      out.push_back(id);
    }
  }
  return out;
}

} // namespace

LayerSet computeLayers(const DependencyDag& dag,
                       const std::vector<bool>& executed, std::size_t depth) {
  LayerSet layers;
  layers.depth = depth;
  for (std::size_t id = 0; id < dag.size; ++id) {
    if (executed[id]) {
      continue;
    }
    const bool ready = std::ranges::all_of(
        dag.predecessors[id], [&](std::size_t p) { return executed[p]; });
    if (ready) {
      layers.front.push_back(id);
    }
  }
  layers.lookahead = lookaheadOf(dag, executed, layers.front, depth);
  return layers;
}

LayerTracker::LayerTracker(const DependencyDag& dag, std::size_t depth)
    : dag_(&dag), executed_(dag.size, false), pending_(dag.size, 0),
      remaining_(dag.size) {
  layers_.depth = depth;
  for (std::size_t id = 0; id < dag.size; ++id) {
    pending_[id] = dag.predecessors[id].size();
    if (pending_[id] == 0) {
      layers_.front.push_back(id);
    }
  }
  refreshLookahead();
}

bool LayerTracker::inFront(std::size_t id) const {
  return std::ranges::binary_search(layers_.front, id);
}

void LayerTracker::commit(const MappingState& state, const GateNode& gate) {
  if (!state.executable(gate)) {
    throw RoutingError("gate " + std::to_string(gate.id) +
                       " committed while not executable");
  }
  markExecuted(gate.id);
}

void LayerTracker::markExecuted(std::size_t id) {
  const auto it = std::ranges::lower_bound(layers_.front, id);
  if (it == layers_.front.end() || *it != id) {
    throw std::invalid_argument("gate " + std::to_string(id) +
                                " is not in the front layer");
  }
  layers_.front.erase(it);
  executed_[id] = true;
  --remaining_;
  for (const auto next : dag_->successors[id]) {
    if (--pending_[next] == 0) {
      layers_.front.insert(std::ranges::lower_bound(layers_.front, next), next);
    }
  }
  refreshLookahead();
}

void LayerTracker::refreshLookahead() {
  layers_.lookahead = lookaheadOf(*dag_, executed_, layers_.front, layers_.depth);
}

} // namespace hmap
