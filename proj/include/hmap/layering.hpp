#pragma once

#include "hmap/circuit.hpp"
#include "hmap/mapping_state.hpp"

#include <cstddef>
#include <limits>
#include <vector>

namespace hmap {

inline constexpr std::size_t UNLIMITED_DEPTH =
    std::numeric_limits<std::size_t>::max();

struct LayerSet {
  /// Unexecuted gates without unexecuted predecessors, ascending ids.
  std::vector<std::size_t> front;
  /// Unexecuted gates whose longest predecessor chain from the front has at
  /// most `depth` edges, front excluded, ascending ids.
  std::vector<std::size_t> lookahead;
  std::size_t depth = 0;
};

/// `executed` must be closed under DAG predecessors.
[[nodiscard]] LayerSet computeLayers(const DependencyDag& dag,
                                     const std::vector<bool>& executed,
                                     std::size_t depth);

/// Incremental front/lookahead maintenance over a fixed DAG.
class LayerTracker {
public:
  LayerTracker(const DependencyDag& dag, std::size_t depth);

  [[nodiscard]] const LayerSet& layers() const { return layers_; }
  [[nodiscard]] const std::vector<bool>& executed() const { return executed_; }
  [[nodiscard]] bool done() const { return remaining_ == 0; }
  [[nodiscard]] bool inFront(std::size_t id) const;

  /// Marks `gate` executed. Throws std::invalid_argument if it is not in the
  /// front and RoutingError if it is not executable in `state`.
  void commit(const MappingState& state, const GateNode& gate);
  /// Same without the executability check.
  void markExecuted(std::size_t id);

private:
  const DependencyDag* dag_;
  std::vector<bool> executed_;
  std::vector<std::size_t> pending_; // unexecuted predecessor count
  std::size_t remaining_;
  LayerSet layers_;

  void refreshLookahead();
};

} // namespace hmap
