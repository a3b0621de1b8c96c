#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

namespace hmap {

enum class Mode : std::uint8_t { GateOnly, ShuttleOnly, Hybrid };

[[nodiscard]] std::string_view toString(Mode mode);
/// Accepts gate-only, shuttle-only and hybrid. Throws std::invalid_argument.
[[nodiscard]] Mode parseMode(std::string_view text);

struct MapperParams {
  Mode mode = Mode::Hybrid;
  /// alpha_g / alpha_s in hybrid mode; infinity selects gate routing whenever
  /// it is reachable.
  double alpha = 1.0;
  double lambdaT = 0.0;
  double wL = 0.1;
  double wT = 0.1;
  /// Number of recent moves considered for parallel AOD execution.
  std::size_t window = 4;
  std::size_t lookahead = 5;
  /// Livelock limit for SWAP routing; 0 derives max(50, 2 l).
  std::size_t livelockLimit = 0;
  std::uint64_t seed = 0;

  [[nodiscard]] double alphaG() const {
    switch (mode) {
    case Mode::GateOnly:
      return 1.0;
    case Mode::ShuttleOnly:
      return 0.0;
    case Mode::Hybrid:
      break;
    }
    return alpha;
  }
  [[nodiscard]] double alphaS() const {
    return mode == Mode::GateOnly ? 0.0 : 1.0;
  }
  /// True when shuttling is never preferred over a reachable gate route.
  [[nodiscard]] bool gateRoutingOnly() const {
    return alphaS() == 0.0 || std::isinf(alphaG());
  }
};

} // namespace hmap
