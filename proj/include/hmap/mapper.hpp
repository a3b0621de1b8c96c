#pragma once

#include "hmap/circuit.hpp"
#include "hmap/hardware.hpp"
#include "hmap/mapping_state.hpp"
#include "hmap/params.hpp"
#include "hmap/scheduler.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace hmap {

struct MappingResult {
  MapperParams params;
  QuantumCircuit native;
  Program program;
  ScheduledProgram scheduled;
  MappingState initialState;
  MappingState finalState;
  SuccessEstimate original;
  SuccessEstimate mapped;
  Metrics metrics;
  std::size_t swaps = 0;
  std::size_t moves = 0;
  std::size_t longestChain = 0;
};

/// Decomposes, routes, lowers and schedules `circuit`. Throws CapacityError
/// or RoutingError.
[[nodiscard]] MappingResult mapCircuit(const QuantumCircuit& circuit,
                                       const HardwareSpec& spec,
                                       const MapperParams& params);

struct SweepEntry {
  double alpha = 0.0;
  MappingResult result;
};

struct SweepResult {
  std::vector<SweepEntry> entries;
  std::size_t best = 0;

  [[nodiscard]] const MappingResult& bestResult() const {
    return entries.at(best).result;
  }
};

/// Hybrid runs for every alpha; the first minimum of delta F wins.
[[nodiscard]] SweepResult sweep(const QuantumCircuit& circuit,
                                const HardwareSpec& spec,
                                const MapperParams& params,
                                std::span<const double> alphas);

[[nodiscard]] std::vector<double> defaultAlphas();

enum class ReportFormat { Table, KeyValue };

/// Time-ordered program text.
[[nodiscard]] std::string formatProgram(const MappingResult& result);
/// Metrics report; `entries` adds the per-alpha comparison of a sweep.
[[nodiscard]] std::string formatReport(const MappingResult& result,
                                       ReportFormat format,
                                       std::span<const SweepEntry> entries = {});

} // namespace hmap
