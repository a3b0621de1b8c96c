#pragma once

#include "hmap/aod.hpp"
#include "hmap/circuit.hpp"
#include "hmap/hardware.hpp"
#include "hmap/mapping_state.hpp"

#include <array>
#include <cstddef>
#include <variant>
#include <vector>

namespace hmap {

struct ProgramGate {
  GateKind kind = GateKind::H;
  std::vector<HwQubit> atoms;
  /// Circuit qubits charged with the gate's busy time.
  std::vector<Qubit> labels;
  std::array<double, 3> params{};
  bool swapDerived = false;
  /// Atom sites while the gate runs; empty disables the restriction check.
  std::vector<Coordinate> sites;
};

struct ProgramMoves {
  AodGroup group;
  /// Circuit qubits carried by the moved atoms.
  std::vector<Qubit> labels;

  [[nodiscard]] std::vector<HwQubit> atoms() const;
};

using ProgramOp = std::variant<ProgramGate, ProgramMoves>;

/// Hardware operations in routing order.
struct Program {
  std::size_t circuitQubits = 0;
  std::vector<ProgramOp> ops;

  [[nodiscard]] std::size_t controlledZCount() const;
  [[nodiscard]] std::size_t swapDerivedCount() const;
  [[nodiscard]] std::size_t moveGroupCount() const;
};

/// The unmapped circuit with atoms equal to circuit qubits and no positions.
[[nodiscard]] Program programFromCircuit(const QuantumCircuit& circuit);

struct ScheduledOp {
  double start = 0.0;
  double duration = 0.0;

  [[nodiscard]] double end() const { return start + duration; }
};

struct ScheduledProgram {
  /// ops[i] times program op i.
  std::vector<ScheduledOp> ops;
  double makespan = 0.0;
};

/// ASAP list scheduling in program order. Multi-qubit gates wait until no
/// running multi-qubit gate has an atom within r_restr; move groups share one
/// AOD and keep every moved atom busy for the whole group.
[[nodiscard]] ScheduledProgram schedule(const Program& program,
                                        const HardwareSpec& spec);

struct SuccessEstimate {
  double makespan = 0.0;
  double idle = 0.0;
  double probability = 1.0;
  double logProbability = 0.0;
};

/// P = exp(-t_idle / T_eff) times the product of operation fidelities, with
/// t_idle = n T minus the busy time of each circuit qubit.
[[nodiscard]] SuccessEstimate successProbability(const Program& program,
                                                 const ScheduledProgram& sched,
                                                 const HardwareSpec& spec);

struct Metrics {
  double makespan = 0.0;
  double idle = 0.0;
  double probability = 1.0;
  double deltaF = 0.0;
  long long deltaCz = 0;
  double deltaT = 0.0;
  double runtime = 0.0; // CPU seconds, filled by the caller
};

[[nodiscard]] Metrics compare(const SuccessEstimate& original,
                              std::size_t originalCz,
                              const SuccessEstimate& mapped,
                              std::size_t mappedCz);

} // namespace hmap
