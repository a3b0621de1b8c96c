#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hmap {

using Qubit = std::uint32_t;

enum class GateKind : std::uint8_t {
  U3,
  H,
  CZ,
  C2Z,
  C3Z,
  Swap, // virtual, only produced by routing
  // controlled-X forms accepted by the parser, removed by decomposeToNative
  CX,
  C2X,
  C3X,
};

[[nodiscard]] std::string_view toString(GateKind kind);
[[nodiscard]] std::size_t arity(GateKind kind);
[[nodiscard]] bool isNative(GateKind kind);
[[nodiscard]] bool isControlledZ(GateKind kind);
/// C_mZ kind acting on `nQubits` qubits (2..4).
[[nodiscard]] GateKind controlledZ(std::size_t nQubits);

struct GateNode {
  GateKind kind = GateKind::H;
  std::vector<Qubit> qubits;
  /// theta, phi, lambda in radians; only meaningful for U3
  std::array<double, 3> params{};
  std::size_t id = 0;

  [[nodiscard]] bool isSingleQubit() const { return qubits.size() == 1; }
  /// Diagonal in the computational basis on every qubit it touches.
  [[nodiscard]] bool isDiagonal() const;
};

struct QuantumCircuit {
  std::size_t n = 0;
  std::vector<GateNode> gates;

  /// Appends a gate and assigns the next monotone id. Checks arity, range and
  /// distinctness of qubits.
  GateNode& add(GateKind kind, std::vector<Qubit> qubits,
                std::array<double, 3> params = {});

  [[nodiscard]] std::size_t count(GateKind kind) const;
};

/// Parses the QASM-2 subset (qreg, u3/u, h, cx, cz, ccx, ccz, cccx, cccz).
/// Throws ParseError carrying the offending line number.
[[nodiscard]] QuantumCircuit parseCircuit(std::string_view text);
[[nodiscard]] QuantumCircuit loadCircuit(const std::string& path);

/// Replaces every C_mX(controls, t) by H(t) C_mZ(controls + t) H(t).
[[nodiscard]] QuantumCircuit decomposeToNative(const QuantumCircuit& c);

[[nodiscard]] bool commutes(const GateNode& a, const GateNode& b);

struct DependencyDag {
  std::size_t size = 0;
  std::vector<std::vector<std::size_t>> predecessors;
  std::vector<std::vector<std::size_t>> successors;

  [[nodiscard]] std::size_t edgeCount() const;
  [[nodiscard]] bool hasEdge(std::size_t from, std::size_t to) const;
};

/// Node i of the result is gate i of `c` (gate ids are positions).
[[nodiscard]] DependencyDag buildDag(const QuantumCircuit& c);

} // namespace hmap
