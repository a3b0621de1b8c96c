#pragma once

// Dense state-vector oracle for small registers (bit q of an index is qubit q).

#include "hmap/circuit.hpp"
#include "hmap/mapper.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace hmap::testing {

using Amp = std::complex<double>;
using Matrix = std::vector<std::vector<Amp>>; // Matrix[row][col]

class StateVector {
public:
  explicit StateVector(std::size_t qubits, std::size_t basis = 0)
      : n_(qubits), amp_(std::size_t{1} << qubits) {
    amp_.at(basis) = 1.0;
  }

  [[nodiscard]] const std::vector<Amp>& amplitudes() const { return amp_; }

  void apply1(std::size_t q, Amp m00, Amp m01, Amp m10, Amp m11) {
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < amp_.size(); ++i) {
      if ((i & bit) == 0) {
        const Amp a = amp_[i];
        const Amp b = amp_[i | bit];
        amp_[i] = m00 * a + m01 * b;
        amp_[i | bit] = m10 * a + m11 * b;
      }
    }
  }

  void h(std::size_t q) {
    const double s = 1.0 / std::sqrt(2.0);
    apply1(q, s, s, s, -s);
  }

  void u3(std::size_t q, double theta, double phi, double lambda) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    apply1(q, c, -std::polar(1.0, lambda) * s, std::polar(1.0, phi) * s,
           std::polar(1.0, phi + lambda) * c);
  }

  /// Phase -1 on the all-ones subspace of `qubits`.
  void controlledZ(const std::vector<std::size_t>& qubits) {
    std::size_t mask = 0;
    for (const auto q : qubits) {
      mask |= std::size_t{1} << q;
    }
    for (std::size_t i = 0; i < amp_.size(); ++i) {
      if ((i & mask) == mask) {
        amp_[i] = -amp_[i];
      }
    }
  }

  /// X on the last qubit controlled by all others.
  void controlledX(const std::vector<std::size_t>& qubits) {
    std::size_t mask = 0;
    for (std::size_t k = 0; k + 1 < qubits.size(); ++k) {
      mask |= std::size_t{1} << qubits[k];
    }
    const std::size_t bit = std::size_t{1} << qubits.back();
    for (std::size_t i = 0; i < amp_.size(); ++i) {
      if ((i & mask) == mask && (i & bit) == 0) {
        std::swap(amp_[i], amp_[i | bit]);
      }
    }
  }

  void swap(std::size_t a, std::size_t b) {
    const std::size_t ba = std::size_t{1} << a;
    const std::size_t bb = std::size_t{1} << b;
    for (std::size_t i = 0; i < amp_.size(); ++i) {
      if ((i & ba) != 0 && (i & bb) == 0) {
        std::swap(amp_[i], amp_[(i & ~ba) | bb]);
      }
    }
  }

  void gate(GateKind kind, const std::vector<std::size_t>& qubits,
            const std::array<double, 3>& params) {
    switch (kind) {
    case GateKind::H:
      h(qubits.at(0));
      break;
    case GateKind::U3:
      u3(qubits.at(0), params[0], params[1], params[2]);
      break;
    case GateKind::CZ:
    case GateKind::C2Z:
    case GateKind::C3Z:
      controlledZ(qubits);
      break;
    case GateKind::CX:
    case GateKind::C2X:
    case GateKind::C3X:
      controlledX(qubits);
      break;
    case GateKind::Swap:
      swap(qubits.at(0), qubits.at(1));
      break;
    }
  }

private:
  std::size_t n_;
  std::vector<Amp> amp_;
};

inline void applyGate(StateVector& sv, const GateNode& g) {
  sv.gate(g.kind, {g.qubits.begin(), g.qubits.end()}, g.params);
}

/// Unitary of `n` qubits built column by column.
inline Matrix unitaryOf(std::size_t n,
                        const std::function<void(StateVector&)>& apply) {
  const std::size_t dim = std::size_t{1} << n;
  Matrix u(dim, std::vector<Amp>(dim));
  for (std::size_t col = 0; col < dim; ++col) {
    StateVector sv(n, col);
    apply(sv);
    for (std::size_t row = 0; row < dim; ++row) {
      u[row][col] = sv.amplitudes()[row];
    }
  }
  return u;
}

inline Matrix circuitUnitary(const QuantumCircuit& c) {
  return unitaryOf(c.n, [&](StateVector& sv) {
    for (const auto& g : c.gates) {
      applyGate(sv, g);
    }
  });
}

inline Matrix circuitUnitary(const QuantumCircuit& c,
                             const std::vector<std::size_t>& order) {
  return unitaryOf(c.n, [&](StateVector& sv) {
    for (const auto id : order) {
      applyGate(sv, c.gates[id]);
    }
  });
}

/// Largest elementwise deviation after removing the global phase.
inline double phaseDeviation(const Matrix& a, const Matrix& b) {
  std::size_t br = 0;
  std::size_t bc = 0;
  double best = -1.0;
  for (std::size_t r = 0; r < a.size(); ++r) {
    for (std::size_t c = 0; c < a.size(); ++c) {
      if (std::abs(a[r][c]) > best) {
        best = std::abs(a[r][c]);
        br = r;
        bc = c;
      }
    }
  }
  if (std::abs(b[br][bc]) < 1e-12) {
    return std::numeric_limits<double>::infinity();
  }
  const Amp phase = a[br][bc] / b[br][bc];
  const Amp unit = phase / std::abs(phase);
  double dev = 0.0;
  for (std::size_t r = 0; r < a.size(); ++r) {
    for (std::size_t c = 0; c < a.size(); ++c) {
      dev = std::max(dev, std::abs(a[r][c] - unit * b[r][c]));
    }
  }
  return dev;
}

/// Replays the mapped program on all atoms and reads the result back through
/// the initial and final qubit mappings. Amplitude left outside the image of
/// the final mapping (unhosted atoms not returned to |0>) enters as leakage
/// via the column norm deficit.
inline Matrix mappedUnitary(const MappingResult& r) {
  const std::size_t n = r.native.n;
  const std::size_t atoms = r.initialState.atoms();
  if (atoms > 14) {
    throw std::invalid_argument("register too large for the oracle");
  }
  const std::size_t dim = std::size_t{1} << n;
  Matrix u(dim, std::vector<Amp>(dim));
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t basis = 0;
    for (std::size_t q = 0; q < n; ++q) {
      if ((col >> q) & 1U) {
        basis |= std::size_t{1} << r.initialState.host(static_cast<Qubit>(q));
      }
    }
    StateVector sv(atoms, basis);
    for (const auto& op : r.program.ops) {
      if (const auto* g = std::get_if<ProgramGate>(&op)) {
        sv.gate(g->kind, {g->atoms.begin(), g->atoms.end()}, g->params);
      }
    }
    for (std::size_t row = 0; row < dim; ++row) {
      std::size_t index = 0;
      for (std::size_t q = 0; q < n; ++q) {
        if ((row >> q) & 1U) {
          index |= std::size_t{1} << r.finalState.host(static_cast<Qubit>(q));
        }
      }
      u[row][col] = sv.amplitudes()[index];
    }
  }
  return u;
}

} // namespace hmap::testing
