#include "hmap/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace hmap {

std::vector<HwQubit> ProgramMoves::atoms() const {
  std::set<HwQubit> atoms;
  for (const auto& m : group.moves) {
    atoms.insert(m.atom);
  }
  return {atoms.begin(), atoms.end()};
}

std::size_t Program::controlledZCount() const {
  std::size_t n = 0;
  for (const auto& op : ops) {
    if (const auto* g = std::get_if<ProgramGate>(&op); g && isControlledZ(g->kind)) {
      ++n;
    }
  }
  return n;
}

std::size_t Program::swapDerivedCount() const {
  std::size_t n = 0;
  for (const auto& op : ops) {
    if (const auto* g = std::get_if<ProgramGate>(&op); g && g->swapDerived) {
      ++n;
    }
  }
  return n;
}

std::size_t Program::moveGroupCount() const {
  return static_cast<std::size_t>(std::ranges::count_if(
      ops, [](const ProgramOp& op) { return std::holds_alternative<ProgramMoves>(op); }));
}

Program programFromCircuit(const QuantumCircuit& circuit) {
  Program program;
  program.circuitQubits = circuit.n;
  for (const auto& gate : circuit.gates) {
    ProgramGate op;
    op.kind = gate.kind;
    op.atoms.assign(gate.qubits.begin(), gate.qubits.end());
    op.labels = gate.qubits;
    op.params = gate.params;
    program.ops.emplace_back(std::move(op));
  }
  return program;
}

namespace {

bool restricted(const std::vector<Coordinate>& a, const std::vector<Coordinate>& b,
                const HardwareSpec& spec) {
  for (const auto x : a) {
    for (const auto y : b) {
      if (spec.within(x, y, spec.rRestr)) {
        return true;
      }
    }
  }
  return false;
}

} // namespace

ScheduledProgram schedule(const Program& program, const HardwareSpec& spec) {
  ScheduledProgram out;
  out.ops.resize(program.ops.size());
  std::map<HwQubit, double> available;
  const auto readyAt = [&](const std::vector<HwQubit>& atoms) {
    double t = 0.0;
    for (const auto a : atoms) {
      if (const auto it = available.find(a); it != available.end()) {
        t = std::max(t, it->second);
      }
    }
    return t;
  };
  double aodFree = 0.0;
  std::multimap<double, std::size_t> running; // end time -> op index

  for (std::size_t i = 0; i < program.ops.size(); ++i) {
    const auto& op = program.ops[i];
    if (const auto* gate = std::get_if<ProgramGate>(&op)) {
      const double duration = spec.gateTime(gate->atoms.size());
      double t = readyAt(gate->atoms);
      const bool checked = gate->atoms.size() >= 2 && !gate->sites.empty();
      while (checked) {
        double blockedUntil = -1.0;
        for (auto it = running.upper_bound(t); it != running.end(); ++it) {
          const auto& other = std::get<ProgramGate>(program.ops[it->second]);
          const auto& slot = out.ops[it->second];
          if (slot.start < t + duration &&
              restricted(gate->sites, other.sites, spec)) {
            blockedUntil = std::max(blockedUntil, slot.end());
          }
        }
        if (blockedUntil < 0) {
          break;
        }
        t = blockedUntil;
      }
      out.ops[i] = {t, duration};
      if (checked) {
        running.emplace(t + duration, i);
      }
      for (const auto a : gate->atoms) {
        available[a] = t + duration;
      }
    } else {
      const auto& moves = std::get<ProgramMoves>(op);
      const auto atoms = moves.atoms();
      const double t = std::max(aodFree, readyAt(atoms));
      out.ops[i] = {t, moves.group.duration};
      aodFree = t + moves.group.duration;
      for (const auto a : atoms) {
        available[a] = aodFree;
      }
    }
    out.makespan = std::max(out.makespan, out.ops[i].end());
  }
  return out;
}

SuccessEstimate successProbability(const Program& program,
                                   const ScheduledProgram& sched,
                                   const HardwareSpec& spec) {
  std::map<Qubit, std::vector<std::pair<double, double>>> busy;
  double product = 1.0;
  double logProduct = 0.0;
  const auto factor = [&](double f) {
    product *= f;
    logProduct += std::log(f);
  };
  for (std::size_t i = 0; i < program.ops.size(); ++i) {
    const auto& slot = sched.ops[i];
    const std::vector<Qubit>* labels = nullptr;
    if (const auto* gate = std::get_if<ProgramGate>(&program.ops[i])) {
      factor(isControlledZ(gate->kind) ? spec.fCz : spec.fH);
      labels = &gate->labels;
    } else {
      const auto& moves = std::get<ProgramMoves>(program.ops[i]);
      for (std::size_t k = 0; k < moves.atoms().size(); ++k) {
        factor(spec.fShuttle);
      }
      labels = &moves.labels;
    }
    for (const auto q : *labels) {
      busy[q].emplace_back(slot.start, slot.end());
    }
  }

  double busyTotal = 0.0;
  for (auto& [q, intervals] : busy) {
    std::ranges::sort(intervals);
    double coveredUntil = -1.0;
    for (const auto& [s, e] : intervals) {
      const double from = std::max(s, coveredUntil);
      if (e > from) {
        busyTotal += e - from;
      }
      coveredUntil = std::max(coveredUntil, e);
    }
  }

  SuccessEstimate out;
  out.makespan = sched.makespan;
  out.idle = std::max(0.0, static_cast<double>(program.circuitQubits) *
                               sched.makespan - busyTotal);
  const double tEff = spec.effectiveCoherence();
  out.probability = std::exp(-out.idle / tEff) * product;
  out.logProbability = -out.idle / tEff + logProduct;
  return out;
}

Metrics compare(const SuccessEstimate& original, std::size_t originalCz,
                const SuccessEstimate& mapped, std::size_t mappedCz) {
  Metrics m;
  m.makespan = mapped.makespan;
  m.idle = mapped.idle;
  m.probability = mapped.probability;
  m.deltaF = original.logProbability - mapped.logProbability;
  m.deltaCz = static_cast<long long>(mappedCz) - static_cast<long long>(originalCz);
  m.deltaT = mapped.makespan - original.makespan;
  return m;
}

} // namespace hmap
