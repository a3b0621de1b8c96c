#include "hmap/mapper.hpp"

#include "hmap/aod.hpp"
#include "hmap/decider.hpp"
#include "hmap/errors.hpp"
#include "hmap/gate_router.hpp"
#include "hmap/layering.hpp"
#include "hmap/shuttle_router.hpp"

#include <algorithm>
#include <iomanip>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace hmap {

std::string_view toString(Mode mode) {
  switch (mode) {
  case Mode::GateOnly:
    return "gate-only";
  case Mode::ShuttleOnly:
    return "shuttle-only";
  case Mode::Hybrid:
    return "hybrid";
  }
  return "?";
}

Mode parseMode(std::string_view text) {
  for (const auto mode : {Mode::GateOnly, Mode::ShuttleOnly, Mode::Hybrid}) {
    if (text == toString(mode)) {
      return mode;
    }
  }
  throw std::invalid_argument("unknown mode '" + std::string(text) + "'");
}

namespace {

class Emitter {
public:
  Emitter(Program& program, const MappingState& state)
      : program_(program), state_(state) {}

  void gate(const GateNode& node) {
    flush();
    ProgramGate op;
    op.kind = node.kind;
    op.atoms = state_.hostsOf(node);
    op.labels = node.qubits;
    op.params = node.params;
    for (const auto a : op.atoms) {
      op.sites.push_back(state_.site(a));
    }
    program_.ops.emplace_back(std::move(op));
  }

  /// H(b) CZ H(b) H(a) CZ H(a) H(b) CZ H(b); called after the SWAP was applied,
  /// so sites are unchanged and labels come from `swap`.
  void swap(const AppliedSwap& swap) {
    flush();
    const auto [a, b] = std::pair{swap.swap.a, swap.swap.b};
    const auto labels = [](std::optional<Qubit> q) {
      return q ? std::vector<Qubit>{*q} : std::vector<Qubit>{};
    };
    const auto single = [&](HwQubit atom, std::optional<Qubit> label) {
      ProgramGate op;
      op.kind = GateKind::H;
      op.atoms = {atom};
      op.labels = labels(label);
      op.swapDerived = true;
      op.sites = {state_.site(atom)};
      program_.ops.emplace_back(std::move(op));
    };
    const auto cz = [&] {
      ProgramGate op;
      op.kind = GateKind::CZ;
      op.atoms = {a, b};
      for (const auto q : {swap.labelA, swap.labelB}) {
        if (q) {
          op.labels.push_back(*q);
        }
      }
      op.swapDerived = true;
      op.sites = {state_.site(a), state_.site(b)};
      program_.ops.emplace_back(std::move(op));
    };
    single(b, swap.labelB);
    cz();
    single(b, swap.labelB);
    single(a, swap.labelA);
    cz();
    single(a, swap.labelA);
    single(b, swap.labelB);
    cz();
    single(b, swap.labelB);
  }

  /// Moves are buffered until the next gate so consecutive chains can share
  /// AOD groups. Labels are read at flush time; moves never change f_q.
  void moves(const std::vector<Move>& moves) {
    pending_.insert(pending_.end(), moves.begin(), moves.end());
  }

  void flush() {
    if (pending_.empty()) {
      return;
    }
    for (const auto& group : lowerMoves(pending_, state_.spec())) {
      ProgramMoves op{group, {}};
      for (const auto atom : op.atoms()) {
        if (const auto q = state_.hosted(atom)) {
          op.labels.push_back(*q);
        }
      }
      program_.ops.emplace_back(std::move(op));
    }
    pending_.clear();
  }

private:
  Program& program_;
  const MappingState& state_;
  std::vector<Move> pending_;
};

} // namespace

MappingResult mapCircuit(const QuantumCircuit& circuit, const HardwareSpec& spec,
                         const MapperParams& params) {
  spec.validate();
  if (params.alpha < 0 || params.wL < 0 || params.wT < 0 || params.lambdaT < 0) {
    throw std::invalid_argument("alpha and weights must be non-negative");
  }
  auto native = decomposeToNative(circuit);
  const auto dag = buildDag(native);
  auto state = MappingState::initial(spec, native.n);
  const auto initialState = state;

  Program program;
  program.circuitQubits = native.n;
  Emitter emit(program, state);
  LayerTracker layers(dag, params.lookahead);
  LastUsedTracker tracker(state.atoms());
  std::vector<Move> history;
  std::set<std::size_t> forcedShuttle;
  std::size_t swaps = 0;
  std::size_t moves = 0;
  std::size_t longestChain = 0;

  const auto commitExecutable = [&] {
    for (bool progress = true; progress;) {
      progress = false;
      const auto front = layers.layers().front;
      for (const auto id : front) {
        const auto& gate = native.gates[id];
        if (state.executable(gate)) {
          emit.gate(gate);
          layers.commit(state, gate);
          forcedShuttle.erase(id);
          progress = true;
        }
      }
    }
  };

  while (true) {
    commitExecutable();
    if (layers.done()) {
      break;
    }
    const auto assignment =
        assign(state, native, layers.layers(), params, forcedShuttle);
    if (!assignment.frontGate.empty()) {
      const auto routed =
          routeGateLayer(state, native, assignment, tracker, params);
      for (const auto& s : routed.swaps) {
        emit.swap(s);
      }
      swaps += routed.swaps.size();
      forcedShuttle.insert(routed.handedOff.begin(), routed.handedOff.end());
    } else {
      const auto routed = routeShuttleLayer(state, native, assignment,
                                            layers.layers().front, history,
                                            params);
      emit.moves(routed.chain.moves);
      moves += routed.chain.moves.size();
      longestChain = std::max(longestChain, routed.chain.moves.size());
    }
  }
  emit.flush();

  const auto scheduled = schedule(program, spec);
  const auto mapped = successProbability(program, scheduled, spec);
  const auto originalProgram = programFromCircuit(native);
  const auto original =
      successProbability(originalProgram, schedule(originalProgram, spec), spec);
  const auto metrics = compare(original, originalProgram.controlledZCount(),
                               mapped, program.controlledZCount());

  return MappingResult{params,   std::move(native), std::move(program),
                       scheduled, initialState,     state,
                       original, mapped,            metrics,
                       swaps,    moves,             longestChain};
}

std::vector<double> defaultAlphas() { return {0.9, 0.95, 1.0, 1.05, 1.1}; }

SweepResult sweep(const QuantumCircuit& circuit, const HardwareSpec& spec,
                  const MapperParams& params, std::span<const double> alphas) {
  if (alphas.empty()) {
    throw std::invalid_argument("empty alpha sweep");
  }
  SweepResult out;
  for (const double alpha : alphas) {
    auto p = params;
    p.mode = Mode::Hybrid;
    p.alpha = alpha;
    out.entries.push_back({alpha, mapCircuit(circuit, spec, p)});
    if (out.entries.back().result.metrics.deltaF <
        out.entries[out.best].result.metrics.deltaF) {
      out.best = out.entries.size() - 1;
    }
  }
  return out;
}

namespace {

std::string number(double v, int precision = 6) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(precision) << v;
  return out.str();
}

std::string list(const std::vector<double>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    out += (i ? "," : "") + number(values[i], 4);
  }
  return out + "]";
}

template <typename T> std::string idList(const std::vector<T>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    out += (i ? "," : "") + std::to_string(values[i]);
  }
  return out + "]";
}

} // namespace

std::string formatProgram(const MappingResult& result) {
  struct Line {
    double time;
    std::size_t op;
    std::size_t sub;
    std::string text;
  };
  std::vector<Line> lines;
  const auto& ops = result.program.ops;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const double start = result.scheduled.ops[i].start;
    if (const auto* gate = std::get_if<ProgramGate>(&ops[i])) {
      std::string text = "GATE " + std::string(toString(gate->kind)) +
                         " q=" + idList(gate->atoms) + " t=" + number(start);
      if (gate->kind == GateKind::U3) {
        text += " params=" + list({gate->params.begin(), gate->params.end()});
      }
      lines.push_back({start, i, 0, std::move(text)});
      continue;
    }
    const auto& group = std::get<ProgramMoves>(ops[i]).group;
    for (std::size_t k = 0; k < group.ops.size(); ++k) {
      const auto& op = group.ops[k];
      const double t = start + op.start;
      std::string text;
      switch (op.kind) {
      case AodOpKind::Activate:
        text = "AOD_ACT cols=" + list(op.cols) + " rows=" + list(op.rows) +
               " t=" + number(t);
        break;
      case AodOpKind::Shift:
        text = "AOD_SHIFT dx=" + number(op.dx, 4) + " dy=" + number(op.dy, 4) +
               " t=" + number(t) + " dur=" + number(op.duration);
        break;
      case AodOpKind::Deactivate:
        text = "AOD_DEACT cols=" + list(op.cols) + " rows=" + list(op.rows) +
               " t=" + number(t);
        break;
      }
      lines.push_back({t, i, k, std::move(text)});
    }
  }
  std::ranges::stable_sort(lines, [](const Line& a, const Line& b) {
    return std::tie(a.time, a.op, a.sub) < std::tie(b.time, b.op, b.sub);
  });
  std::string out;
  for (const auto& line : lines) {
    out += line.text;
    out += '\n';
  }
  return out;
}

std::string formatReport(const MappingResult& result, ReportFormat format,
                         std::span<const SweepEntry> entries) {
  const auto& m = result.metrics;
  std::ostringstream out;
  if (format == ReportFormat::KeyValue) {
    out << "mode=" << toString(result.params.mode) << '\n'
        << "alpha=" << number(result.params.alpha, 4) << '\n'
        << "circuit_qubits=" << result.native.n << '\n'
        << "atoms=" << result.initialState.atoms() << '\n'
        << "native_gates=" << result.native.gates.size() << '\n'
        << "swaps=" << result.swaps << '\n'
        << "moves=" << result.moves << '\n'
        << "move_groups=" << result.program.moveGroupCount() << '\n'
        << "cz_mapped=" << result.program.controlledZCount() << '\n'
        << "T_original=" << number(result.original.makespan) << '\n'
        << "T=" << number(m.makespan) << '\n'
        << "t_idle=" << number(m.idle) << '\n'
        << "P=" << std::setprecision(12) << std::scientific << m.probability
        << std::defaultfloat << '\n'
        << "delta_F=" << number(m.deltaF, 9) << '\n'
        << "delta_CZ=" << m.deltaCz << '\n'
        << "delta_T=" << number(m.deltaT) << '\n';
    for (const auto& e : entries) {
      out << "sweep alpha=" << number(e.alpha, 4)
          << " delta_F=" << number(e.result.metrics.deltaF, 9)
          << " delta_CZ=" << e.result.metrics.deltaCz
          << " delta_T=" << number(e.result.metrics.deltaT) << '\n';
    }
    return out.str();
  }

  const auto row = [&](std::string_view mode, double alpha, const Metrics& mm,
                       bool best) {
    out << std::left << std::setw(14) << mode << std::right << std::setw(8)
        << number(alpha, 2) << std::setw(10) << mm.deltaCz << std::setw(16)
        << number(mm.deltaT, 2) << std::setw(14) << number(mm.deltaF, 6)
        << (best ? "  *" : "") << '\n';
  };
  out << std::left << std::setw(14) << "mode" << std::right << std::setw(8)
      << "alpha" << std::setw(10) << "dCZ" << std::setw(16) << "dT[us]"
      << std::setw(14) << "dF" << '\n';
  if (entries.empty()) {
    row(toString(result.params.mode), result.params.alpha, m, false);
  } else {
    for (const auto& e : entries) {
      row("hybrid", e.alpha, e.result.metrics, &e.result == &result);
    }
  }
  out << "T=" << number(m.makespan, 2) << "us t_idle=" << number(m.idle, 2)
      << "us P=" << std::setprecision(6) << std::scientific << m.probability
      << std::defaultfloat << " swaps=" << result.swaps
      << " moves=" << result.moves << '\n';
  return out.str();
}

} // namespace hmap
