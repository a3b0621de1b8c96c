#include "hmap/circuit.hpp"

#include "hmap/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace hmap {

namespace {
constexpr double DIAGONAL_TOLERANCE = 1e-9;
} // namespace

std::string_view toString(GateKind kind) {
  switch (kind) {
  case GateKind::U3:
    return "U3";
  case GateKind::H:
    return "H";
  case GateKind::CZ:
    return "CZ";
  case GateKind::C2Z:
    return "C2Z";
  case GateKind::C3Z:
    return "C3Z";
  case GateKind::Swap:
    return "SWAP";
  case GateKind::CX:
    return "CX";
  case GateKind::C2X:
    return "C2X";
  case GateKind::C3X:
    return "C3X";
  }
  return "?";
}

std::size_t arity(GateKind kind) {
  switch (kind) {
  case GateKind::U3:
  case GateKind::H:
    return 1;
  case GateKind::CZ:
  case GateKind::CX:
  case GateKind::Swap:
    return 2;
  case GateKind::C2Z:
  case GateKind::C2X:
    return 3;
  case GateKind::C3Z:
  case GateKind::C3X:
    return 4;
  }
  return 0;
}

bool isNative(GateKind kind) {
  return kind == GateKind::U3 || kind == GateKind::H || isControlledZ(kind);
}

bool isControlledZ(GateKind kind) {
  return kind == GateKind::CZ || kind == GateKind::C2Z || kind == GateKind::C3Z;
}

GateKind controlledZ(std::size_t nQubits) {
  switch (nQubits) {
  case 2:
    return GateKind::CZ;
  case 3:
    return GateKind::C2Z;
  case 4:
    return GateKind::C3Z;
  default:
    throw std::invalid_argument("no controlled-Z kind on " +
                                std::to_string(nQubits) + " qubits");
  }
}

bool GateNode::isDiagonal() const {
  if (isControlledZ(kind)) {
    return true;
  }
  if (kind == GateKind::U3) {
    return std::abs(std::remainder(params[0], 2 * std::numbers::pi)) <=
           DIAGONAL_TOLERANCE;
  }
  return false;
}

GateNode& QuantumCircuit::add(GateKind kind, std::vector<Qubit> qubits,
                              std::array<double, 3> params) {
  if (qubits.size() != arity(kind)) {
    throw std::invalid_argument(std::string(toString(kind)) + " expects " +
                                std::to_string(arity(kind)) + " qubits");
  }
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if (qubits[i] >= n) {
      throw std::out_of_range("qubit " + std::to_string(qubits[i]) +
                              " outside register of size " + std::to_string(n));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (qubits[i] == qubits[j]) {
        throw std::invalid_argument("duplicate qubit " +
                                    std::to_string(qubits[i]) + " in " +
                                    std::string(toString(kind)));
      }
    }
  }
  GateNode gate{.kind = kind,
                .qubits = std::move(qubits),
                .params = params,
                .id = gates.size()};
  gates.push_back(std::move(gate));
  return gates.back();
}

std::size_t QuantumCircuit::count(GateKind kind) const {
  return static_cast<std::size_t>(std::ranges::count_if(
      gates, [kind](const GateNode& g) { return g.kind == kind; }));
}

// ---------------------------------------------------------------------------
// parser

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

// Recursive-descent evaluator for gate parameters: numbers, pi, + - * / ( ).
class ExpressionParser {
public:
  ExpressionParser(std::string_view text, std::size_t line)
      : text_(text), line_(line) {}

  double parse() {
    const double value = expression();
    skipSpace();
    if (pos_ != text_.size()) {
      fail("unexpected '" + std::string(text_.substr(pos_)) + "'");
    }
    return value;
  }

private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("bad parameter expression: " + msg, line_);
  }

  void skipSpace() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skipSpace();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  double expression() {
    double value = term();
    while (true) {
      if (accept('+')) {
        value += term();
      } else if (accept('-')) {
        value -= term();
      } else {
        return value;
      }
    }
  }

  double term() {
    double value = unary();
    while (true) {
      if (accept('*')) {
        value *= unary();
      } else if (accept('/')) {
        value /= unary();
      } else {
        return value;
      }
    }
  }

  double unary() {
    if (accept('-')) {
      return -unary();
    }
    if (accept('+')) {
      return unary();
    }
    return primary();
  }

  double primary() {
    skipSpace();
    if (accept('(')) {
      const double value = expression();
      if (!accept(')')) {
        fail("missing ')'");
      }
      return value;
    }
    if (text_.substr(pos_).starts_with("pi")) {
      pos_ += 2;
      return std::numbers::pi;
    }
    const auto* begin = text_.data() + pos_;
    const auto* end = text_.data() + text_.size();
    double value = 0;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr == begin) {
      fail("expected number at '" + std::string(text_.substr(pos_)) + "'");
    }
    pos_ += static_cast<std::size_t>(ptr - begin);
    return value;
  }
};

struct Register {
  std::size_t offset;
  std::size_t size;
};

std::size_t parseIndex(std::string_view s, std::size_t line) {
  s = trim(s);
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError("bad index '" + std::string(s) + "'", line);
  }
  return value;
}

std::vector<std::string_view> splitTopLevel(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(' || s[i] == '[') {
      ++depth;
    } else if (s[i] == ')' || s[i] == ']') {
      --depth;
    } else if (s[i] == sep && depth == 0) {
      parts.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  parts.push_back(trim(s.substr(start)));
  return parts;
}

const std::map<std::string, GateKind, std::less<>>& gateNames() {
  static const std::map<std::string, GateKind, std::less<>> names{
      {"u3", GateKind::U3},   {"u", GateKind::U3},     {"h", GateKind::H},
      {"cx", GateKind::CX},   {"cz", GateKind::CZ},    {"ccx", GateKind::C2X},
      {"ccz", GateKind::C2Z}, {"cccx", GateKind::C3X}, {"cccz", GateKind::C3Z},
  };
  return names;
}

struct Statement {
  std::string text;
  std::size_t line;
};

std::vector<Statement> splitStatements(std::string_view text) {
  std::vector<Statement> statements;
  std::string current;
  std::size_t currentLine = 0;
  std::size_t line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') {
        ++i;
      }
      continue;
    }
    if (c == '\n') {
      ++line;
    }
    if (c == ';') {
      statements.push_back({std::string(trim(current)), currentLine});
      current.clear();
      currentLine = 0;
    } else {
      if (currentLine == 0 && !std::isspace(static_cast<unsigned char>(c))) {
        currentLine = line;
      }
      current.push_back(c);
    }
    ++i;
  }
  if (!trim(current).empty()) {
    throw ParseError("missing ';' after '" + std::string(trim(current)) + "'",
                     currentLine);
  }
  return statements;
}

} // namespace

QuantumCircuit parseCircuit(std::string_view text) {
  std::map<std::string, Register, std::less<>> registers;
  QuantumCircuit circuit;
  struct PendingGate {
    GateKind kind;
    std::vector<Qubit> qubits;
    std::array<double, 3> params;
    std::size_t line;
  };
  std::vector<PendingGate> pending;

  for (const auto& [stmt, line] : splitStatements(text)) {
    if (stmt.empty()) {
      continue;
    }
    std::string_view s = stmt;
    std::size_t nameEnd = 0;
    while (nameEnd < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[nameEnd])) != 0 ||
            s[nameEnd] == '_')) {
      ++nameEnd;
    }
    const std::string_view name = s.substr(0, nameEnd);
    std::string_view rest = trim(s.substr(nameEnd));

    if (name == "OPENQASM" || name == "include" || name == "creg" ||
        name == "barrier" || name == "measure") {
      continue;
    }
    if (name == "qreg") {
      const auto open = rest.find('[');
      const auto close = rest.find(']');
      if (open == std::string_view::npos || close == std::string_view::npos ||
          close < open) {
        throw ParseError("malformed qreg declaration", line);
      }
      const std::string regName(trim(rest.substr(0, open)));
      if (regName.empty() || registers.contains(regName)) {
        throw ParseError("invalid or duplicate register '" + regName + "'",
                         line);
      }
      const auto size = parseIndex(rest.substr(open + 1, close - open - 1), line);
      registers.emplace(regName, Register{circuit.n, size});
      circuit.n += size;
      continue;
    }

    const auto it = gateNames().find(name);
    if (it == gateNames().end()) {
      throw ParseError("unsupported gate '" + std::string(name) + "'", line);
    }
    const GateKind kind = it->second;

    std::array<double, 3> params{};
    if (!rest.empty() && rest.front() == '(') {
      int depth = 0;
      std::size_t close = 0;
      for (std::size_t i = 0; i < rest.size(); ++i) {
        if (rest[i] == '(') {
          ++depth;
        } else if (rest[i] == ')' && --depth == 0) {
          close = i;
          break;
        }
      }
      if (close == 0) {
        throw ParseError("missing ')'", line);
      }
      const auto args = splitTopLevel(rest.substr(1, close - 1), ',');
      if (kind != GateKind::U3 || args.size() != 3) {
        throw ParseError("gate '" + std::string(name) +
                             "' takes 3 parameters only if it is u3/u",
                         line);
      }
      for (std::size_t k = 0; k < 3; ++k) {
        params[k] = ExpressionParser(args[k], line).parse();
      }
      rest = trim(rest.substr(close + 1));
    } else if (kind == GateKind::U3) {
      throw ParseError("u3 requires 3 parameters", line);
    }

    std::vector<Qubit> qubits;
    for (const auto arg : splitTopLevel(rest, ',')) {
      const auto open = arg.find('[');
      const auto close = arg.find(']');
      if (open == std::string_view::npos || close == std::string_view::npos ||
          close != arg.size() - 1) {
        throw ParseError("expected qubit reference, got '" + std::string(arg) +
                             "'",
                         line);
      }
      const auto regName = trim(arg.substr(0, open));
      const auto reg = registers.find(regName);
      if (reg == registers.end()) {
        throw ParseError("unknown register '" + std::string(regName) + "'",
                         line);
      }
      const auto index = parseIndex(arg.substr(open + 1, close - open - 1), line);
      if (index >= reg->second.size) {
        throw ParseError("qubit index " + std::to_string(index) +
                             " out of range for register '" +
                             std::string(regName) + "'",
                         line);
      }
      qubits.push_back(static_cast<Qubit>(reg->second.offset + index));
    }
    if (qubits.size() != arity(kind)) {
      throw ParseError("gate '" + std::string(name) + "' expects " +
                           std::to_string(arity(kind)) + " qubits",
                       line);
    }
    for (std::size_t i = 0; i < qubits.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (qubits[i] == qubits[j]) {
          throw ParseError("duplicate qubit in '" + std::string(name) + "'",
                           line);
        }
      }
    }
    pending.push_back({kind, std::move(qubits), params, line});
  }

  // registers may be declared after use in principle; add gates once n is known
  for (auto& g : pending) {
    circuit.add(g.kind, std::move(g.qubits), g.params);
  }
  return circuit;
}

QuantumCircuit loadCircuit(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open circuit file '" + path + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parseCircuit(buffer.str());
}

QuantumCircuit decomposeToNative(const QuantumCircuit& c) {
  QuantumCircuit out;
  out.n = c.n;
  for (const auto& g : c.gates) {
    switch (g.kind) {
    case GateKind::CX:
    case GateKind::C2X:
    case GateKind::C3X: {
      const Qubit target = g.qubits.back();
      out.add(GateKind::H, {target});
      out.add(controlledZ(g.qubits.size()), g.qubits);
      out.add(GateKind::H, {target});
      break;
    }
    case GateKind::Swap:
      throw std::invalid_argument("SWAP is not a source-level gate");
    default:
      out.add(g.kind, g.qubits, g.params);
      break;
    }
  }
  return out;
}

bool commutes(const GateNode& a, const GateNode& b) {
  const bool shared = std::ranges::any_of(a.qubits, [&b](Qubit q) {
    return std::ranges::find(b.qubits, q) != b.qubits.end();
  });
  if (!shared) {
    return true;
  }
  return a.isDiagonal() && b.isDiagonal();
}

std::size_t DependencyDag::edgeCount() const {
  std::size_t total = 0;
  for (const auto& s : successors) {
    total += s.size();
  }
  return total;
}

bool DependencyDag::hasEdge(std::size_t from, std::size_t to) const {
  return std::ranges::find(successors.at(from), to) != successors[from].end();
}

DependencyDag buildDag(const QuantumCircuit& c) {
  DependencyDag dag;
  dag.size = c.gates.size();
  dag.predecessors.resize(dag.size);
  dag.successors.resize(dag.size);

  // Per qubit: the last non-diagonal gate and the run of diagonal gates after
  // it. Diagonal gates commute among each other, so a diagonal gate only
  // depends on the last non-diagonal one, while a non-diagonal gate depends on
  // the whole run (or on the previous non-diagonal gate if the run is empty).
  constexpr auto NONE = static_cast<std::size_t>(-1);
  std::vector<std::size_t> lastBlocking(c.n, NONE);
  std::vector<std::vector<std::size_t>> diagonalRun(c.n);

  auto addEdge = [&dag](std::size_t from, std::size_t to) {
    auto& preds = dag.predecessors[to];
    if (std::ranges::find(preds, from) == preds.end()) {
      preds.push_back(from);
      dag.successors[from].push_back(to);
    }
  };

  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const auto& g = c.gates[i];
    const bool diagonal = g.isDiagonal();
    for (const Qubit q : g.qubits) {
      if (diagonal) {
        if (lastBlocking[q] != NONE) {
          addEdge(lastBlocking[q], i);
        }
        diagonalRun[q].push_back(i);
      } else {
        if (diagonalRun[q].empty()) {
          if (lastBlocking[q] != NONE) {
            addEdge(lastBlocking[q], i);
          }
        } else {
          for (const auto d : diagonalRun[q]) {
            addEdge(d, i);
          }
          diagonalRun[q].clear();
        }
        lastBlocking[q] = i;
      }
    }
  }
  for (auto& s : dag.successors) {
    std::ranges::sort(s);
  }
  for (auto& p : dag.predecessors) {
    std::ranges::sort(p);
  }
  return dag;
}

} // namespace hmap
