#include "hmap/hardware.hpp"

#include "hmap/errors.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hmap {

void HardwareSpec::validate() const {
  auto require = [](bool ok, const char* msg) {
    if (!ok) {
      throw std::invalid_argument(msg);
    }
  };
  require(l > 0, "lattice side l must be positive");
  require(d > 0, "lattice constant d must be positive");
  require(rInt > 0, "r_int must be positive");
  require(rRestr >= rInt, "r_restr must be at least r_int");
  for (const double f : {fCz, fH, fShuttle}) {
    require(f > 0 && f <= 1, "fidelities must lie in (0, 1]");
  }
  for (const double t : {tU3, tCz, tCcz, tCccz, v, tAct, tDeact, t1, t2}) {
    require(t > 0, "times and speed must be positive");
  }
}

double HardwareSpec::gateTime(std::size_t nQubits) const {
  switch (nQubits) {
  case 1:
    return tU3;
  case 2:
    return tCz;
  case 3:
    return tCcz;
  case 4:
    return tCccz;
  default:
    throw std::invalid_argument("no gate time for " + std::to_string(nQubits) +
                                "-qubit gates");
  }
}

HardwareSpec hardwarePreset(std::string_view name) {
  HardwareSpec spec;
  spec.l = 15;
  spec.d = 3.0;
  spec.nAtoms = 200;
  spec.tU3 = 0.5;
  spec.tCz = 0.2;
  spec.tCcz = 0.4;
  spec.tCccz = 0.6;
  spec.t1 = 1e8;
  spec.t2 = 1.5e6;
  if (name == "shuttling") {
    spec.rInt = spec.rRestr = 2.0;
    spec.fCz = 0.994;
    spec.fH = 0.995;
    spec.fShuttle = 1.0;
    spec.v = 0.55;
    spec.tAct = spec.tDeact = 20.0;
  } else if (name == "gate") {
    spec.rInt = spec.rRestr = 4.5;
    spec.fCz = 0.9995;
    spec.fH = 0.9999;
    spec.fShuttle = 0.999;
    spec.v = 0.2;
    spec.tAct = spec.tDeact = 50.0;
  } else if (name == "mixed") {
    spec.rInt = spec.rRestr = 2.5;
    spec.fCz = 0.995;
    spec.fH = 0.999;
    spec.fShuttle = 0.9999;
    spec.v = 0.3;
    spec.tAct = spec.tDeact = 40.0;
  } else {
    throw std::invalid_argument("unknown hardware preset '" +
                                std::string(name) + "'");
  }
  return spec;
}

std::vector<std::string> presetNames() { return {"shuttling", "gate", "mixed"}; }

namespace {

using Setter = std::function<void(HardwareSpec&, std::string_view)>;

double toDouble(std::string_view value) {
  double out = 0;
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw std::invalid_argument("not a number: '" + std::string(value) + "'");
  }
  return out;
}

std::size_t toSize(std::string_view value) {
  std::size_t out = 0;
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw std::invalid_argument("not a non-negative integer: '" +
                                std::string(value) + "'");
  }
  return out;
}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table{
      {"l", [](HardwareSpec& s, std::string_view v) { s.l = toSize(v); }},
      {"d", [](HardwareSpec& s, std::string_view v) { s.d = toDouble(v); }},
      {"r_int", [](HardwareSpec& s, std::string_view v) { s.rInt = toDouble(v); }},
      {"r_restr",
       [](HardwareSpec& s, std::string_view v) { s.rRestr = toDouble(v); }},
      {"F_cz", [](HardwareSpec& s, std::string_view v) { s.fCz = toDouble(v); }},
      {"F_h", [](HardwareSpec& s, std::string_view v) { s.fH = toDouble(v); }},
      {"F_shuttle",
       [](HardwareSpec& s, std::string_view v) { s.fShuttle = toDouble(v); }},
      {"t_u3", [](HardwareSpec& s, std::string_view v) { s.tU3 = toDouble(v); }},
      {"t_cz", [](HardwareSpec& s, std::string_view v) { s.tCz = toDouble(v); }},
      {"t_ccz", [](HardwareSpec& s, std::string_view v) { s.tCcz = toDouble(v); }},
      {"t_cccz",
       [](HardwareSpec& s, std::string_view v) { s.tCccz = toDouble(v); }},
      {"v", [](HardwareSpec& s, std::string_view v) { s.v = toDouble(v); }},
      {"t_act", [](HardwareSpec& s, std::string_view v) { s.tAct = toDouble(v); }},
      {"t_deact",
       [](HardwareSpec& s, std::string_view v) { s.tDeact = toDouble(v); }},
      {"T1", [](HardwareSpec& s, std::string_view v) { s.t1 = toDouble(v); }},
      {"T2", [](HardwareSpec& s, std::string_view v) { s.t2 = toDouble(v); }},
      {"N", [](HardwareSpec& s, std::string_view v) { s.nAtoms = toSize(v); }},
  };
  return table;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

} // namespace

HardwareSpec parseHardwareConfig(std::string_view text) {
  HardwareSpec spec;
  std::set<std::string, std::less<>> seen;
  std::size_t lineNo = 0;
  while (!text.empty()) {
    ++lineNo;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{}
                                        : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("expected 'key = value'", lineNo);
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) {
      throw ParseError("unknown hardware key '" + std::string(key) + "'",
                       lineNo);
    }
    if (!seen.emplace(key).second) {
      throw ParseError("repeated hardware key '" + std::string(key) + "'",
                       lineNo);
    }
    try {
      it->second(spec, value);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), lineNo);
    }
  }
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid hardware config: ") + e.what());
  }
  return spec;
}

HardwareSpec loadHardware(const std::string& presetOrPath) {
  for (const auto& name : presetNames()) {
    if (name == presetOrPath) {
      return hardwarePreset(name);
    }
  }
  std::ifstream in(presetOrPath);
  if (!in) {
    throw ParseError("no preset or readable file named '" + presetOrPath + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parseHardwareConfig(buffer.str());
}

std::string formatHardwareConfig(const HardwareSpec& spec) {
  // shortest text that parses back to the same double
  auto num = [](double value) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), res.ptr);
  };
  std::ostringstream out;
  out << "l = " << spec.l << '\n'
      << "d = " << num(spec.d) << '\n'
      << "r_int = " << num(spec.rInt) << '\n'
      << "r_restr = " << num(spec.rRestr) << '\n'
      << "F_cz = " << num(spec.fCz) << '\n'
      << "F_h = " << num(spec.fH) << '\n'
      << "F_shuttle = " << num(spec.fShuttle) << '\n'
      << "t_u3 = " << num(spec.tU3) << '\n'
      << "t_cz = " << num(spec.tCz) << '\n'
      << "t_ccz = " << num(spec.tCcz) << '\n'
      << "t_cccz = " << num(spec.tCccz) << '\n'
      << "v = " << num(spec.v) << '\n'
      << "t_act = " << num(spec.tAct) << '\n'
      << "t_deact = " << num(spec.tDeact) << '\n'
      << "T1 = " << num(spec.t1) << '\n'
      << "T2 = " << num(spec.t2) << '\n'
      << "N = " << spec.nAtoms << '\n';
  return out.str();
}

} // namespace hmap
