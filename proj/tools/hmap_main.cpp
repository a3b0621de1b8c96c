#include "hmap/errors.hpp"
#include "hmap/hardware.hpp"
#include "hmap/mapper.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int EXIT_PARSE = 2;
constexpr int EXIT_CAPACITY = 3;
constexpr int EXIT_ROUTING = 4;

std::vector<double> parseAlphas(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item == "inf") {
      out.push_back(std::numeric_limits<double>::infinity());
      continue;
    }
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size() || v < 0) {
      throw std::invalid_argument("bad alpha '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

void writeFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write '" + path + "'");
  }
  out << text;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid SWAP / shuttling mapper for neutral-atom hardware"};
  std::string circuitPath;
  std::string hardware = "mixed";
  std::string modeText = "hybrid";
  std::string sweepText;
  std::string outPath;
  std::string formatText = "table";
  hmap::MapperParams params;

  app.add_option("--circuit", circuitPath, "QASM-2 subset circuit file")->required();
  app.add_option("--hardware", hardware,
                 "preset (shuttling, gate, mixed) or key-value config file")
      ->capture_default_str();
  app.add_option("--mode", modeText, "gate-only, shuttle-only or hybrid")
      ->check(CLI::IsMember({"gate-only", "shuttle-only", "hybrid"}))
      ->capture_default_str();
  app.add_option("--alpha", params.alpha, "alpha_g / alpha_s for hybrid mode")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--sweep", sweepText,
                 "comma-separated alphas for a hybrid sweep, e.g. "
                 "0.9,0.95,1,1.05,1.1");
  app.add_option("--lookahead", params.lookahead, "lookahead depth")
      ->capture_default_str();
  app.add_option("--lambda-t", params.lambdaT, "decay of the SWAP cost")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--w-l", params.wL, "lookahead weight")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--w-t", params.wT, "parallel shuttling time weight")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--window", params.window, "recent moves considered for parallelism")
      ->capture_default_str();
  app.add_option("--seed", params.seed, "reserved for tie shuffling; unused by default")
      ->capture_default_str();
  app.add_option("--out", outPath,
                 "program output path; the report goes to <out>.report");
  app.add_option("--report-format", formatText, "table or kv")
      ->check(CLI::IsMember({"table", "kv"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : EXIT_PARSE;
  }

  try {
    params.mode = hmap::parseMode(modeText);
    const auto format = formatText == "kv" ? hmap::ReportFormat::KeyValue
                                           : hmap::ReportFormat::Table;
    const auto circuit = hmap::loadCircuit(circuitPath);
    const auto spec = hmap::loadHardware(hardware);

    const auto started = std::chrono::steady_clock::now();
    std::string program;
    std::string report;
    if (!sweepText.empty()) {
      if (params.mode != hmap::Mode::Hybrid) {
        throw hmap::ParseError("--sweep requires --mode hybrid");
      }
      const auto alphas = parseAlphas(sweepText);
      const auto result = hmap::sweep(circuit, spec, params, alphas);
      program = hmap::formatProgram(result.bestResult());
      report = hmap::formatReport(result.bestResult(), format, result.entries);
    } else {
      const auto result = hmap::mapCircuit(circuit, spec, params);
      program = hmap::formatProgram(result);
      report = hmap::formatReport(result, format);
    }
    const double runtime = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - started)
                               .count();

    if (!outPath.empty()) {
      writeFile(outPath, program);
      writeFile(outPath + ".report", report);
    }
    std::cout << report << "runtime=" << runtime << "s\n";
    return 0;
  } catch (const hmap::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return EXIT_PARSE;
  } catch (const hmap::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return EXIT_CAPACITY;
  } catch (const hmap::RoutingError& e) {
    std::cerr << "routing error: " << e.what() << '\n';
    return EXIT_ROUTING;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return EXIT_PARSE;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
