#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "subact/cli/report_json.hpp"
#include "subact/cli/scenario.hpp"
#include "subact/cli/search.hpp"

namespace {

namespace fs = std::filesystem;
using subact::cli::json;

enum Exit : int { kOk = 0, kViolation = 1, kUsage = 2, kCapacity = 3 };

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw subact::ValidationError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_output(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw subact::ValidationError("cannot write '" + out + "'");
  f << text;
}

std::string env_caps() {
  const char* v = std::getenv("SUBACT_CAPS");
  return v ? v : "";
}

// Counterexample replays go next to --out, or into the working directory.
std::string counterexample_path(const std::string& out, const std::string& input, std::size_t i) {
  const std::string base = out.empty() ? fs::path(input).stem().string() : out;
  return base + ".counterexample-" + std::to_string(i) + ".json";
}

int cmd_run(const std::string& input, const std::string& out) {
  const auto scenario = subact::cli::parse_scenario(read_file(input), env_caps());
  const auto outcome = subact::cli::run(scenario);
  write_output(out, outcome.report.dump(2) + "\n");
  for (std::size_t i = 0; i < outcome.counterexamples.size(); ++i) {
    const std::string path = counterexample_path(out, input, i);
    write_output(path, outcome.counterexamples[i].dump(2) + "\n");
    std::cerr << "counterexample written to " << path << "\n";
  }
  return outcome.violation ? kViolation : kOk;
}

int cmd_search(const subact::cli::SearchOptions& opt, const std::string& out) {
  const auto outcome = subact::cli::search(opt, env_caps());
  write_output(out, outcome.report.dump(2) + "\n");
  return outcome.violation ? kViolation : kOk;
}

int cmd_report(const std::string& input, const std::string& format, const std::string& out) {
  const std::string text = input.empty() ? std::string(std::istreambuf_iterator<char>(std::cin), {}) : read_file(input);
  json report;
  try {
    report = json::parse(text);
  } catch (const json::parse_error& e) {
    throw subact::ValidationError(std::string("report: malformed JSON: ") + e.what());
  }
  if (format == "json") {
    write_output(out, report.dump(2) + "\n");
  } else {
    write_output(out, subact::cli::report_csv(report));
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"subact: symmetry sets, invariant submodular functions and their checkers"};
  app.set_version_flag("--version", subact::cli::kVersion);
  app.require_subcommand(1);

  std::string out;

  std::string scenario_path;
  auto* run = app.add_subcommand("run", "Run every task of a scenario file");
  run->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  run->add_option("--out", out, "Write the report here instead of stdout");

  subact::cli::SearchOptions opt;
  auto* search = app.add_subcommand("search", "Scan a family of instances against a predicate");
  search->add_option("--family", opt.family, "Instance family, optionally with :size")->required();
  search->add_option("--predicate", opt.predicate, "Statement id to evaluate")->required();
  search->add_option("--budget", opt.budget, "Number of instances")->check(CLI::PositiveNumber);
  search->add_option("--seed", opt.seed, "Random seed");
  search->add_option("--cursor", opt.cursor, "First instance index");
  search->add_option("--out", out, "Write the report here instead of stdout");

  std::string report_in, format = "json";
  auto* report = app.add_subcommand("report", "Reformat a run or search report");
  report->add_option("--in", report_in, "Report JSON file (default stdin)");
  report->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  report->add_option("--out", out, "Write here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run) return cmd_run(scenario_path, out);
    if (*search) return cmd_search(opt, out);
    return cmd_report(report_in, format, out);
  } catch (const subact::CapacityError& e) {
    std::cerr << "capacity: " << e.what() << "\n";
    return kCapacity;
  } catch (const subact::InvariantError& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return kViolation;
  } catch (const subact::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
