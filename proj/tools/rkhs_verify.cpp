// rkhs-verify: run verification scenarios and suites.
//
//   rkhs-verify <task> --config scenario.json [--out report.json] [--seed N] [--tol name=value]...
//   rkhs-verify suite --config manifest.json [--out aggregate.json]
//
// Without --out, reports go to $RKHS_OUTPUT_DIR/<scenario_id>.json when the
// variable is set, and to stdout otherwise.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "rkhs/error.hpp"
#include "rkhs/scenario.hpp"

namespace {

constexpr const char* kOutputDirEnv = "RKHS_OUTPUT_DIR";

bool write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path);
  if (!out) {
    std::cerr << "rkhs-verify: cannot write " << path << "\n";
    return false;
  }
  out << text;
  return static_cast<bool>(out);
}

std::optional<std::filesystem::path> default_output(const std::string& stem) {
  const char* dir = std::getenv(kOutputDirEnv);
  if (!dir || !*dir) return std::nullopt;
  return std::filesystem::path(dir) / (stem + ".json");
}

rkhs::Overrides parse_overrides(const std::optional<std::uint64_t>& seed, const std::vector<std::string>& tols) {
  rkhs::Overrides o;
  o.seed = seed;
  for (const auto& t : tols) {
    const auto eq = t.find('=');
    if (eq == std::string::npos || eq == 0) throw rkhs::InvalidInput("--tol expects name=value, got \"" + t + "\"");
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(t.substr(eq + 1), &used);
    } catch (const std::exception&) {
      throw rkhs::InvalidInput("--tol value is not a number: \"" + t + "\"");
    }
    if (used != t.size() - eq - 1) throw rkhs::InvalidInput("--tol value is not a number: \"" + t + "\"");
    o.tolerances[t.substr(0, eq)] = v;
  }
  return o;
}

void print_error(const std::string& type, const std::string& message) {
  nlohmann::json err{{"error", {{"type", type}, {"message", message}}}, {"exit_code", rkhs::kExitInvalid}};
  std::cout << err.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verify operator-theoretic properties on graded truncations of kernel spaces"};
  app.require_subcommand(1);

  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> tols;

  const std::vector<std::pair<std::string, std::string>> tasks{
      {"purity", "purity verdicts of multiplier adjoints"},
      {"identity", "ball defect and Chen identities"},
      {"cnp", "complete Nevanlinna-Pick series certificate"},
      {"bcl", "BCL pairs and their isometric dilations"},
      {"colligation", "transfer functions of unitary colligations"},
      {"decay", "decay curves of adjoint compressions"},
      {"witness", "wandering vectors in invariant subspaces"},
      {"suite", "run a manifest of scenarios"},
  };
  for (const auto& [name, help] : tasks) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config, "scenario config (or suite manifest)")->required();
    sub->add_option("--out", out, "output path");
    sub->add_option("--seed", seed, "override the config seed");
    sub->add_option("--tol", tols, "override a tolerance, name=value")->take_all();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : rkhs::kExitInvalid;
  }
  const std::string task = app.get_subcommands().front()->get_name();

  rkhs::Overrides overrides;
  try {
    overrides = parse_overrides(seed, tols);
  } catch (const rkhs::Error& e) {
    print_error(e.kind(), e.what());
    return rkhs::kExitInvalid;
  }

  if (task == "suite") {
    rkhs::SuiteOutcome s;
    try {
      s = rkhs::run_suite(config, overrides);
    } catch (const rkhs::Error& e) {
      print_error(e.kind(), e.what());
      return rkhs::kExitInvalid;
    }
    std::optional<std::filesystem::path> path;
    if (!out.empty()) path = out;
    else path = default_output("suite");
    if (path) {
      auto csv = *path;
      csv.replace_extension(".csv");
      if (!write_text(*path, s.aggregate.dump(2) + "\n") || !write_text(csv, s.summary_csv)) return rkhs::kExitInvalid;
      std::cout << s.summary_csv;
    } else {
      std::cout << s.aggregate.dump(2) << "\n";
    }
    return s.exit_code;
  }

  overrides.task = task;
  const rkhs::RunOutcome r = rkhs::run_config_file(config, overrides);
  std::optional<std::filesystem::path> path;
  if (!out.empty()) {
    path = out;
  } else if (r.report.contains("scenario_id") && r.report.at("scenario_id").is_string()) {
    path = default_output(r.report.at("scenario_id").get<std::string>());
  }
  const std::string text = r.report.dump(2) + "\n";
  if (path) {
    if (!write_text(*path, text)) return rkhs::kExitInvalid;
  } else {
    std::cout << text;
  }
  return r.exit_code;
}
