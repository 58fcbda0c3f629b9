#pragma once

// Scenario configs, run reports and suites for the verification CLI.
//
// Exit codes: 0 every property holds, 1 a property was violated, 2 invalid
// input (the report then carries {"error": {"type", "message"}}).

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "json.hpp"

namespace rkhs {

using json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";
inline constexpr const char* kLibraryVersion = RKHS_VERSION;

enum ExitCode : int { kExitPass = 0, kExitViolation = 1, kExitInvalid = 2 };

/// Default tolerances by name; --tol overrides must use one of these names.
const std::map<std::string, double>& default_tolerances();

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::map<std::string, double> tolerances;
  std::optional<std::string> task;  // subcommand; must match the config's task
};

struct RunOutcome {
  int exit_code = kExitPass;
  json report;
};

/// Runs a parsed config object. Never throws; failures become exit codes.
RunOutcome run_config(const json& config, const Overrides& overrides = {});
RunOutcome run_config_file(const std::filesystem::path& path, const Overrides& overrides = {});

struct SuiteOutcome {
  int exit_code = kExitPass;
  json aggregate;
  std::string summary_csv;
};

/// Manifest: {"scenarios": [{"config": path, "expect_exit": int}]}, paths
/// relative to the manifest. Exit 0 iff every scenario exits as expected.
SuiteOutcome run_suite(const std::filesystem::path& manifest, const Overrides& overrides = {});

/// Copy with every "timing" member removed, recursively.
json strip_timing(const json& j);

}  // namespace rkhs
