#pragma once

#include <iosfwd>
#include <optional>

#include <json.hpp>

#include "cli/config.hpp"
#include "cli/output.hpp"

namespace lcft::cli {

enum ExitCode : int { kExitOk = 0, kExitValidation = 2, kExitPrecondition = 3, kExitConvergence = 4 };

struct RunOutput {
  nlohmann::json record;
  std::optional<Table> curve;
  std::string curve_title;
};

/// Executes the command. Library errors propagate unchanged.
RunOutput execute(const RunConfig& config);

/// The record without the fields that legitimately differ between identical
/// runs (runtime and thread count).
nlohmann::json comparable(nlohmann::json record);

/// Runs, writes the JSON record to `out` and to config.output, curves to
/// config.csv / config.svg, and maps errors to exit codes with a message on `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace lcft::cli
