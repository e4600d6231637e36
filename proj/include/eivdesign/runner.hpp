#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "eivdesign/scenario.hpp"

namespace eivdesign {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

enum class OutputFormat { Json, Csv };
OutputFormat parse_format(std::string_view name);

struct RunOptions {
  OutputFormat format = OutputFormat::Json;
  /// Written atomically when set. For tables a companion `<path>.check.csv`
  /// holds the per-cell comparison against the reference values.
  std::optional<std::string> output_path;
  /// Stamp provenance.generated_at. Everything else in the payload is a pure
  /// function of the scenario.
  bool timestamp = true;
};

struct RunResult {
  int exit_code = kExitOk;
  nlohmann::json payload;
  /// The payload rendered in the requested format.
  std::string text;
};

std::string_view library_version();

/// Executes the scenario's task. Never throws for library errors: config
/// problems give exit 2, numerical failures exit 3, both with an "error"
/// object in the payload. A Violated verification verdict is still exit 0.
RunResult run(const Scenario& scenario, const RunOptions& options = {});

/// Write to a sibling temporary file, then rename over `path`.
void write_atomic(const std::string& path, std::string_view content);

}  // namespace eivdesign
