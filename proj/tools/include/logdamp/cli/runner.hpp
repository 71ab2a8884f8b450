#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "logdamp/cli/config.hpp"

namespace logdamp::cli {

/// How `measured` is judged against `predicted` and `tolerance`.
enum class Relation {
  Within,    ///< |measured - predicted| <= tolerance
  AtMost,    ///< measured <= predicted + tolerance
  LessThan,  ///< measured < predicted
};

const char* to_string(Relation r) noexcept;

struct Assertion {
  std::string name;
  Relation relation = Relation::Within;
  double predicted = 0.0;
  /// Empty when the quantity could not be measured; the verdict is then
  /// decided by `passed` alone.
  std::optional<double> measured;
  double tolerance = 0.0;
  bool passed = false;
};

Assertion judge(std::string name, Relation relation, double predicted, double measured,
                double tolerance);

struct OutputFile {
  std::string name;
  std::string contents;
};

struct RunResult {
  nlohmann::ordered_json report;
  std::vector<Assertion> assertions;
  std::vector<OutputFile> files;

  bool passed() const noexcept;
  int exit_code() const noexcept { return passed() ? 0 : 1; }
};

/// Runs one validated command. Deterministic in (config, seed); nothing is
/// written. Library errors propagate.
RunResult run(const ExperimentConfig& cfg);

/// Writes report.json (with the wall time) and the side files into cfg.out.
void write_outputs(const RunResult& result, const std::filesystem::path& out,
                   double wall_time_seconds);

/// Fixed CSV columns; absent values are written as empty fields.
inline constexpr const char* kSeriesHeader =
    "t,norm_solution_sq,norm_profile_sq,norm_error_sq,energy";

}  // namespace logdamp::cli
