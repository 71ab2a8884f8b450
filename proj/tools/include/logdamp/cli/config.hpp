#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "logdamp/spectral.hpp"

namespace logdamp::cli {

enum class Command {
  Thresholds,
  Simulate,
  DecayFit,
  ProfileError,
  Blowup,
  LemmaCheck,
  EnergyCheck,
  Reconstruct,
};

const char* to_string(Command c) noexcept;

/// Throws ConfigError for an unknown name.
Command parse_command(const std::string& name);

struct ExperimentConfig {
  Command command = Command::Simulate;
  bool command_set = false;
  int n = 1;
  double theta = 0.2;
  DatumFamily datum = DatumFamily::Gaussian;
  double width = 1.0;
  double amplitude = 1.0;
  double t_min = 1e2;
  double t_max = 1e6;
  int points_per_decade = 4;
  double rel_tol = 1e-9;
  double abs_tol = 0.0;
  std::filesystem::path out = ".";
  std::uint64_t seed = 0;
  /// Evaluation times for energy-check and reconstruct; empty means the
  /// command's default.
  std::vector<double> times;
  /// Reconstruction grid: x in [-x_max, x_max] with spacing dx.
  double x_max = 60.0;
  double dx = 0.1;
  /// Random draws per property in lemma-check.
  int samples = 200;

  InitialDatum make_datum() const;
};

/// Sets one key. Keys accept '-' or '_' as separator. Throws ConfigError for
/// unknown keys or unparsable values.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Parses `key = value` lines; '#' starts a comment. Throws ConfigError with
/// the offending line number.
std::map<std::string, std::string> read_settings(const std::filesystem::path& path);

/// Range checks plus the hypotheses of the result the command tests. Throws
/// ConfigError naming the violated hypothesis.
void validate(const ExperimentConfig& cfg);

}  // namespace logdamp::cli
