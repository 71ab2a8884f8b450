#include "logdamp/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "logdamp/errors.hpp"

namespace logdamp::cli {

namespace {

struct NamedCommand {
  const char* name;
  Command command;
};

constexpr NamedCommand kCommands[] = {
    {"thresholds", Command::Thresholds},     {"simulate", Command::Simulate},
    {"decay-fit", Command::DecayFit},        {"profile-error", Command::ProfileError},
    {"blowup", Command::Blowup},             {"lemma-check", Command::LemmaCheck},
    {"energy-check", Command::EnergyCheck},  {"reconstruct", Command::Reconstruct},
};

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const std::string v = trim(value);
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
    throw ConfigError("cannot parse '" + value + "' for key " + key);
  }
  return out;
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::stringstream in(value);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!trim(item).empty()) out.push_back(parse_number<double>(key, item));
  }
  return out;
}

[[noreturn]] void reject(const std::string& what) { throw ConfigError(what); }

void require_hypothesis(bool ok, const ExperimentConfig& cfg, const char* hypothesis) {
  if (ok) return;
  std::ostringstream msg;
  msg << to_string(cfg.command) << " requires " << hypothesis << "; got n = " << cfg.n
      << ", theta = " << cfg.theta;
  reject(msg.str());
}

}  // namespace

const char* to_string(Command c) noexcept {
  for (const auto& nc : kCommands) {
    if (nc.command == c) return nc.name;
  }
  return "?";
}

Command parse_command(const std::string& name) {
  for (const auto& nc : kCommands) {
    if (name == nc.name) return nc.command;
  }
  reject("unknown command '" + name + "'");
}

InitialDatum ExperimentConfig::make_datum() const {
  return datum == DatumFamily::Gaussian ? InitialDatum::gaussian(n, width)
                                        : InitialDatum::scaled_gaussian(n, width, amplitude);
}

void apply_setting(ExperimentConfig& cfg, const std::string& raw_key, const std::string& value) {
  std::string key = trim(raw_key);
  std::replace(key.begin(), key.end(), '-', '_');
  const std::string v = trim(value);
  if (key == "command") {
    cfg.command = parse_command(v);
    cfg.command_set = true;
  } else if (key == "n") {
    cfg.n = parse_number<int>(key, v);
  } else if (key == "theta") {
    cfg.theta = parse_number<double>(key, v);
  } else if (key == "datum") {
    if (v == "gaussian") {
      cfg.datum = DatumFamily::Gaussian;
    } else if (v == "scaled-gaussian") {
      cfg.datum = DatumFamily::ScaledGaussian;
    } else {
      reject("unknown datum family '" + v + "' (gaussian, scaled-gaussian)");
    }
  } else if (key == "width") {
    cfg.width = parse_number<double>(key, v);
  } else if (key == "amplitude") {
    cfg.amplitude = parse_number<double>(key, v);
  } else if (key == "t_min") {
    cfg.t_min = parse_number<double>(key, v);
  } else if (key == "t_max") {
    cfg.t_max = parse_number<double>(key, v);
  } else if (key == "points_per_decade") {
    cfg.points_per_decade = parse_number<int>(key, v);
  } else if (key == "rel_tol") {
    cfg.rel_tol = parse_number<double>(key, v);
  } else if (key == "abs_tol") {
    cfg.abs_tol = parse_number<double>(key, v);
  } else if (key == "out") {
    cfg.out = v;
  } else if (key == "seed") {
    cfg.seed = parse_number<std::uint64_t>(key, v);
  } else if (key == "times") {
    cfg.times = parse_list(key, v);
  } else if (key == "x_max") {
    cfg.x_max = parse_number<double>(key, v);
  } else if (key == "dx") {
    cfg.dx = parse_number<double>(key, v);
  } else if (key == "samples") {
    cfg.samples = parse_number<int>(key, v);
  } else {
    reject("unknown configuration key '" + raw_key + "'");
  }
}

std::map<std::string, std::string> read_settings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) reject("cannot open config file " + path.string());
  std::map<std::string, std::string> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || trim(line.substr(0, eq)).empty()) {
      std::ostringstream msg;
      msg << path.string() << ":" << number << ": expected key = value";
      reject(msg.str());
    }
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

void validate(const ExperimentConfig& cfg) {
  if (!cfg.command_set) reject("no command given");
  if (cfg.n < 1) reject("n must be >= 1");
  if (!(cfg.theta > 0.0 && cfg.theta < 0.5)) reject("theta must lie in (0, 1/2)");
  if (!(cfg.width > 0.0) || !std::isfinite(cfg.width)) reject("width must be positive");
  if (!(cfg.amplitude != 0.0) || !std::isfinite(cfg.amplitude)) {
    reject("amplitude must be finite and nonzero");
  }
  if (!(cfg.t_min > 0.0 && cfg.t_max > cfg.t_min) || !std::isfinite(cfg.t_max)) {
    reject("time window must satisfy 0 < t_min < t_max < inf");
  }
  if (cfg.points_per_decade < 1 || cfg.points_per_decade > 64) {
    reject("points_per_decade must lie in [1, 64]");
  }
  if (!(cfg.rel_tol > 0.0 && cfg.rel_tol < 0.1)) reject("rel_tol must lie in (0, 0.1)");
  if (!(cfg.abs_tol >= 0.0) || !std::isfinite(cfg.abs_tol)) reject("abs_tol must be >= 0");
  for (double t : cfg.times) {
    if (!(t > 0.0) || !std::isfinite(t)) reject("times must be finite and positive");
  }
  if (!(cfg.dx > 0.0 && cfg.x_max > cfg.dx) || !std::isfinite(cfg.x_max)) {
    reject("reconstruction grid must satisfy 0 < dx < x_max < inf");
  }
  if (cfg.samples < 1) reject("samples must be >= 1");

  const double th = cfg.theta;
  switch (cfg.command) {
    case Command::DecayFit:
      require_hypothesis((cfg.n == 1 && th < 0.25) || (cfg.n >= 2 && th <= 5.0 / 12.0), cfg,
                         "n = 1 with 0 < theta < 1/4, or n >= 2 with 0 < theta <= 5/12");
      break;
    case Command::ProfileError:
      require_hypothesis((cfg.n == 1 && th <= 1.0 / 3.0) || (cfg.n >= 2 && th <= 5.0 / 12.0), cfg,
                         "n = 1 with 0 < theta <= 1/3, or n >= 2 with 0 < theta <= 5/12");
      break;
    case Command::Blowup:
      require_hypothesis(cfg.n == 1 && th >= 0.25 && th <= 1.0 / 3.0, cfg,
                         "n = 1 with 1/4 <= theta <= 1/3");
      break;
    case Command::Reconstruct:
      require_hypothesis(cfg.n == 1, cfg, "n = 1");
      break;
    case Command::Thresholds:
    case Command::Simulate:
    case Command::LemmaCheck:
    case Command::EnergyCheck:
      break;
  }
}

}  // namespace logdamp::cli
