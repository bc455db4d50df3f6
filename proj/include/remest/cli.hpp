#ifndef REMEST_CLI_HPP
#define REMEST_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "remest/model.hpp"

namespace remest::cli {

enum class OutputFormat { Plain, Csv };

OutputFormat parse_format(const std::string& name);

enum class NoiseMode { Adversarial, SeededRandom, FromFile };

/// Which schedule cmd_simulate rolls out.
using ScheduleChoice = std::variant<std::monostate /*optimal*/, std::string /*"uniform"*/, Schedule>;

/// Parsed run configuration: the problem spec plus command-specific options.
struct RunConfig {
  ProblemSpec spec;
  bool homogeneous = false;  // noise given as scalar `a`
  double a = 0.0;

  std::optional<double> epsilon;
  std::uint64_t seed = 0;
  std::optional<std::string> out_path;
  /// Explicit format from config or flag; commands fall back to their natural
  /// default (csv for sweep and simulate, plain otherwise).
  std::optional<OutputFormat> format_override;

  NoiseMode noise_mode = NoiseMode::Adversarial;
  std::optional<std::string> noise_file;
  ScheduleChoice schedule_choice;

  /// Sweep axes in fixed order T, K, lambda, epsilon; absent axes use the
  /// base value from the spec.
  std::map<std::string, std::vector<double>> sweep;
};

/// Parses the JSON configuration text. Throws std::invalid_argument or
/// ValidationError with a message naming the offending key.
RunConfig parse_config_text(const std::string& text);

/// Reads and parses a configuration file.
RunConfig load_config(const std::string& path);

/// Shortest round-trip decimal rendering, locale-independent.
std::string format_double(double value);

int cmd_solve(const RunConfig& config, std::ostream& out);
int cmd_verify(const RunConfig& config, std::ostream& out);
int cmd_sweep(const RunConfig& config, std::ostream& out);
int cmd_simulate(const RunConfig& config, std::ostream& out);
int cmd_schedule(const RunConfig& config, std::ostream& out);

/// Dispatch by subcommand name; returns the process exit code
/// (0 ok, 1 validation error, 2 verification failure).
int run_command(const std::string& name, const RunConfig& config, std::ostream& out);

}  // namespace remest::cli

#endif  // REMEST_CLI_HPP
