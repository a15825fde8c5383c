#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace cmvspec::app {

enum class Command { Spectrum, Dos, Lyapunov, Schur, Thin, Tower, Walk, Verify };

std::string to_string(Command c);
std::optional<Command> command_from_string(const std::string& name);

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kCertificationFailure = 3,
  kToleranceFailure = 4,
};

struct RunConfig {
  Command command = Command::Spectrum;
  std::string config_path;  // empty: command defaults
  std::string out_dir = ".";
  std::optional<long long> grid;
  std::optional<double> tol;
  std::optional<unsigned> threads;
};

/// Throws Error(Config) when an override is out of range.
void validate(const RunConfig& config);

/// Runs one command, writing artifacts and manifest.json into out_dir.
/// Diagnostics go to log; the return value is the process exit status.
int run(const RunConfig& config, std::ostream& log);

/// 64-bit FNV-1a, printed as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace cmvspec::app
