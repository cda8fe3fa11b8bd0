#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace prouter {

/// A single configuration problem, addressed by the dotted field path it came from.
struct ConfigIssue {
  std::string path;
  std::string message;

  std::string to_string() const { return path.empty() ? message : path + ": " + message; }
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
  explicit ConfigError(std::vector<ConfigIssue> issues)
      : std::runtime_error(join(issues)), issues_(std::move(issues)) {}

  const std::vector<ConfigIssue>& issues() const noexcept { return issues_; }

 private:
  static std::string join(const std::vector<ConfigIssue>& issues) {
    std::string out;
    for (const auto& issue : issues) {
      if (!out.empty()) out += "; ";
      out += issue.to_string();
    }
    return out;
  }

  std::vector<ConfigIssue> issues_;
};

/// Raised while stepping a scenario; maps to the CLI's simulation-error exit code.
class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// More than two ports joined in one block: pairwise energy attribution is impossible.
class MultiConnectionError : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

/// A mode command arrived while another one is still outstanding.
class ControllerBusyError : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

/// The controller was stepped without a measurement for the port it watches.
class WiringError : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

}  // namespace prouter
