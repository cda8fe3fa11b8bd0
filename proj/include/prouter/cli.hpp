#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

namespace prouter::cli {

enum ExitCode : int { kOk = 0, kConfigError = 1, kSimulationError = 2 };

struct RunOptions {
  std::optional<std::filesystem::path> config;
  std::filesystem::path out_dir = "out";
  std::optional<int> decimate;  // overrides simulation.decimate when set
};

/// Writes <out>/trace.csv, <out>/ledger.csv and <out>/summary.json; prints the summary.
int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err);
/// Reports each problem with its field path on `err`.
int cmd_validate(const RunOptions& opts, std::ostream& out, std::ostream& err);
/// Reads <out>/trace.csv and writes the figure slices into <out>/figures/.
int cmd_figures(const RunOptions& opts, std::ostream& out, std::ostream& err);

/// Entry point: `prouter {run|validate|figures} [--config FILE] [--out DIR] [--decimate N]`.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace prouter::cli
