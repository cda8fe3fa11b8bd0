#include "prouter/cli.hpp"

#include <fstream>
#include <ostream>

#include "CLI11.hpp"
#include "prouter/config.hpp"
#include "prouter/engine.hpp"
#include "prouter/figures.hpp"
#include "prouter/summary.hpp"
#include "prouter/trace_io.hpp"

namespace prouter::cli {

namespace {

Scenario scenario_for(const RunOptions& opts) {
  Scenario s = opts.config ? load_scenario(*opts.config) : default_scenario();
  if (opts.decimate) {
    s.decimate = *opts.decimate;
    if (auto issues = validate(s); !issues.empty()) throw ConfigError(std::move(issues));
  }
  return s;
}

void report(std::ostream& err, const ConfigError& e) {
  if (e.issues().empty()) {
    err << "config error: " << e.what() << '\n';
    return;
  }
  for (const auto& issue : e.issues()) err << "config error: " << issue.to_string() << '\n';
}

}  // namespace

int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err) {
  Scenario scenario;
  try {
    scenario = scenario_for(opts);
  } catch (const ConfigError& e) {
    report(err, e);
    return kConfigError;
  }

  RunResult run;
  Summary summary;
  try {
    run = run_scenario(scenario);
    summary = summarize(run, scenario);
  } catch (const ConfigError& e) {
    report(err, e);
    return kConfigError;
  } catch (const SimulationError& e) {
    err << "simulation error: " << e.what() << '\n';
    return kSimulationError;
  }

  std::error_code ec;
  std::filesystem::create_directories(opts.out_dir, ec);
  if (ec) {
    err << "cannot create " << opts.out_dir << ": " << ec.message() << '\n';
    return kConfigError;
  }
  const auto json = to_json(summary, run).dump(2);
  {
    std::ofstream trace(opts.out_dir / "trace.csv", std::ios::binary);
    std::ofstream ledger(opts.out_dir / "ledger.csv", std::ios::binary);
    std::ofstream summary_file(opts.out_dir / "summary.json", std::ios::binary);
    if (!trace || !ledger || !summary_file) {
      err << "cannot write outputs into " << opts.out_dir << '\n';
      return kConfigError;
    }
    write_trace_csv(trace, run);
    write_ledger_csv(ledger, run.ledger);
    summary_file << json << '\n';
  }
  out << json << '\n';
  return kOk;
}

int cmd_validate(const RunOptions& opts, std::ostream& out, std::ostream& err) {
  if (!opts.config) {
    err << "validate: --config is required\n";
    return kConfigError;
  }
  auto issues = check_scenario_file(*opts.config);
  if (issues.empty() && opts.decimate && *opts.decimate < 1) {
    issues.push_back({"simulation.decimate", "must be >= 1"});
  }
  if (!issues.empty()) {
    for (const auto& issue : issues) err << "config error: " << issue.to_string() << '\n';
    return kConfigError;
  }
  out << "ok: " << opts.config->string() << '\n';
  return kOk;
}

int cmd_figures(const RunOptions& opts, std::ostream& out, std::ostream& err) {
  FigureParams params;
  if (opts.config) {
    try {
      params = load_scenario(*opts.config).figures;
    } catch (const ConfigError& e) {
      report(err, e);
      return kConfigError;
    }
  }
  try {
    const auto trace = read_trace_csv(opts.out_dir / "trace.csv");
    for (const auto& path : write_figures(trace, params, opts.out_dir / "figures")) {
      out << path.string() << '\n';
    }
  } catch (const std::exception& e) {
    err << "figures: " << e.what() << '\n';
    return kConfigError;
  }
  return kOk;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Line-switching power router simulator"};
  app.require_subcommand(1, 1);

  RunOptions opts;
  std::string config;
  std::string out_dir = "out";
  int decimate = 1;
  bool decimate_given = false;
  auto add_common = [&](CLI::App* sub, bool with_decimate) {
    auto* cfg = sub->add_option("--config", config, "Scenario file (YAML)");
    if (with_decimate) cfg->required();
    sub->add_option("--out", out_dir, "Output directory")->capture_default_str();
    if (with_decimate) {
      sub->add_option_function<int>(
          "--decimate",
          [&](const int& n) {
            decimate = n;
            decimate_given = true;
          },
          "Write every Nth sample");
    }
  };
  auto* run = app.add_subcommand("run", "Simulate a scenario and write trace, ledger, summary");
  auto* val = app.add_subcommand("validate", "Check a scenario file");
  auto* fig = app.add_subcommand("figures", "Slice <out>/trace.csv into per-figure CSVs");
  add_common(run, true);
  add_common(val, true);
  add_common(fig, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kConfigError;
  }

  if (!config.empty()) opts.config = config;
  opts.out_dir = out_dir;
  if (decimate_given) opts.decimate = decimate;
  if (opts.decimate && *opts.decimate < 1) {
    err << "config error: --decimate must be >= 1\n";
    return kConfigError;
  }

  if (run->parsed()) return cmd_run(opts, out, err);
  if (val->parsed()) return cmd_validate(opts, out, err);
  return cmd_figures(opts, out, err);
}

}  // namespace prouter::cli
