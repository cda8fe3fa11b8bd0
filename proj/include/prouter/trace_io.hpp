#pragma once

// CSV formats.
//
// trace.csv:  t,v1,i1,p1,pavg1,...,mode,<switch names lowercased>
//             one row per (decimated) sample, ports with a device attached in ascending
//             order; t with 9 decimals, electrical columns with 6; pavg empty until the
//             averager has filled; switch columns 0/1.
// ledger.csv: source,sink,mode,t_start,t_end,energy_wh, one row per attribution interval.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "prouter/engine.hpp"

namespace prouter {

std::vector<std::string> trace_header(const RunResult& run);
void write_trace_csv(std::ostream& os, const RunResult& run);
void write_ledger_csv(std::ostream& os, const EnergyLedger& ledger);

/// A trace CSV held as verbatim text rows plus the parsed time column.
struct TraceTable {
  std::vector<std::string> header;
  std::vector<std::string> rows;  // without trailing newline
  std::vector<double> t;

  std::size_t column(const std::string& name) const;  // throws std::out_of_range
  std::vector<std::string> fields(std::size_t row) const;
};

/// Throws std::runtime_error if the file is missing or malformed.
TraceTable read_trace_csv(const std::filesystem::path& path);

}  // namespace prouter
