#pragma once

// Plot-ready slices of a trace. Slices copy rows (and the selected fields) verbatim from
// the trace file, so no value is ever recomputed.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "prouter/engine.hpp"
#include "prouter/trace_io.hpp"

namespace prouter {

class FigureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FigureSlice {
  std::string file;
  std::vector<std::string> columns;  // empty: all columns
  std::size_t first_row = 0;
  std::size_t last_row = 0;  // inclusive
};

/// First row whose switch columns differ from the previous row. Throws FigureError if the
/// gates never change.
std::size_t find_gate_change_row(const TraceTable& trace);

/// Row range covering [w.start, w.end]; throws FigureError if the window leaves the trace.
std::pair<std::size_t, std::size_t> rows_in_window(const TraceTable& trace, const Window& w);

/// The five slices: full run, both steady-state zooms, the watched port around the gate
/// change, and the bus voltage around the gate change.
std::vector<FigureSlice> plan_figures(const TraceTable& trace, const FigureParams& params);

void write_slice(const TraceTable& trace, const FigureSlice& slice, std::ostream& os);

/// Writes every planned slice into `out_dir`; returns the written paths.
std::vector<std::filesystem::path> write_figures(const TraceTable& trace,
                                                 const FigureParams& params,
                                                 const std::filesystem::path& out_dir);

}  // namespace prouter
