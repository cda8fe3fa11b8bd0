#include "prouter/figures.hpp"

#include <algorithm>
#include <fstream>

namespace prouter {

namespace {

constexpr double kTimeTol = 1e-9;

std::size_t mode_column(const TraceTable& trace) {
  try {
    return trace.column("mode");
  } catch (const std::out_of_range& e) {
    throw FigureError(e.what());
  }
}

}  // namespace

std::size_t find_gate_change_row(const TraceTable& trace) {
  const std::size_t first_switch = mode_column(trace) + 1;
  auto switch_fields = [&](std::size_t row) {
    auto f = trace.fields(row);
    if (f.size() != trace.header.size()) {
      throw FigureError("trace row " + std::to_string(row + 1) + " has " +
                        std::to_string(f.size()) + " fields, header has " +
                        std::to_string(trace.header.size()));
    }
    return std::vector<std::string>(f.begin() + static_cast<std::ptrdiff_t>(first_switch),
                                    f.end());
  };
  if (trace.rows.empty()) throw FigureError("trace is empty");
  auto prev = switch_fields(0);
  for (std::size_t r = 1; r < trace.rows.size(); ++r) {
    auto cur = switch_fields(r);
    if (cur != prev) return r;
    prev = std::move(cur);
  }
  throw FigureError("gate states never change in this trace");
}

std::pair<std::size_t, std::size_t> rows_in_window(const TraceTable& trace, const Window& w) {
  if (trace.t.empty()) throw FigureError("trace is empty");
  if (!(w.start < w.end) || w.start < trace.t.front() - kTimeTol ||
      w.end > trace.t.back() + kTimeTol) {
    throw FigureError("zoom window [" + std::to_string(w.start) + ", " + std::to_string(w.end) +
                      "] is outside the trace [" + std::to_string(trace.t.front()) + ", " +
                      std::to_string(trace.t.back()) + "]");
  }
  const auto lo = std::lower_bound(trace.t.begin(), trace.t.end(), w.start - kTimeTol);
  const auto hi = std::upper_bound(trace.t.begin(), trace.t.end(), w.end + kTimeTol);
  if (lo >= hi) throw FigureError("zoom window holds no samples");
  return {static_cast<std::size_t>(lo - trace.t.begin()),
          static_cast<std::size_t>(hi - trace.t.begin()) - 1};
}

std::vector<FigureSlice> plan_figures(const TraceTable& trace, const FigureParams& params) {
  const std::size_t mode_col = mode_column(trace);
  const std::vector<std::string> switch_cols(trace.header.begin() + static_cast<std::ptrdiff_t>(mode_col) + 1,
                                             trace.header.end());

  std::vector<FigureSlice> out;
  out.push_back({"full.csv", {}, 0, trace.rows.size() - 1});

  auto [s1_lo, s1_hi] = rows_in_window(trace, params.steady1);
  out.push_back({"steady1.csv", {}, s1_lo, s1_hi});

  const std::size_t change = find_gate_change_row(trace);
  const double tc = trace.t[change];
  const Window around{tc - params.switch_halfwidth, tc + params.switch_halfwidth};
  auto [sw_lo, sw_hi] = rows_in_window(trace, around);

  const auto n = std::to_string(params.port.index());
  std::vector<std::string> port_cols{"t", "v" + n, "i" + n, "p" + n, "pavg" + n, "mode"};
  port_cols.insert(port_cols.end(), switch_cols.begin(), switch_cols.end());
  for (const auto& c : port_cols) {
    if (std::find(trace.header.begin(), trace.header.end(), c) == trace.header.end()) {
      throw FigureError("trace has no column '" + c + "' for the switch zoom");
    }
  }
  out.push_back({"port" + n + "_switch.csv", port_cols, sw_lo, sw_hi});

  auto [s2_lo, s2_hi] = rows_in_window(trace, params.steady2);
  out.push_back({"steady2.csv", {}, s2_lo, s2_hi});

  // Every port sits on the common bus, so the first voltage column is the bus voltage.
  const auto v_col = std::find_if(trace.header.begin(), trace.header.end(),
                                  [](const std::string& h) { return h.size() > 1 && h[0] == 'v'; });
  if (v_col == trace.header.end()) throw FigureError("trace has no voltage column");
  std::vector<std::string> bus_cols{"t", *v_col, "mode"};
  bus_cols.insert(bus_cols.end(), switch_cols.begin(), switch_cols.end());
  out.push_back({"bus_voltage_switch.csv", bus_cols, sw_lo, sw_hi});
  return out;
}

void write_slice(const TraceTable& trace, const FigureSlice& slice, std::ostream& os) {
  if (slice.columns.empty()) {
    for (std::size_t k = 0; k < trace.header.size(); ++k) os << (k ? "," : "") << trace.header[k];
    os << '\n';
    for (std::size_t r = slice.first_row; r <= slice.last_row; ++r) os << trace.rows[r] << '\n';
    return;
  }
  std::vector<std::size_t> idx;
  for (const auto& c : slice.columns) idx.push_back(trace.column(c));
  for (std::size_t k = 0; k < slice.columns.size(); ++k) os << (k ? "," : "") << slice.columns[k];
  os << '\n';
  for (std::size_t r = slice.first_row; r <= slice.last_row; ++r) {
    const auto f = trace.fields(r);
    for (std::size_t k = 0; k < idx.size(); ++k) os << (k ? "," : "") << f.at(idx[k]);
    os << '\n';
  }
}

std::vector<std::filesystem::path> write_figures(const TraceTable& trace,
                                                 const FigureParams& params,
                                                 const std::filesystem::path& out_dir) {
  const auto slices = plan_figures(trace, params);
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;
  for (const auto& s : slices) {
    const auto path = out_dir / s.file;
    std::ofstream os(path);
    if (!os) throw FigureError("cannot write " + path.string());
    write_slice(trace, s, os);
    written.push_back(path);
  }
  return written;
}

}  // namespace prouter
