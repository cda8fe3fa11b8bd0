#include "prouter/trace_io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace prouter {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string::size_type start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

std::vector<std::string> trace_header(const RunResult& run) {
  std::vector<std::string> h{"t"};
  for (PortId p : run.ports) {
    const auto n = std::to_string(p.index());
    h.insert(h.end(), {"v" + n, "i" + n, "p" + n, "pavg" + n});
  }
  h.push_back("mode");
  for (const auto& b : run.topology.bridges()) h.push_back(lower(b.id.name));
  return h;
}

void write_trace_csv(std::ostream& os, const RunResult& run) {
  fmt::memory_buffer buf;
  const auto header = trace_header(run);
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (k) buf.push_back(',');
    buf.append(header[k]);
  }
  buf.push_back('\n');

  const std::size_t n_switches = run.topology.size();
  for (const auto& r : run.records) {
    fmt::format_to(std::back_inserter(buf), "{:.9f}", r.t);
    for (PortId p : run.ports) {
      const auto& pr = r.ports[p.slot()];
      fmt::format_to(std::back_inserter(buf), ",{:.6f},{:.6f},{:.6f},", pr.v, pr.i, pr.p);
      if (pr.pavg) fmt::format_to(std::back_inserter(buf), "{:.6f}", *pr.pavg);
    }
    fmt::format_to(std::back_inserter(buf), ",{}", r.mode.value);
    for (std::size_t s = 0; s < n_switches; ++s) {
      buf.push_back(',');
      buf.push_back(((r.gates >> s) & 1u) ? '1' : '0');
    }
    buf.push_back('\n');
    if (buf.size() > (1u << 20)) {
      os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
      buf.clear();
    }
  }
  os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void write_ledger_csv(std::ostream& os, const EnergyLedger& ledger) {
  os << "source,sink,mode,t_start,t_end,energy_wh\n";
  for (const auto& iv : ledger.intervals()) {
    os << fmt::format("{},{},{},{:.9f},{:.9f},{:.9f}\n", iv.source.index(), iv.sink.index(),
                      iv.mode.value, iv.t_start, iv.t_end, iv.energy_wh);
  }
}

std::size_t TraceTable::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw std::out_of_range("trace has no column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

std::vector<std::string> TraceTable::fields(std::size_t row) const { return split(rows.at(row)); }

TraceTable read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace " + path.string());

  TraceTable table;
  std::string line;
  if (!std::getline(in, line) || line.empty()) {
    throw std::runtime_error("trace " + path.string() + " has no header");
  }
  table.header = split(line);
  if (table.header.front() != "t") {
    throw std::runtime_error("trace " + path.string() + " does not start with a t column");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    try {
      table.t.push_back(std::stod(line.substr(0, comma)));
    } catch (const std::exception&) {
      throw std::runtime_error("trace " + path.string() + ": bad time value on row " +
                               std::to_string(table.rows.size() + 1));
    }
    table.rows.push_back(std::move(line));
  }
  return table;
}

}  // namespace prouter
