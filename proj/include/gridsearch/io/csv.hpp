#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gridsearch/tessellation.hpp"
#include "gridsearch/trace.hpp"

namespace gridsearch::io {

// Shortest decimal that parses back to the identical double.
inline std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw std::runtime_error("cannot format double");
  return std::string(buf, ptr);
}

inline std::ofstream open_output(const std::filesystem::path& path,
                                 std::ios::openmode mode = std::ios::out) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, mode | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

inline void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

inline constexpr std::string_view trace_csv_header =
    "iteration,marked_probability,marked_amplitude,nominal_steps";

/// One row per round, numbered from 1.
inline void emit_trace_csv(const SimulationTrace& trace, const std::filesystem::path& path) {
  auto out = open_output(path);
  out << trace_csv_header << '\n';
  for (std::size_t k = 0; k < trace.iterations(); ++k) {
    const double p = trace.marked_probability[k];
    const std::uint64_t steps = k < trace.nominal_steps.size() ? trace.nominal_steps[k] : 0;
    out << (k + 1) << ',' << format_double(p) << ',' << format_double(std::sqrt(p)) << ',' << steps
        << '\n';
  }
  finish(out, path);
}

struct TraceRow {
  std::size_t iteration = 0;
  double marked_probability = 0.0;
  double marked_amplitude = 0.0;
  std::uint64_t nominal_steps = 0;
};

inline std::vector<TraceRow> read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line) || line != trace_csv_header) {
    throw std::runtime_error("'" + path.string() + "' is not a trace CSV");
  }
  std::vector<TraceRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    TraceRow r;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    auto field = [&](auto& v) {
      auto res = std::from_chars(p, end, v);
      if (res.ec != std::errc{}) throw std::runtime_error("malformed trace row: " + line);
      p = res.ptr;
      if (p != end) {
        if (*p != ',') throw std::runtime_error("malformed trace row: " + line);
        ++p;
      }
    };
    field(r.iteration);
    field(r.marked_probability);
    field(r.marked_amplitude);
    field(r.nominal_steps);
    rows.push_back(r);
  }
  return rows;
}

inline void emit_snapshot_csv(const AmplitudeGrid& grid, const std::filesystem::path& path) {
  auto out = open_output(path);
  out << "i,j,amplitude\n";
  for (std::size_t i = 0; i < grid.side; ++i) {
    for (std::size_t j = 0; j < grid.side; ++j) out << i << ',' << j << ',' << format_double(grid.at(i, j)) << '\n';
  }
  finish(out, path);
}

inline void emit_partition_csv(const Partition& p, const std::filesystem::path& path) {
  const auto& g = p.geometry();
  std::vector<std::size_t> group_of(g.cell_count(), 0);
  for (std::size_t k = 0; k < p.group_count(); ++k) {
    for (auto o : p.group(k)) group_of[o] = k;
  }
  auto out = open_output(path);
  out << "i,j,group\n";
  for (std::size_t o = 0; o < group_of.size(); ++o) {
    const auto c = coord_of(g, o);
    out << c.row << ',' << c.col << ',' << group_of[o] << '\n';
  }
  finish(out, path);
}

}  // namespace gridsearch::io
