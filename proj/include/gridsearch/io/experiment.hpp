#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "gridsearch/analysis.hpp"
#include "gridsearch/io/config.hpp"
#include "gridsearch/io/csv.hpp"
#include "gridsearch/io/heatmap.hpp"
#include "gridsearch/simulator.hpp"

namespace gridsearch::io {

// Runs fn(0..count-1) on up to hardware_concurrency threads. fn must not throw.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
}

struct SweepPoint {
  std::size_t side = 0;
  std::size_t d = 4;
  Tessellation tessellation = Tessellation::square;
  Placement placement;
  OperatorOrder order = OperatorOrder::ltr;
};

inline std::vector<SweepPoint> expand_sweep(const ExperimentConfig& cfg) {
  std::vector<SweepPoint> pts;
  for (auto L : cfg.sides)
    for (auto t : cfg.tessellations)
      for (auto d : cfg.tile_params) {
        // d does not parameterize crosses; keep one point per cross sweep.
        if (t == Tessellation::cross && d != cfg.tile_params.front()) continue;
        for (const auto& p : cfg.placements)
          for (auto o : cfg.orders) pts.push_back(SweepPoint{L, t == Tessellation::cross ? 5 : d, t, p, o});
      }
  return pts;
}

inline MarkedSet marked_for(const SweepPoint& pt) {
  const GridGeometry g(pt.side);
  return pt.placement ? MarkedSet(g, *pt.placement) : MarkedSet(g, default_marked_cell(g));
}

inline std::string point_label(const SweepPoint& pt) {
  std::string s = "L" + std::to_string(pt.side) + "_" + std::string(to_string(pt.tessellation)) + "_d" +
                  std::to_string(pt.d) + "_" + std::string(to_string(pt.order)) + "_m";
  const auto marked = marked_for(pt);
  for (std::size_t k = 0; k < marked.size(); ++k) {
    if (k) s += "_";
    s += std::to_string(marked.cells()[k].row) + "-" + std::to_string(marked.cells()[k].col);
  }
  return s;
}

inline RunConfig run_config_for(const SweepPoint& pt, const ExperimentConfig& cfg) {
  const GridGeometry g(pt.side);
  auto rc = make_run_config(g, marked_for(pt), pt.tessellation, pt.d, pt.order);
  if (cfg.max_iterations != 0) rc.max_iterations = cfg.max_iterations;
  if (cfg.emit.snapshots || cfg.emit.heatmaps) rc.snapshot_stride = cfg.snapshot_stride;
  rc.peak_rule = cfg.peak_rule;
  return rc;
}

inline std::string iteration_tag(std::size_t it) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%05zu", it);
  return buf;
}

// Writes the requested per-run artifacts; returns the paths written.
inline std::vector<std::filesystem::path> emit_artifacts(const std::filesystem::path& dir,
                                                         const std::string& label,
                                                         const SimulationTrace& trace,
                                                         const ExperimentConfig& cfg) {
  std::vector<std::filesystem::path> files;
  if (cfg.emit.trace) {
    files.push_back(dir / (label + "_trace.csv"));
    emit_trace_csv(trace, files.back());
  }
  const HeatmapStyle style;
  for (const auto& [it, grid] : trace.snapshots) {
    if (cfg.emit.snapshots) {
      files.push_back(dir / (label + "_snap_" + iteration_tag(it) + ".csv"));
      emit_snapshot_csv(grid, files.back());
    }
    if (cfg.emit.heatmaps) {
      files.push_back(dir / (label + "_heat_" + iteration_tag(it) + ".ppm"));
      emit_heatmap(grid, style, files.back(), cfg.heatmap_scale);
    }
  }
  return files;
}

struct PointResult {
  SweepPoint point;
  std::string label;
  std::optional<PeakSummary> peak;
  std::size_t iterations = 0;
  std::size_t diffusions_per_round = 0;
  CostCounters counters;
  std::string error;
  std::vector<std::filesystem::path> files;
};

struct ExperimentReport {
  std::vector<PointResult> points;

  bool all_ok() const {
    return std::all_of(points.begin(), points.end(), [](const auto& p) { return p.error.empty(); });
  }
};

inline void ensure_output_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw std::runtime_error("cannot create output directory '" + dir.string() + "'");
  }
  const auto probe = dir / ".write_probe";
  {
    std::ofstream out(probe);
    if (!out) throw std::runtime_error("output directory '" + dir.string() + "' is not writable");
  }
  std::filesystem::remove(probe, ec);
}

inline std::string format_experiment_report(const ExperimentReport& r) {
  std::ostringstream os;
  os << "point                                              rounds  peak_round  probability  amplitude  "
        "nominal_steps\n";
  for (const auto& p : r.points) {
    char line[256];
    if (p.peak) {
      std::snprintf(line, sizeof(line), "%-50s %7zu %11zu %12.6f %10.6f %14llu\n", p.label.c_str(),
                    p.iterations, p.peak->iteration, p.peak->probability, p.peak->amplitude,
                    static_cast<unsigned long long>(p.counters.nominal_steps));
      os << line;
    } else {
      os << p.label << "  ERROR: " << p.error << '\n';
    }
  }
  return os.str();
}

/// Runs every sweep point (in parallel), writes each point's artifacts and
/// `report.txt`. Per-point failures are recorded and do not stop the others.
inline ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  const std::filesystem::path dir(cfg.out_dir);
  ensure_output_dir(dir);
  const auto pts = expand_sweep(cfg);
  ExperimentReport report;
  report.points.resize(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    auto& res = report.points[i];
    res.point = pts[i];
    try {
      res.label = point_label(pts[i]);
      const auto rc = run_config_for(pts[i], cfg);
      const auto trace = run(rc);
      res.peak = trace.peak;
      res.iterations = trace.iterations();
      res.diffusions_per_round = trace.diffusions_per_round;
      res.counters = trace.counters;
      res.files = emit_artifacts(dir, res.label, trace, cfg);
      if (cfg.emit.partition) {
        res.files.push_back(dir / (res.label + "_partition_local.csv"));
        emit_partition_csv(rc.local, res.files.back());
        res.files.push_back(dir / (res.label + "_partition_dispersion.csv"));
        emit_partition_csv(rc.dispersion, res.files.back());
      }
    } catch (const std::exception& e) {
      if (res.label.empty()) res.label = "L" + std::to_string(pts[i].side);
      res.error = e.what();
    }
  });
  auto out = open_output(dir / "report.txt");
  out << format_experiment_report(report);
  finish(out, dir / "report.txt");
  return report;
}

/// Global Grover reference for each grid size and placement in the config.
inline ExperimentReport run_grover_experiment(const ExperimentConfig& cfg) {
  const std::filesystem::path dir(cfg.out_dir);
  ensure_output_dir(dir);
  ExperimentReport report;
  for (auto L : cfg.sides) {
    for (const auto& placement : cfg.placements) {
      PointResult res;
      res.point = SweepPoint{L, 0, Tessellation::square, placement, OperatorOrder::ltr};
      try {
        const GridGeometry g(L);
        const auto marked = marked_for(res.point);
        res.label = "grover_L" + std::to_string(L) + "_k" + std::to_string(marked.size());
        const std::size_t iters = cfg.max_iterations ? cfg.max_iterations : default_horizon(g.cell_count());
        const std::size_t stride = (cfg.emit.snapshots || cfg.emit.heatmaps) ? cfg.snapshot_stride : 0;
        const auto trace = run_grover_reference(g, marked, iters, stride);
        res.peak = trace.peak;
        res.iterations = trace.iterations();
        res.diffusions_per_round = 1;
        res.counters = trace.counters;
        res.files = emit_artifacts(dir, res.label, trace, cfg);
      } catch (const std::exception& e) {
        res.error = e.what();
      }
      report.points.push_back(std::move(res));
    }
  }
  auto out = open_output(dir / "report.txt");
  out << format_experiment_report(report);
  finish(out, dir / "report.txt");
  return report;
}

struct PartitionCheck {
  std::string label;
  PartitionReport local;
  PartitionReport dispersion;
  std::string error;

  bool ok() const { return error.empty() && local.ok() && dispersion.ok(); }
};

/// Builds and validates the local/dispersion partitions for every grid and
/// shape in the config; optionally dumps them as `i,j,group` CSV.
inline std::vector<PartitionCheck> validate_experiment(const ExperimentConfig& cfg, bool dump) {
  std::vector<PartitionCheck> out;
  for (auto L : cfg.sides)
    for (auto t : cfg.tessellations)
      for (auto d : cfg.tile_params) {
        if (t == Tessellation::cross && d != cfg.tile_params.front()) continue;
        PartitionCheck c;
        c.label = "L" + std::to_string(L) + "_" + std::string(to_string(t)) +
                  (t == Tessellation::cross ? "" : "_d" + std::to_string(d));
        try {
          const GridGeometry g(L);
          const auto local = local_partition(t, g, d);
          const auto disp = dispersion_partition(t, g, d);
          c.local = validate_partition(local);
          c.dispersion = validate_partition(disp);
          if (dump) {
            const std::filesystem::path dir(cfg.out_dir);
            ensure_output_dir(dir);
            emit_partition_csv(local, dir / (c.label + "_partition_local.csv"));
            emit_partition_csv(disp, dir / (c.label + "_partition_dispersion.csv"));
          }
        } catch (const std::exception& e) {
          c.error = e.what();
        }
        out.push_back(std::move(c));
      }
  return out;
}

// ---------------------------------------------------------------------------
// Scaling-table reproduction

struct ReferenceRow {
  std::size_t n;
  double amplitude;        // maximum marked amplitude
  std::size_t iterations;  // diffusion passes to reach it
};

// Published reference values for the square-tile algorithm (4x4 tiles).
inline constexpr std::array<ReferenceRow, 10> reference_table{{
    {16, 0.9531, 2},
    {64, 0.9373, 6},
    {256, 0.9023, 12},
    {1024, 0.8626, 30},
    {4096, 0.8338, 64},
    {16384, 0.8073, 128},
    {65536, 0.7812, 264},
    {262144, 0.7581, 556},
    {1048576, 0.7377, 1144},
    {4194304, 0.7178, 2294},
}};

inline std::optional<ReferenceRow> reference_for(std::size_t n) {
  for (const auto& r : reference_table) {
    if (r.n == n) return r;
  }
  return std::nullopt;
}

struct TableOptions {
  std::vector<std::size_t> n_values{16, 64, 256, 1024, 4096, 16384, 65536};
  std::vector<OperatorOrder> orders{OperatorOrder::ltr, OperatorOrder::rtl};
  double amplitude_tolerance = 0.05;
  double iteration_tolerance = 0.25;  // relative
  std::size_t max_iterations = 0;     // 0 = ceil(4 sqrt(n))
  PeakRule peak_rule = PeakRule::first;
};

struct TableMeasurement {
  std::size_t n = 0;
  OperatorOrder order = OperatorOrder::ltr;
  PeakSummary peak;
  // Diffusion applications up to the peak: the unit of the reference column.
  std::size_t diffusion_passes = 0;
  std::optional<ReferenceRow> reference;
  double amplitude_delta = 0.0;
  double iteration_relative_delta = 0.0;
  bool amplitude_ok = false;
  bool iterations_ok = false;
  std::string error;

  bool ok() const { return error.empty() && amplitude_ok && iterations_ok; }
};

struct TableReport {
  TableOptions options;
  std::vector<TableMeasurement> rows;  // n-major, then order

  std::vector<TableMeasurement> for_order(OperatorOrder o) const {
    std::vector<TableMeasurement> out;
    for (const auto& r : rows) {
      if (r.order == o) out.push_back(r);
    }
    return out;
  }
};

/// Single marked item at the default cell, square 4x4 tiles, one run per
/// (n, order); measured peaks are compared against `reference_table`.
inline TableReport run_table(const TableOptions& opts) {
  TableReport rep;
  rep.options = opts;
  for (auto n : opts.n_values)
    for (auto o : opts.orders) {
      TableMeasurement m;
      m.n = n;
      m.order = o;
      rep.rows.push_back(std::move(m));
    }
  parallel_for(rep.rows.size(), [&](std::size_t i) {
    auto& m = rep.rows[i];
    try {
      const auto g = geometry_from_cells(m.n);
      auto rc = make_run_config(g, MarkedSet(g, default_marked_cell(g)), Tessellation::square, 4, m.order);
      if (opts.max_iterations != 0) rc.max_iterations = opts.max_iterations;
      rc.peak_rule = opts.peak_rule;
      const auto trace = run(rc);
      m.peak = trace.peak;
      m.diffusion_passes = trace.peak.iteration * trace.diffusions_per_round;
      m.reference = reference_for(m.n);
      if (m.reference) {
        m.amplitude_delta = m.peak.amplitude - m.reference->amplitude;
        const double ref_it = static_cast<double>(m.reference->iterations);
        m.iteration_relative_delta = (static_cast<double>(m.diffusion_passes) - ref_it) / ref_it;
        m.amplitude_ok = std::abs(m.amplitude_delta) <= opts.amplitude_tolerance;
        m.iterations_ok = std::abs(m.iteration_relative_delta) <= opts.iteration_tolerance;
      }
    } catch (const std::exception& e) {
      m.error = e.what();
    }
  });
  return rep;
}

inline std::string format_table_report(const TableReport& rep) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof(line), "%8s %5s %6s %7s %10s | %10s %7s | %9s %8s  %s\n", "n", "order", "round",
                "passes", "amplitude", "ref_amp", "ref_it", "d_amp", "d_it(%)", "status");
  os << line;
  for (const auto& m : rep.rows) {
    if (!m.error.empty()) {
      os << m.n << ' ' << to_string(m.order) << "  ERROR: " << m.error << '\n';
      continue;
    }
    if (m.reference) {
      std::snprintf(line, sizeof(line), "%8zu %5s %6zu %7zu %10.4f | %10.4f %7zu | %+9.4f %+8.1f  %s\n", m.n,
                    std::string(to_string(m.order)).c_str(), m.peak.iteration, m.diffusion_passes,
                    m.peak.amplitude, m.reference->amplitude, m.reference->iterations, m.amplitude_delta,
                    100.0 * m.iteration_relative_delta, m.ok() ? "ok" : "off");
    } else {
      std::snprintf(line, sizeof(line), "%8zu %5s %6zu %7zu %10.4f | %10s %7s | %9s %8s  %s\n", m.n,
                    std::string(to_string(m.order)).c_str(), m.peak.iteration, m.diffusion_passes,
                    m.peak.amplitude, "-", "-", "-", "-", "no reference");
    }
    os << line;
  }
  os << "tolerances: amplitude +/-" << rep.options.amplitude_tolerance << ", iterations +/-"
     << 100.0 * rep.options.iteration_tolerance << "% (peak rule: " << to_string(rep.options.peak_rule)
     << ")\n";
  return os.str();
}

inline void emit_table_csv(const TableReport& rep, const std::filesystem::path& path) {
  auto out = open_output(path);
  out << "n,order,peak_round,diffusion_passes,peak_probability,peak_amplitude,reference_amplitude,"
         "reference_iterations\n";
  for (const auto& m : rep.rows) {
    if (!m.error.empty()) continue;
    out << m.n << ',' << to_string(m.order) << ',' << m.peak.iteration << ',' << m.diffusion_passes << ','
        << format_double(m.peak.probability) << ',' << format_double(m.peak.amplitude) << ',';
    if (m.reference) out << format_double(m.reference->amplitude) << ',' << m.reference->iterations;
    else out << ',';
    out << '\n';
  }
  finish(out, path);
}

}  // namespace gridsearch::io
