#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gridsearch/analysis.hpp"
#include "gridsearch/geometry.hpp"
#include "gridsearch/operators.hpp"
#include "gridsearch/state.hpp"
#include "gridsearch/tessellation.hpp"
#include "gridsearch/trace.hpp"

namespace gridsearch {

enum class Step { oracle, local_diffusion, dispersion };

/// Reading of the round U_w U_L U_w U_A.
///   ltr: oracle, local, oracle, dispersion (operators applied as written).
///   rtl: dispersion, oracle, local, oracle (operator-product convention).
/// ltr is the default: it reproduces the published amplitude table.
enum class OperatorOrder { ltr, rtl };

inline OperatorOrder parse_order(std::string_view s) {
  if (s == "ltr") return OperatorOrder::ltr;
  if (s == "rtl") return OperatorOrder::rtl;
  throw std::invalid_argument("unknown operator order '" + std::string(s) + "' (expected ltr or rtl)");
}

inline std::string_view to_string(OperatorOrder o) noexcept {
  return o == OperatorOrder::ltr ? "ltr" : "rtl";
}

inline std::vector<Step> schedule_for(OperatorOrder order) {
  if (order == OperatorOrder::ltr) {
    return {Step::oracle, Step::local_diffusion, Step::oracle, Step::dispersion};
  }
  return {Step::dispersion, Step::oracle, Step::local_diffusion, Step::oracle};
}

inline std::size_t default_horizon(std::size_t cell_count) {
  return static_cast<std::size_t>(std::ceil(4.0 * std::sqrt(static_cast<double>(cell_count))));
}

// Tolerance on |<psi|psi> - 1| after `applications` operator applications.
inline double norm_tolerance(std::uint64_t applications) {
  return 1e-9 * (1.0 + static_cast<double>(applications));
}

struct RunConfig {
  GridGeometry geometry;
  MarkedSet marked;
  Partition local;
  Partition dispersion;
  std::vector<Step> schedule;
  std::size_t max_iterations;
  std::size_t snapshot_stride = 0;  // 0 disables snapshots
  PeakRule peak_rule = PeakRule::first;
};

/// Square 4x4 tiles with their floor(d/2)-shifted partner, ltr order and a
/// ceil(4 sqrt(n)) horizon unless overridden.
inline RunConfig make_run_config(const GridGeometry& g, const MarkedSet& marked,
                                 Tessellation shape = Tessellation::square, std::size_t d = 4,
                                 OperatorOrder order = OperatorOrder::ltr) {
  return RunConfig{g,
                   marked,
                   local_partition(shape, g, d),
                   dispersion_partition(shape, g, d),
                   schedule_for(order),
                   default_horizon(g.cell_count())};
}

inline std::vector<std::string> config_violations(const RunConfig& c) {
  std::vector<std::string> out;
  if (c.schedule.empty()) out.emplace_back("schedule is empty");
  if (c.max_iterations == 0) out.emplace_back("max_iterations must be positive");
  if (c.marked.grid_side() != c.geometry.side()) out.emplace_back("marked set belongs to a different grid");
  for (const Partition* p : {&c.local, &c.dispersion}) {
    const auto name = p == &c.local ? std::string("local partition") : std::string("dispersion partition");
    if (!(p->geometry() == c.geometry)) {
      out.push_back(name + " geometry does not match the grid");
      continue;
    }
    const auto report = validate_partition(*p);
    if (!report.ok()) out.push_back(name + ": " + report.message());
  }
  return out;
}

namespace detail {

inline void check_norm(const GridState& s, std::uint64_t applications, double& max_drift) {
  const double drift = std::abs(s.norm_squared() - 1.0);
  if (drift > max_drift) max_drift = drift;
  if (drift > norm_tolerance(applications)) {
    throw std::runtime_error("norm drift " + std::to_string(drift) + " after " +
                             std::to_string(applications) + " operator applications");
  }
}

inline void record(SimulationTrace& t, const GridState& s, const MarkedSet& marked) {
  std::vector<double> items;
  items.reserve(marked.size());
  double total = 0.0;
  for (auto o : marked.offsets()) {
    items.push_back(s[o] * s[o]);
    total += items.back();
  }
  t.marked_probability.push_back(total);
  t.item_probability.push_back(std::move(items));
}

}  // namespace detail

/// Runs the diffuse/disperse search from the uniform state for
/// `max_iterations` rounds. The state norm is checked after every operator
/// application and never renormalized.
inline SimulationTrace run(const RunConfig& config) {
  if (auto v = config_violations(config); !v.empty()) {
    std::string msg = "invalid run config:";
    for (const auto& e : v) msg += "\n  - " + e;
    throw std::invalid_argument(msg);
  }
  const OracleSpec oracle{config.marked};
  const DiffusionSpec local{config.local};
  const DiffusionSpec dispersion{config.dispersion};

  std::uint64_t steps_per_round = 0;
  std::size_t diffusions_per_round = 0;
  for (auto step : config.schedule) {
    switch (step) {
      case Step::oracle: steps_per_round += 1; break;
      case Step::local_diffusion:
        steps_per_round += config.local.nominal_cost();
        ++diffusions_per_round;
        break;
      case Step::dispersion:
        steps_per_round += config.dispersion.nominal_cost();
        ++diffusions_per_round;
        break;
    }
  }

  GridState state = uniform_state(config.geometry);
  SimulationTrace trace;
  trace.cell_count = config.geometry.cell_count();
  trace.marked_count = config.marked.size();
  trace.diffusions_per_round = diffusions_per_round;
  trace.initial_probability = marked_probability(state, config.marked);
  // Building the superposition costs one horizontal plus one vertical sweep.
  trace.counters.nominal_steps = 2 * config.geometry.side();
  trace.marked_probability.reserve(config.max_iterations);
  trace.nominal_steps.reserve(config.max_iterations);

  std::uint64_t applications = 0;
  for (std::size_t it = 1; it <= config.max_iterations; ++it) {
    for (auto step : config.schedule) {
      switch (step) {
        case Step::oracle:
          apply_oracle(state, oracle);
          ++trace.counters.oracle_calls;
          break;
        case Step::local_diffusion:
          apply_partition_diffusion(state, local);
          ++trace.counters.diffusion_applications;
          break;
        case Step::dispersion:
          apply_partition_diffusion(state, dispersion);
          ++trace.counters.diffusion_applications;
          break;
      }
      detail::check_norm(state, ++applications, trace.max_norm_drift);
    }
    trace.counters.nominal_steps += steps_per_round;
    detail::record(trace, state, config.marked);
    trace.nominal_steps.push_back(trace.counters.nominal_steps);
    if (config.snapshot_stride != 0 && it % config.snapshot_stride == 0) {
      trace.snapshots.emplace(it, snapshot(state));
    }
  }
  trace.peak = find_peak(trace.marked_probability, config.peak_rule);
  return trace;
}

/// Global Grover search on the complete graph over n items, the first
/// `marked_count` of which are marked. Round k applies U_w then U_s.
inline SimulationTrace run_grover_reference(std::size_t n, std::size_t marked_count,
                                            std::size_t iterations) {
  if (marked_count == 0 || marked_count >= n) {
    throw std::invalid_argument("grover reference needs 0 < marked_count < n (got " +
                                std::to_string(marked_count) + " of " + std::to_string(n) + ")");
  }
  std::vector<double> amps(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<std::size_t> marked(marked_count);
  for (std::size_t j = 0; j < marked_count; ++j) marked[j] = j;

  auto measure = [&](std::vector<double>* items) {
    double p = 0.0;
    for (auto o : marked) {
      p += amps[o] * amps[o];
      if (items) items->push_back(amps[o] * amps[o]);
    }
    return p;
  };

  SimulationTrace trace;
  trace.cell_count = n;
  trace.marked_count = marked_count;
  trace.diffusions_per_round = 1;
  trace.initial_probability = measure(nullptr);
  for (std::size_t k = 1; k <= iterations; ++k) {
    kernels::negate(amps, marked);
    kernels::reflect_global_mean(amps);
    ++trace.counters.oracle_calls;
    ++trace.counters.diffusion_applications;
    std::vector<double> items;
    trace.marked_probability.push_back(measure(&items));
    trace.item_probability.push_back(std::move(items));
    trace.nominal_steps.push_back(0);
    double norm = 0.0;
    for (double a : amps) norm += a * a;
    trace.max_norm_drift = std::max(trace.max_norm_drift, std::abs(norm - 1.0));
  }
  if (!trace.marked_probability.empty()) trace.peak = first_peak(trace.marked_probability);
  return trace;
}

/// Grid-embedded Grover reference, used for side-by-side amplitude pictures.
inline SimulationTrace run_grover_reference(const GridGeometry& g, const MarkedSet& marked,
                                            std::size_t iterations, std::size_t snapshot_stride = 0) {
  if (marked.grid_side() != g.side()) throw std::invalid_argument("marked set belongs to a different grid");
  if (marked.size() >= g.cell_count()) throw std::invalid_argument("grover reference needs marked_count < n");
  const OracleSpec oracle{marked};
  GridState state = uniform_state(g);
  SimulationTrace trace;
  trace.cell_count = g.cell_count();
  trace.marked_count = marked.size();
  trace.diffusions_per_round = 1;
  trace.initial_probability = marked_probability(state, marked);
  std::uint64_t applications = 0;
  for (std::size_t k = 1; k <= iterations; ++k) {
    apply_oracle(state, oracle);
    detail::check_norm(state, ++applications, trace.max_norm_drift);
    apply_global_grover(state);
    detail::check_norm(state, ++applications, trace.max_norm_drift);
    ++trace.counters.oracle_calls;
    ++trace.counters.diffusion_applications;
    detail::record(trace, state, marked);
    trace.nominal_steps.push_back(0);
    if (snapshot_stride != 0 && k % snapshot_stride == 0) trace.snapshots.emplace(k, snapshot(state));
  }
  if (!trace.marked_probability.empty()) trace.peak = first_peak(trace.marked_probability);
  return trace;
}

// Closed-form Grover success probability after k rounds: sin^2((2k+1) theta).
inline double grover_closed_form(std::size_t n, std::size_t marked_count, std::size_t k) {
  const double theta = std::asin(std::sqrt(static_cast<double>(marked_count) / static_cast<double>(n)));
  const double s = std::sin((2.0 * static_cast<double>(k) + 1.0) * theta);
  return s * s;
}

}  // namespace gridsearch
