#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "gridsearch/state.hpp"

namespace gridsearch {

// Row-major L x L copy of a state's amplitudes.
struct AmplitudeGrid {
  std::size_t side = 0;
  std::vector<double> values;

  double at(std::size_t i, std::size_t j) const { return values[i * side + j]; }
  friend bool operator==(const AmplitudeGrid&, const AmplitudeGrid&) = default;
};

inline AmplitudeGrid snapshot(const GridState& s) {
  const auto a = s.amplitudes();
  return AmplitudeGrid{s.geometry().side(), std::vector<double>(a.begin(), a.end())};
}

struct PeakSummary {
  std::size_t iteration = 0;  // 1-based round index
  double probability = 0.0;
  double amplitude = 0.0;  // sqrt(probability)
};

struct CostCounters {
  std::uint64_t oracle_calls = 0;
  std::uint64_t diffusion_applications = 0;
  std::uint64_t nominal_steps = 0;
};

/// Per-round record of one simulation. Entry k of `marked_probability`
/// holds the measurement after round k + 1; the pre-run value is kept
/// separately in `initial_probability`.
struct SimulationTrace {
  std::size_t cell_count = 0;
  std::size_t marked_count = 0;
  double initial_probability = 0.0;
  std::vector<double> marked_probability;
  // item_probability[k][j]: probability of the j-th marked cell (row-major
  // order) after round k + 1.
  std::vector<std::vector<double>> item_probability;
  // Cumulative nominal walk steps after each round, setup included.
  std::vector<std::uint64_t> nominal_steps;
  std::map<std::size_t, AmplitudeGrid> snapshots;
  CostCounters counters;
  PeakSummary peak;
  // Diffusion applications per round (2 for the diffuse/disperse schedule).
  std::size_t diffusions_per_round = 0;
  double max_norm_drift = 0.0;

  std::size_t iterations() const noexcept { return marked_probability.size(); }
};

}  // namespace gridsearch
