// Searches a 20 x 20 torus for one marked cell and prints how the marked
// probability and the surrounding "pyramid" of probability evolve.

#include <cstdio>

#include "gridsearch/gridsearch.hpp"

int main() {
  using namespace gridsearch;

  const GridGeometry grid(20);
  const MarkedSet marked(grid, default_marked_cell(grid));

  auto config = make_run_config(grid, marked);
  config.max_iterations = 20;
  const auto trace = run(config);

  std::printf("round  P(marked)\n");
  for (std::size_t k = 0; k < trace.iterations(); ++k) {
    std::printf("%5zu  %.4f%s\n", k + 1, trace.marked_probability[k],
                k + 1 == trace.peak.iteration ? "  <- first peak" : "");
  }

  // Re-run to the peak to look at the neighbourhood of the marked cell.
  config.max_iterations = trace.peak.iteration;
  config.snapshot_stride = trace.peak.iteration;
  const auto at_peak = run(config);
  const GridState state(grid, at_peak.snapshots.at(trace.peak.iteration).values);
  for (std::size_t r = 0; r <= 4; ++r) {
    std::printf("mass within Chebyshev radius %zu: %.4f\n", r, neighborhood_mass(state, marked, r));
  }
  std::printf("nominal walk steps to the peak: %llu\n",
              static_cast<unsigned long long>(at_peak.counters.nominal_steps));
}
