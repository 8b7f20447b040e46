#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gridsearch/geometry.hpp"
#include "gridsearch/state.hpp"
#include "gridsearch/trace.hpp"

namespace gridsearch {

// How a peak is picked from a probability trace.
//   first:  first round whose successor is lower (the first hump);
//           falls back to `global` for traces that never descend.
//   global: earliest round attaining the maximum over the whole horizon.
enum class PeakRule { first, global };

inline PeakRule parse_peak_rule(std::string_view s) {
  if (s == "first") return PeakRule::first;
  if (s == "global") return PeakRule::global;
  throw std::invalid_argument("unknown peak rule '" + std::string(s) + "' (expected first or global)");
}

inline std::string_view to_string(PeakRule r) noexcept {
  return r == PeakRule::first ? "first" : "global";
}

namespace detail {

inline PeakSummary summary_at(std::span<const double> probs, std::size_t idx) {
  const double p = probs[idx];
  return PeakSummary{idx + 1, p, std::sqrt(p)};
}

}  // namespace detail

inline PeakSummary global_peak(std::span<const double> probs) {
  if (probs.empty()) throw std::invalid_argument("peak of an empty trace");
  std::size_t best = 0;
  for (std::size_t k = 1; k < probs.size(); ++k) {
    if (probs[k] > probs[best]) best = k;
  }
  return detail::summary_at(probs, best);
}

inline PeakSummary first_peak(std::span<const double> probs) {
  if (probs.empty()) throw std::invalid_argument("peak of an empty trace");
  for (std::size_t k = 0; k + 1 < probs.size(); ++k) {
    if (probs[k + 1] < probs[k]) return detail::summary_at(probs, k);
  }
  return global_peak(probs);
}

inline PeakSummary find_peak(std::span<const double> probs, PeakRule rule) {
  return rule == PeakRule::first ? first_peak(probs) : global_peak(probs);
}

// Earliest global maximum of the trace's marked probability.
inline PeakSummary peak(const SimulationTrace& trace) { return global_peak(trace.marked_probability); }

struct ScalingFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double residual = 0.0;  // RMS of log-space residuals
};

/// Least-squares fit of log(iterations) = log(prefactor) + exponent * log(n).
inline ScalingFit scaling_fit(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) {
    throw std::invalid_argument("scaling fit needs at least 3 points, got " +
                                std::to_string(points.size()));
  }
  double sx = 0, sy = 0;
  std::vector<std::pair<double, double>> logs;
  logs.reserve(points.size());
  for (auto [n, it] : points) {
    if (!(n > 0) || !(it > 0)) throw std::invalid_argument("scaling fit needs positive values");
    logs.emplace_back(std::log(n), std::log(it));
    sx += logs.back().first;
    sy += logs.back().second;
  }
  const double m = static_cast<double>(logs.size());
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0;
  for (auto [x, y] : logs) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (sxx == 0) throw std::invalid_argument("scaling fit needs at least two distinct n");
  ScalingFit fit;
  fit.exponent = sxy / sxx;
  const double intercept = my - fit.exponent * mx;
  fit.prefactor = std::exp(intercept);
  double ss = 0;
  for (auto [x, y] : logs) {
    const double r = y - (intercept + fit.exponent * x);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / m);
  return fit;
}

// Probability within torus Chebyshev distance `radius` of any marked cell.
inline double neighborhood_mass(const GridState& s, const MarkedSet& marked, std::size_t radius) {
  const auto& g = s.geometry();
  double mass = 0.0;
  for (std::size_t o = 0; o < g.cell_count(); ++o) {
    const auto c = coord_of(g, o);
    for (const auto& m : marked.cells()) {
      if (torus_chebyshev(g, c, m) <= radius) {
        mass += s[o] * s[o];
        break;
      }
    }
  }
  return mass;
}

struct MultiMarkedSummary {
  PeakSummary combined;
  std::vector<std::pair<Coord, double>> per_item;  // probability at the combined peak
};

inline MultiMarkedSummary multi_marked_summary(const SimulationTrace& trace, const MarkedSet& marked,
                                               PeakRule rule = PeakRule::first) {
  if (marked.size() < 2) {
    throw std::invalid_argument("multi-marked summary needs at least 2 marked cells; use peak()");
  }
  if (trace.marked_count != marked.size() || trace.item_probability.size() != trace.iterations()) {
    throw std::invalid_argument("trace does not carry per-item probabilities for this marked set");
  }
  MultiMarkedSummary out;
  out.combined = find_peak(trace.marked_probability, rule);
  const auto& row = trace.item_probability[out.combined.iteration - 1];
  for (std::size_t j = 0; j < marked.size(); ++j) out.per_item.emplace_back(marked.cells()[j], row[j]);
  return out;
}

}  // namespace gridsearch
