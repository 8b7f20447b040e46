#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gridsearch/geometry.hpp"

namespace gridsearch {

/// Real amplitude vector over the grid, row-major. Every operator in this
/// library is a real reflection, so complex storage is never needed.
class GridState {
public:
  GridState(GridGeometry g, std::vector<double> amplitudes)
      : geometry_(g), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != geometry_.cell_count()) {
      throw std::invalid_argument("state has " + std::to_string(amplitudes_.size()) +
                                  " amplitudes, geometry needs " +
                                  std::to_string(geometry_.cell_count()));
    }
  }

  const GridGeometry& geometry() const noexcept { return geometry_; }
  std::size_t size() const noexcept { return amplitudes_.size(); }

  std::span<double> amplitudes() noexcept { return amplitudes_; }
  std::span<const double> amplitudes() const noexcept { return amplitudes_; }

  double& operator[](std::size_t offset) { return amplitudes_[offset]; }
  double operator[](std::size_t offset) const { return amplitudes_[offset]; }
  double at(Coord c) const { return amplitudes_[cell_index(geometry_, c)]; }

  double norm_squared() const noexcept {
    double s = 0.0;
    for (double a : amplitudes_) s += a * a;
    return s;
  }

  friend bool operator==(const GridState&, const GridState&) = default;

private:
  GridGeometry geometry_;
  std::vector<double> amplitudes_;
};

inline GridState uniform_state(const GridGeometry& g) {
  const double a = 1.0 / std::sqrt(static_cast<double>(g.cell_count()));
  return GridState(g, std::vector<double>(g.cell_count(), a));
}

inline GridState basis_state(const GridGeometry& g, Coord c) {
  std::vector<double> a(g.cell_count(), 0.0);
  a[cell_index(g, c)] = 1.0;
  return GridState(g, std::move(a));
}

// Born-rule probability of measuring any marked cell.
inline double marked_probability(const GridState& s, const MarkedSet& marked) {
  double p = 0.0;
  for (auto o : marked.offsets()) p += s[o] * s[o];
  return p;
}

}  // namespace gridsearch
