#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gridsearch {

// Cyclic L x L grid. All coordinate arithmetic wraps in both axes.
class GridGeometry {
public:
  explicit GridGeometry(std::size_t side) : side_(side) {
    if (side < 2) {
      throw std::invalid_argument("grid side must be >= 2, got " + std::to_string(side));
    }
  }

  std::size_t side() const noexcept { return side_; }
  std::size_t cell_count() const noexcept { return side_ * side_; }

  // Reduce any integer into [0, side).
  std::size_t wrap(std::int64_t v) const noexcept {
    const auto L = static_cast<std::int64_t>(side_);
    auto r = v % L;
    if (r < 0) r += L;
    return static_cast<std::size_t>(r);
  }

  friend bool operator==(const GridGeometry&, const GridGeometry&) = default;

private:
  std::size_t side_;
};

// Builds a geometry from a cell count; n must be a perfect square.
inline GridGeometry geometry_from_cells(std::size_t n) {
  std::size_t L = 0;
  while ((L + 1) * (L + 1) <= n) ++L;
  if (L * L != n) {
    throw std::invalid_argument("n = " + std::to_string(n) + " is not a perfect square");
  }
  return GridGeometry(L);
}

struct Coord {
  std::size_t row = 0;
  std::size_t col = 0;

  friend bool operator==(const Coord&, const Coord&) = default;
  friend auto operator<=>(const Coord&, const Coord&) = default;
};

// Normalizes signed coordinates onto the torus.
inline Coord make_coord(const GridGeometry& g, std::int64_t i, std::int64_t j) noexcept {
  return Coord{g.wrap(i), g.wrap(j)};
}

// Row-major offset of (i mod L, j mod L).
inline std::size_t cell_index(const GridGeometry& g, std::int64_t i, std::int64_t j) noexcept {
  return g.wrap(i) * g.side() + g.wrap(j);
}

inline std::size_t cell_index(const GridGeometry& g, Coord c) noexcept {
  return cell_index(g, static_cast<std::int64_t>(c.row), static_cast<std::int64_t>(c.col));
}

inline Coord coord_of(const GridGeometry& g, std::size_t offset) noexcept {
  return Coord{offset / g.side(), offset % g.side()};
}

// Shortest cyclic distance between two indices on a ring of length L.
inline std::size_t ring_distance(std::size_t a, std::size_t b, std::size_t L) noexcept {
  const std::size_t d = a > b ? a - b : b - a;
  return std::min(d, L - d);
}

// Chebyshev (king-move) distance on the torus.
inline std::size_t torus_chebyshev(const GridGeometry& g, Coord a, Coord b) noexcept {
  return std::max(ring_distance(a.row, b.row, g.side()), ring_distance(a.col, b.col, g.side()));
}

// Nonempty set of distinct cells; stored sorted by row-major offset.
class MarkedSet {
public:
  MarkedSet(const GridGeometry& g, std::vector<Coord> cells) : side_(g.side()) {
    if (cells.empty()) throw std::invalid_argument("marked set must not be empty");
    for (const auto& c : cells) {
      if (c.row >= g.side() || c.col >= g.side()) {
        throw std::invalid_argument("marked cell (" + std::to_string(c.row) + "," +
                                    std::to_string(c.col) + ") lies outside a " +
                                    std::to_string(g.side()) + "x" +
                                    std::to_string(g.side()) + " grid");
      }
      offsets_.push_back(cell_index(g, c));
    }
    std::sort(offsets_.begin(), offsets_.end());
    if (std::adjacent_find(offsets_.begin(), offsets_.end()) != offsets_.end()) {
      throw std::invalid_argument("marked cells must be distinct");
    }
    for (auto o : offsets_) cells_.push_back(coord_of(g, o));
  }

  MarkedSet(const GridGeometry& g, Coord single) : MarkedSet(g, std::vector<Coord>{single}) {}

  const std::vector<Coord>& cells() const noexcept { return cells_; }
  const std::vector<std::size_t>& offsets() const noexcept { return offsets_; }
  std::size_t size() const noexcept { return offsets_.size(); }
  std::size_t grid_side() const noexcept { return side_; }

private:
  std::size_t side_;
  std::vector<Coord> cells_;
  std::vector<std::size_t> offsets_;
};

// Default single-mark placement: (L/2 + 1, L/2 + 1), off every tile corner.
inline Coord default_marked_cell(const GridGeometry& g) noexcept {
  return make_coord(g, static_cast<std::int64_t>(g.side() / 2 + 1),
                    static_cast<std::int64_t>(g.side() / 2 + 1));
}

}  // namespace gridsearch
