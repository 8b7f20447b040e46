#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gridsearch/geometry.hpp"

namespace gridsearch {

enum class PartitionKind { square, shifted_square, cross, four_corners, custom };

inline std::string_view to_string(PartitionKind k) noexcept {
  switch (k) {
    case PartitionKind::square: return "square";
    case PartitionKind::shifted_square: return "shifted-square";
    case PartitionKind::cross: return "cross";
    case PartitionKind::four_corners: return "four-corners";
    case PartitionKind::custom: return "custom";
  }
  return "custom";
}

/// Disjoint groups of cells covering the grid. Each group supports one
/// uniform-superposition projector of a diffusion operator.
///
/// Groups are stored flattened: `group(k)` is a span of row-major offsets.
/// Generators always produce a perfect tiling; partitions assembled from
/// arbitrary groups must pass validate_partition before use in diffusion.
class Partition {
public:
  Partition(GridGeometry g, PartitionKind kind, std::size_t tile_param,
            const std::vector<std::vector<Coord>>& groups)
      : geometry_(g), kind_(kind), tile_param_(tile_param) {
    group_begin_.reserve(groups.size() + 1);
    group_begin_.push_back(0);
    for (const auto& grp : groups) {
      for (auto c : grp) cells_.push_back(cell_index(g, c));
      group_begin_.push_back(cells_.size());
    }
  }

  const GridGeometry& geometry() const noexcept { return geometry_; }
  PartitionKind kind() const noexcept { return kind_; }
  // Tile side / spacing d used to build the partition (5 for crosses).
  std::size_t tile_param() const noexcept { return tile_param_; }

  std::size_t group_count() const noexcept { return group_begin_.size() - 1; }

  std::span<const std::size_t> group(std::size_t k) const noexcept {
    return std::span<const std::size_t>(cells_).subspan(group_begin_[k],
                                                        group_begin_[k + 1] - group_begin_[k]);
  }

  std::vector<Coord> group_coords(std::size_t k) const {
    std::vector<Coord> out;
    for (auto o : group(k)) out.push_back(coord_of(geometry_, o));
    return out;
  }

  /// Robot steps charged per application: d for square-like regions, 1 for
  /// crosses (every cell is one step from the center).
  std::size_t nominal_cost() const noexcept {
    switch (kind_) {
      case PartitionKind::square:
      case PartitionKind::shifted_square:
      case PartitionKind::four_corners: return tile_param_;
      case PartitionKind::cross:
      case PartitionKind::custom: return 1;
    }
    return 1;
  }

private:
  GridGeometry geometry_;
  PartitionKind kind_;
  std::size_t tile_param_;
  std::vector<std::size_t> cells_;
  std::vector<std::size_t> group_begin_;
};

struct PartitionReport {
  std::vector<Coord> duplicated;  // cells seen more than once (listed once each)
  std::vector<Coord> missing;     // cells in no group
  std::size_t empty_groups = 0;

  bool ok() const noexcept { return duplicated.empty() && missing.empty() && empty_groups == 0; }

  std::string message() const {
    if (ok()) return "ok";
    std::ostringstream os;
    os << duplicated.size() << " duplicated cell(s), " << missing.size() << " missing cell(s), "
       << empty_groups << " empty group(s)";
    return os.str();
  }
};

inline PartitionReport validate_partition(const Partition& p) {
  const auto& g = p.geometry();
  std::vector<std::uint32_t> seen(g.cell_count(), 0);
  PartitionReport report;
  for (std::size_t k = 0; k < p.group_count(); ++k) {
    const auto grp = p.group(k);
    if (grp.empty()) ++report.empty_groups;
    for (auto o : grp) ++seen[o];
  }
  for (std::size_t o = 0; o < seen.size(); ++o) {
    if (seen[o] == 0) report.missing.push_back(coord_of(g, o));
    if (seen[o] > 1) report.duplicated.push_back(coord_of(g, o));
  }
  return report;
}

namespace detail {

inline void require_divides(std::size_t divisor, std::size_t side, std::string_view what) {
  if (divisor == 0 || side % divisor != 0) {
    throw std::invalid_argument(std::string(what) + ": " + std::to_string(divisor) +
                                " does not divide grid side " + std::to_string(side));
  }
}

// Aligned d x d blocks with origins (d*I + shift, d*J + shift).
inline std::vector<std::vector<Coord>> square_blocks(const GridGeometry& g, std::size_t d,
                                                     std::size_t shift) {
  const auto L = static_cast<std::int64_t>(g.side());
  const auto D = static_cast<std::int64_t>(d);
  const auto s = static_cast<std::int64_t>(shift);
  std::vector<std::vector<Coord>> groups;
  for (std::int64_t I = 0; I < L / D; ++I) {
    for (std::int64_t J = 0; J < L / D; ++J) {
      std::vector<Coord> grp;
      grp.reserve(d * d);
      for (std::int64_t x = 0; x < D; ++x) {
        for (std::int64_t y = 0; y < D; ++y) grp.push_back(make_coord(g, D * I + x + s, D * J + y + s));
      }
      groups.push_back(std::move(grp));
    }
  }
  return groups;
}

}  // namespace detail

inline Partition square_partition(const GridGeometry& g, std::size_t d) {
  detail::require_divides(d, g.side(), "square tessellation");
  return Partition(g, PartitionKind::square, d, detail::square_blocks(g, d, 0));
}

// Same blocks as square_partition, origins moved by floor(d/2) in both axes.
inline Partition shifted_square_partition(const GridGeometry& g, std::size_t d) {
  detail::require_divides(d, g.side(), "shifted square tessellation");
  return Partition(g, PartitionKind::shifted_square, d, detail::square_blocks(g, d, d / 2));
}

/// Von Neumann crosses (center plus four neighbors). Centers are the cells
/// with (i - shift) + 2 (j - shift) = 0 mod 5, a perfect Lee-sphere tiling of
/// the torus whenever 5 divides L.
inline Partition cross_partition(const GridGeometry& g, std::size_t shift = 0) {
  detail::require_divides(5, g.side(), "cross tessellation");
  const auto L = static_cast<std::int64_t>(g.side());
  const auto s = static_cast<std::int64_t>(shift);
  std::vector<std::vector<Coord>> groups;
  for (std::int64_t i = 0; i < L; ++i) {
    for (std::int64_t j = 0; j < L; ++j) {
      if ((((i - s) + 2 * (j - s)) % 5 + 5) % 5 != 0) continue;
      groups.push_back({make_coord(g, i, j), make_coord(g, i - 1, j), make_coord(g, i + 1, j),
                        make_coord(g, i, j - 1), make_coord(g, i, j + 1)});
    }
  }
  return Partition(g, PartitionKind::cross, 5, groups);
}

/// Quadruples {(o + a + x, o' + b + y) : x, y in {0, d}} inside each 2d x 2d
/// block, one per (a, b) in [0, d)^2. Block origins move by `shift`.
inline Partition four_corners_partition(const GridGeometry& g, std::size_t d,
                                        std::size_t shift = 0) {
  detail::require_divides(2 * d, g.side(), "four-corners tessellation");
  const auto L = static_cast<std::int64_t>(g.side());
  const auto D = static_cast<std::int64_t>(d);
  const auto s = static_cast<std::int64_t>(shift);
  std::vector<std::vector<Coord>> groups;
  for (std::int64_t I = 0; I < L / (2 * D); ++I) {
    for (std::int64_t J = 0; J < L / (2 * D); ++J) {
      for (std::int64_t a = 0; a < D; ++a) {
        for (std::int64_t b = 0; b < D; ++b) {
          const std::int64_t r = 2 * D * I + a + s;
          const std::int64_t c = 2 * D * J + b + s;
          groups.push_back({make_coord(g, r, c), make_coord(g, r + D, c), make_coord(g, r, c + D),
                            make_coord(g, r + D, c + D)});
        }
      }
    }
  }
  return Partition(g, PartitionKind::four_corners, d, groups);
}

// Moves every cell by (di, dj) on the torus. Kind and cost are preserved.
inline Partition translate(const Partition& p, std::int64_t di, std::int64_t dj) {
  const auto& g = p.geometry();
  std::vector<std::vector<Coord>> groups;
  groups.reserve(p.group_count());
  for (std::size_t k = 0; k < p.group_count(); ++k) {
    std::vector<Coord> grp;
    for (auto o : p.group(k)) {
      const auto c = coord_of(g, o);
      grp.push_back(make_coord(g, static_cast<std::int64_t>(c.row) + di,
                               static_cast<std::int64_t>(c.col) + dj));
    }
    groups.push_back(std::move(grp));
  }
  return Partition(g, p.kind(), p.tile_param(), groups);
}

/// Region shapes selectable for the diffuse/disperse pair.
enum class Tessellation { square, cross, four_corners };

inline Tessellation parse_tessellation(std::string_view s) {
  if (s == "square") return Tessellation::square;
  if (s == "cross") return Tessellation::cross;
  if (s == "four-corners" || s == "corners") return Tessellation::four_corners;
  throw std::invalid_argument("unknown tessellation '" + std::string(s) +
                              "' (expected square, cross or four-corners)");
}

inline std::string_view to_string(Tessellation t) noexcept {
  switch (t) {
    case Tessellation::square: return "square";
    case Tessellation::cross: return "cross";
    case Tessellation::four_corners: return "four-corners";
  }
  return "square";
}

// Divisibility rule for the given shape; empty string when legal.
inline std::string tessellation_violation(Tessellation t, std::size_t side, std::size_t d) {
  std::size_t divisor = d;
  if (t == Tessellation::cross) divisor = 5;
  if (t == Tessellation::four_corners) divisor = 2 * d;
  if (divisor == 0) return "tile parameter d must be positive";
  if (side % divisor != 0) {
    return std::to_string(divisor) + " does not divide grid side " + std::to_string(side) +
           " (" + std::string(to_string(t)) + " tessellation)";
  }
  return {};
}

// Partition used by the local diffusion step.
inline Partition local_partition(Tessellation t, const GridGeometry& g, std::size_t d) {
  switch (t) {
    case Tessellation::square: return square_partition(g, d);
    case Tessellation::cross: return cross_partition(g, 0);
    case Tessellation::four_corners: return four_corners_partition(g, d, 0);
  }
  throw std::invalid_argument("unknown tessellation");
}

// Partition used by the dispersion step: the local shape moved by floor(d/2).
inline Partition dispersion_partition(Tessellation t, const GridGeometry& g, std::size_t d) {
  switch (t) {
    case Tessellation::square: return shifted_square_partition(g, d);
    case Tessellation::cross: return cross_partition(g, 5 / 2);
    case Tessellation::four_corners: return four_corners_partition(g, d, d / 2);
  }
  throw std::invalid_argument("unknown tessellation");
}

}  // namespace gridsearch
