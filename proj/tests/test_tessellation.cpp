#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "gridsearch/gridsearch.hpp"
#include "test_support.hpp"

using namespace gridsearch;
using gridsearch::testing::legal_shapes;

namespace {

std::set<Coord> as_set(const std::vector<Coord>& v) { return {v.begin(), v.end()}; }

std::set<Coord> block(std::size_t L, std::size_t r0, std::size_t c0, std::size_t d) {
  std::set<Coord> out;
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y) out.insert({(r0 + x) % L, (c0 + y) % L});
  return out;
}

}  // namespace

TEST(SquarePartition, WholeGridIsOneTile) {
  const auto p = square_partition(GridGeometry(4), 4);
  ASSERT_EQ(p.group_count(), 1u);
  EXPECT_EQ(p.group(0).size(), 16u);
  EXPECT_TRUE(validate_partition(p).ok());
}

TEST(SquarePartition, BlockDecomposition) {
  const auto p = square_partition(GridGeometry(8), 4);
  ASSERT_EQ(p.group_count(), 4u);
  const std::vector<Coord> origins{{0, 0}, {0, 4}, {4, 0}, {4, 4}};
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_EQ(as_set(p.group_coords(k)), block(8, origins[k].row, origins[k].col, 4));
  }
  EXPECT_EQ(square_partition(GridGeometry(20), 4).group_count(), 25u);
  for (std::size_t k = 0; k < 25; ++k) EXPECT_EQ(square_partition(GridGeometry(20), 4).group(k).size(), 16u);
}

TEST(SquarePartition, RejectsNonDivisor) {
  EXPECT_THROW(square_partition(GridGeometry(20), 3), std::invalid_argument);
  EXPECT_THROW(shifted_square_partition(GridGeometry(10), 4), std::invalid_argument);
  EXPECT_THROW(square_partition(GridGeometry(10), 0), std::invalid_argument);
}

TEST(ShiftedSquarePartition, SingleTileIsRelabeling) {
  const auto p = shifted_square_partition(GridGeometry(4), 4);
  ASSERT_EQ(p.group_count(), 1u);
  EXPECT_EQ(as_set(p.group_coords(0)), block(4, 0, 0, 4));
}

TEST(ShiftedSquarePartition, TilesWrapOnTheTorus) {
  const auto p = shifted_square_partition(GridGeometry(8), 4);
  ASSERT_EQ(p.group_count(), 4u);
  std::vector<std::set<Coord>> groups;
  for (std::size_t k = 0; k < 4; ++k) groups.push_back(as_set(p.group_coords(k)));
  const std::set<Coord> centre = block(8, 2, 2, 4);
  std::set<Coord> corner;
  for (std::size_t r : {6u, 7u, 0u, 1u})
    for (std::size_t c : {6u, 7u, 0u, 1u}) corner.insert({r, c});
  EXPECT_NE(std::find(groups.begin(), groups.end(), centre), groups.end());
  EXPECT_NE(std::find(groups.begin(), groups.end(), corner), groups.end());
  EXPECT_TRUE(validate_partition(p).ok());
}

TEST(ShiftedSquarePartition, EachShiftedTileOverlapsFourAlignedTiles) {
  // Brute-force intersection count on L=8, d=4.
  const GridGeometry g(8);
  const auto aligned = square_partition(g, 4);
  const auto shifted = shifted_square_partition(g, 4);
  for (std::size_t s = 0; s < shifted.group_count(); ++s) {
    const auto sset = as_set(shifted.group_coords(s));
    std::size_t hits = 0;
    for (std::size_t a = 0; a < aligned.group_count(); ++a) {
      const auto aset = as_set(aligned.group_coords(a));
      if (std::any_of(sset.begin(), sset.end(), [&](const Coord& c) { return aset.count(c) > 0; })) ++hits;
    }
    EXPECT_EQ(hits, 4u) << "shifted tile " << s;
  }
}

TEST(CrossPartition, LatticeTilesTheTorus) {
  // Independent check: every cell is within torus Manhattan distance 1 of
  // exactly one center (i + 2j = 0 mod 5).
  for (std::size_t L : {5u, 10u, 20u}) {
    std::size_t centers = 0;
    for (std::size_t i = 0; i < L; ++i)
      for (std::size_t j = 0; j < L; ++j) {
        std::size_t covering = 0;
        for (std::size_t ci = 0; ci < L; ++ci)
          for (std::size_t cj = 0; cj < L; ++cj) {
            if ((ci + 2 * cj) % 5 != 0) continue;
            const auto di = gridsearch::ring_distance(i, ci, L);
            const auto dj = gridsearch::ring_distance(j, cj, L);
            if (di + dj <= 1) ++covering;
          }
        EXPECT_EQ(covering, 1u) << "L=" << L << " cell " << i << "," << j;
        if ((i + 2 * j) % 5 == 0) ++centers;
      }
    EXPECT_EQ(centers, L * L / 5);
  }

  EXPECT_EQ(cross_partition(GridGeometry(5)).group_count(), 5u);
  EXPECT_EQ(cross_partition(GridGeometry(10)).group_count(), 20u);
  EXPECT_TRUE(validate_partition(cross_partition(GridGeometry(5))).ok());
  EXPECT_TRUE(validate_partition(cross_partition(GridGeometry(10))).ok());
}

TEST(CrossPartition, GroupsAreVonNeumannCrosses) {
  const GridGeometry g(10);
  const auto p = cross_partition(g);
  for (std::size_t k = 0; k < p.group_count(); ++k) {
    const auto cells = p.group_coords(k);
    ASSERT_EQ(cells.size(), 5u);
    const auto c = cells.front();
    EXPECT_EQ((c.row + 2 * c.col) % 5, 0u);
    const auto i = static_cast<std::int64_t>(c.row), j = static_cast<std::int64_t>(c.col);
    const std::set<Coord> expect{make_coord(g, i, j), make_coord(g, i + 1, j), make_coord(g, i - 1, j),
                                 make_coord(g, i, j + 1), make_coord(g, i, j - 1)};
    EXPECT_EQ(as_set(cells), expect);
  }
}

TEST(CrossPartition, RejectsSidesNotDivisibleByFive) {
  EXPECT_THROW(cross_partition(GridGeometry(8)), std::invalid_argument);
}

TEST(FourCornersPartition, Construction) {
  const auto p = four_corners_partition(GridGeometry(4), 2);
  ASSERT_EQ(p.group_count(), 4u);
  EXPECT_EQ(as_set(p.group_coords(0)), (std::set<Coord>{{0, 0}, {2, 0}, {0, 2}, {2, 2}}));
  const auto p8 = four_corners_partition(GridGeometry(8), 2);
  EXPECT_EQ(p8.group_count(), 16u);
  EXPECT_TRUE(validate_partition(p8).ok());
  for (std::size_t d : {1u, 2u, 3u, 6u}) {
    const auto q = four_corners_partition(GridGeometry(12), d);
    for (std::size_t k = 0; k < q.group_count(); ++k) EXPECT_EQ(q.group(k).size(), 4u);
  }
  EXPECT_THROW(four_corners_partition(GridGeometry(6), 2), std::invalid_argument);
}

TEST(ValidatePartition, ReportsDuplicatesAndMissingCells) {
  const GridGeometry g(8);
  const auto sq = square_partition(g, 4);
  EXPECT_TRUE(validate_partition(sq).ok());

  auto g0 = sq.group_coords(0);
  const Partition twice(g, PartitionKind::custom, 4, {g0, g0});
  const auto r1 = validate_partition(twice);
  EXPECT_FALSE(r1.ok());
  EXPECT_EQ(r1.duplicated.size(), 16u);

  std::vector<std::vector<Coord>> groups;
  for (std::size_t k = 0; k < sq.group_count(); ++k) groups.push_back(sq.group_coords(k));
  groups[2].pop_back();
  const auto r2 = validate_partition(Partition(g, PartitionKind::custom, 4, groups));
  EXPECT_FALSE(r2.ok());
  EXPECT_EQ(r2.missing.size(), 1u);
  EXPECT_TRUE(r2.duplicated.empty());

  groups[2].clear();
  EXPECT_EQ(validate_partition(Partition(g, PartitionKind::custom, 4, groups)).empty_groups, 1u);
}

TEST(PartitionProperties, EveryGeneratorTilesEveryLegalGrid) {
  for (std::size_t L = 2; L <= 40; ++L) {
    const GridGeometry g(L);
    for (auto [shape, d] : legal_shapes(L)) {
      for (const auto& p : {local_partition(shape, g, d), dispersion_partition(shape, g, d)}) {
        ASSERT_TRUE(validate_partition(p).ok()) << "L=" << L << " " << to_string(shape) << " d=" << d;
        std::size_t total = 0;
        for (std::size_t k = 0; k < p.group_count(); ++k) total += p.group(k).size();
        EXPECT_EQ(total, g.cell_count());
      }
    }
  }
}

TEST(PartitionProperties, GroupIndicatorsAreOrthonormal) {
  for (std::size_t L : {2u, 4u, 5u, 6u, 8u, 10u}) {
    const GridGeometry g(L);
    for (auto [shape, d] : legal_shapes(L)) {
      const auto p = dispersion_partition(shape, g, d);
      const std::size_t m = p.group_count();
      std::vector<std::vector<double>> u(m, std::vector<double>(g.cell_count(), 0.0));
      for (std::size_t k = 0; k < m; ++k) {
        const double w = 1.0 / std::sqrt(static_cast<double>(p.group(k).size()));
        for (auto o : p.group(k)) u[k][o] = w;
      }
      double worst = 0.0;
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
          double dot = 0.0;
          for (std::size_t o = 0; o < g.cell_count(); ++o) dot += u[a][o] * u[b][o];
          worst = std::max(worst, std::abs(dot - (a == b ? 1.0 : 0.0)));
        }
      EXPECT_LE(worst, 1e-12) << "L=" << L << " " << to_string(shape) << " d=" << d;
    }
  }
}

TEST(PartitionProperties, TranslationPreservesValidity) {
  std::mt19937_64 rng(7);
  for (std::size_t L : {4u, 8u, 10u, 20u}) {
    const GridGeometry g(L);
    for (auto [shape, d] : legal_shapes(L)) {
      const auto p = local_partition(shape, g, d);
      for (int trial = 0; trial < 5; ++trial) {
        const auto di = static_cast<std::int64_t>(rng() % 41) - 20;
        const auto dj = static_cast<std::int64_t>(rng() % 41) - 20;
        EXPECT_TRUE(validate_partition(translate(p, di, dj)).ok());
      }
    }
  }
}

TEST(PartitionCost, FollowsRegionShape) {
  const GridGeometry g(20);
  EXPECT_EQ(square_partition(g, 4).nominal_cost(), 4u);
  EXPECT_EQ(shifted_square_partition(g, 4).nominal_cost(), 4u);
  EXPECT_EQ(four_corners_partition(g, 2).nominal_cost(), 2u);
  EXPECT_EQ(cross_partition(g).nominal_cost(), 1u);
}

TEST(TessellationRules, ViolationMessages) {
  EXPECT_EQ(tessellation_violation(Tessellation::square, 20, 4), "");
  EXPECT_NE(tessellation_violation(Tessellation::square, 20, 3), "");
  EXPECT_EQ(tessellation_violation(Tessellation::cross, 20, 4), "");
  EXPECT_NE(tessellation_violation(Tessellation::cross, 16, 4), "");
  EXPECT_NE(tessellation_violation(Tessellation::four_corners, 20, 4), "");
  EXPECT_EQ(tessellation_violation(Tessellation::four_corners, 20, 5), "");
}
