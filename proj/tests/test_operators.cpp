#include <gtest/gtest.h>

#include <complex>

#include "gridsearch/gridsearch.hpp"
#include "test_support.hpp"

using namespace gridsearch;
using namespace gridsearch::testing;

namespace {

std::vector<Operator> all_operators(const GridGeometry& g) {
  std::vector<Operator> ops;
  ops.emplace_back(OracleSpec{MarkedSet(g, default_marked_cell(g))});
  ops.emplace_back(OracleSpec{MarkedSet(g, std::vector<Coord>{{0, 0}, {1, 1}})});
  ops.emplace_back(GlobalGrover{});
  for (auto [shape, d] : legal_shapes(g.side())) {
    ops.emplace_back(DiffusionSpec(local_partition(shape, g, d)));
    ops.emplace_back(DiffusionSpec(dispersion_partition(shape, g, d)));
  }
  return ops;
}

}  // namespace

TEST(Oracle, NegatesOnlyMarkedCells) {
  const GridGeometry g(4);
  auto s = uniform_state(g);
  const OracleSpec oracle{MarkedSet(g, Coord{1, 2})};
  apply_oracle(s, oracle);
  for (std::size_t o = 0; o < s.size(); ++o) EXPECT_DOUBLE_EQ(s[o], o == 6 ? -0.25 : 0.25);
  apply_oracle(s, oracle);
  EXPECT_EQ(s, uniform_state(g));
}

TEST(Oracle, LeavesUnmarkedSupportAlone) {
  const GridGeometry g(4);
  auto s = basis_state(g, {0, 0});
  apply_oracle(s, OracleSpec{MarkedSet(g, Coord{2, 2})});
  EXPECT_EQ(s, basis_state(g, {0, 0}));
}

TEST(Oracle, RejectsForeignMarkedSet) {
  auto s = uniform_state(GridGeometry(4));
  EXPECT_THROW(apply_oracle(s, OracleSpec{MarkedSet(GridGeometry(8), Coord{0, 0})}), std::invalid_argument);
}

TEST(PartitionDiffusion, ReflectsAboutGroupMean) {
  const GridGeometry g(2);
  auto s = basis_state(g, {0, 0});
  apply_partition_diffusion(s, DiffusionSpec(square_partition(g, 2)));
  EXPECT_DOUBLE_EQ(s[0], -0.5);
  EXPECT_DOUBLE_EQ(s[1], 0.5);
  EXPECT_DOUBLE_EQ(s[2], 0.5);
  EXPECT_DOUBLE_EQ(s[3], 0.5);
}

TEST(PartitionDiffusion, SingleTileMatchesGlobalReflection) {
  const GridGeometry g(4);
  // 2|s><s| - I written out by hand for n = 16.
  DenseMatrix expect(16);
  for (std::size_t r = 0; r < 16; ++r)
    for (std::size_t c = 0; c < 16; ++c) expect(r, c) = 2.0 / 16.0 - (r == c ? 1.0 : 0.0);
  std::mt19937_64 rng(1);
  const DiffusionSpec spec(square_partition(g, 4));
  for (int trial = 0; trial < 5; ++trial) {
    auto s = random_state(g, rng);
    const auto want = expect.apply(s.amplitudes());
    apply_partition_diffusion(s, spec);
    EXPECT_LE(max_abs_diff(s.amplitudes(), want), 1e-12);
  }
}

TEST(PartitionDiffusion, RejectsGeometryMismatchAndBadPartitions) {
  auto s = uniform_state(GridGeometry(8));
  EXPECT_THROW(apply_partition_diffusion(s, DiffusionSpec(square_partition(GridGeometry(4), 2))),
               std::invalid_argument);
  const GridGeometry g(4);
  const auto sq = square_partition(g, 2);
  EXPECT_THROW(DiffusionSpec(Partition(g, PartitionKind::custom, 2, {sq.group_coords(0)})), std::invalid_argument);
}

TEST(PartitionDiffusion, UniformStateIsFixed) {
  for (std::size_t L = 2; L <= 40; ++L) {
    const GridGeometry g(L);
    for (auto [shape, d] : legal_shapes(L)) {
      for (const auto& p : {local_partition(shape, g, d), dispersion_partition(shape, g, d)}) {
        auto s = uniform_state(g);
        apply_partition_diffusion(s, DiffusionSpec(p));
        EXPECT_LE(max_abs_diff(s.amplitudes(), uniform_state(g).amplitudes()), 1e-12)
            << "L=" << L << " " << to_string(p.kind()) << " d=" << d;
      }
    }
  }
}

TEST(PartitionDiffusion, AmplitudesStayInsideTheirGroup) {
  // Perturbing a cell outside group g must not change g's image.
  const GridGeometry g(8);
  std::mt19937_64 rng(3);
  for (auto [shape, d] : legal_shapes(8)) {
    const auto p = dispersion_partition(shape, g, d);
    const DiffusionSpec spec(p);
    auto base = random_state(g, rng);
    auto perturbed = base;
    const auto group0 = p.group(0);
    std::size_t outside = 0;
    while (std::find(group0.begin(), group0.end(), outside) != group0.end()) ++outside;
    perturbed[outside] += 0.3;
    apply_partition_diffusion(base, spec);
    apply_partition_diffusion(perturbed, spec);
    for (auto o : group0) EXPECT_EQ(base[o], perturbed[o]);
  }
}

TEST(GlobalGrover, ReflectsAboutGlobalMean) {
  const GridGeometry g(2);
  auto s = uniform_state(g);
  apply_global_grover(s);
  EXPECT_LE(max_abs_diff(s.amplitudes(), uniform_state(g).amplitudes()), 1e-15);

  auto w = basis_state(g, {0, 0});
  apply_global_grover(w);
  EXPECT_DOUBLE_EQ(w[0], -0.5);
  for (std::size_t o = 1; o < 4; ++o) EXPECT_DOUBLE_EQ(w[o], 0.5);
}

TEST(GlobalGrover, OneRoundOnFourItemsFindsTheMark) {
  const GridGeometry g(2);
  const MarkedSet marked(g, Coord{1, 0});
  auto s = uniform_state(g);
  apply_oracle(s, OracleSpec{marked});
  apply_global_grover(s);
  EXPECT_NEAR(marked_probability(s, marked), 1.0, 1e-15);
}

TEST(GlobalGrover, MatchesClosedFormForManyRounds) {
  for (std::size_t L : {4u, 10u, 20u}) {
    const GridGeometry g(L);
    const MarkedSet marked(g, Coord{1, 1});
    const double theta = std::asin(1.0 / static_cast<double>(L));
    auto s = uniform_state(g);
    for (std::size_t k = 1; k <= 40; ++k) {
      apply_oracle(s, OracleSpec{marked});
      apply_global_grover(s);
      const double expect = std::pow(std::sin((2.0 * static_cast<double>(k) + 1.0) * theta), 2);
      EXPECT_NEAR(marked_probability(s, marked), expect, 1e-9) << "L=" << L << " k=" << k;
    }
  }
}

TEST(MaterializeDense, SmallExamples) {
  const GridGeometry g(2);
  const auto oracle = materialize_dense(OracleSpec{MarkedSet(g, Coord{0, 0})}, g);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) EXPECT_EQ(oracle(r, c), r == c ? (r == 0 ? -1.0 : 1.0) : 0.0);

  const auto diff = materialize_dense(DiffusionSpec(square_partition(g, 2)), g);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) EXPECT_DOUBLE_EQ(diff(r, c), r == c ? 0.5 - 1.0 : 0.5);
}

TEST(MaterializeDense, CapIsEnforced) {
  const GridGeometry g(66);
  EXPECT_THROW(materialize_dense(GlobalGrover{}, g), std::length_error);
  EXPECT_NO_THROW(materialize_dense(GlobalGrover{}, GridGeometry(8), 64));
  EXPECT_THROW(materialize_dense(GlobalGrover{}, GridGeometry(8), 63), std::length_error);
}

TEST(OperatorProperties, DenseFormsAreOrthogonal) {
  for (std::size_t L : {4u, 8u, 10u}) {
    const GridGeometry g(L);
    for (const auto& op : all_operators(g)) {
      EXPECT_LE(unitarity_defect(materialize_dense(op, g)), 1e-12) << "L=" << L << " op " << op.index();
    }
  }
}

TEST(OperatorProperties, KernelsAgreeWithDenseForms) {
  std::mt19937_64 rng(11);
  for (std::size_t L : {2u, 4u, 5u, 8u, 10u}) {
    const GridGeometry g(L);
    for (const auto& op : all_operators(g)) {
      const auto m = materialize_dense(op, g);
      for (int trial = 0; trial < 3; ++trial) {
        auto s = random_state(g, rng);
        const auto want = m.apply(s.amplitudes());
        apply(s, op);
        EXPECT_LE(max_abs_diff(s.amplitudes(), want), 1e-12) << "L=" << L << " op " << op.index();
      }
      // Columns are the images of basis states.
      const std::size_t x = g.cell_count() / 3;
      auto e = basis_state(g, coord_of(g, x));
      apply(e, op);
      for (std::size_t r = 0; r < g.cell_count(); ++r) EXPECT_NEAR(e[r], m(r, x), 1e-15);
    }
  }
}

TEST(OperatorProperties, ApplyingTwiceIsIdentity) {
  std::mt19937_64 rng(5);
  for (std::size_t L : {4u, 8u, 10u, 20u}) {
    const GridGeometry g(L);
    for (const auto& op : all_operators(g)) {
      const auto before = random_state(g, rng);
      auto s = before;
      apply(s, op);
      apply(s, op);
      EXPECT_LE(max_abs_diff(s.amplitudes(), before.amplitudes()), 1e-12);
    }
  }
}

TEST(OperatorProperties, NormIsPreservedAlongLongSequences) {
  std::mt19937_64 rng(9);
  const GridGeometry g(20);
  const auto ops = all_operators(g);
  auto s = random_state(g, rng);
  for (std::size_t k = 1; k <= 2000; ++k) {
    apply(s, ops[rng() % ops.size()]);
    ASSERT_LE(std::abs(s.norm_squared() - 1.0), 1e-9 * (1.0 + static_cast<double>(k)));
  }
}

TEST(OperatorProperties, ComplexEvolutionStaysReal) {
  // Run a few rounds with complex amplitudes through the dense forms; the
  // imaginary parts must remain exactly zero.
  const GridGeometry g(4);
  const MarkedSet marked(g, Coord{3, 3});
  std::vector<DenseMatrix> round{materialize_dense(OracleSpec{marked}, g),
                                 materialize_dense(DiffusionSpec(square_partition(g, 2)), g),
                                 materialize_dense(OracleSpec{marked}, g),
                                 materialize_dense(DiffusionSpec(shifted_square_partition(g, 2)), g)};
  std::vector<std::complex<double>> psi(16, {0.25, 0.0});
  for (int k = 0; k < 6; ++k) {
    for (const auto& m : round) {
      std::vector<std::complex<double>> next(16);
      for (std::size_t r = 0; r < 16; ++r)
        for (std::size_t c = 0; c < 16; ++c) next[r] += std::complex<double>(m(r, c), 0.0) * psi[c];
      psi = next;
    }
  }
  for (const auto& a : psi) EXPECT_EQ(a.imag(), 0.0);
}
