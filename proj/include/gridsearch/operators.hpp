#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <type_traits>
#include <variant>
#include <vector>

#include "gridsearch/geometry.hpp"
#include "gridsearch/state.hpp"
#include "gridsearch/tessellation.hpp"

namespace gridsearch {

// U_w = I - 2 sum_w |w><w|: negates every marked amplitude.
struct OracleSpec {
  MarkedSet marked;
};

// 2 sum_g |u_g><u_g| - I over the groups of a validated partition.
class DiffusionSpec {
public:
  explicit DiffusionSpec(Partition p) : partition_(std::move(p)) {
    const auto report = validate_partition(partition_);
    if (!report.ok()) {
      throw std::invalid_argument("diffusion needs a perfect tiling: " + report.message());
    }
  }

  const Partition& partition() const noexcept { return partition_; }

private:
  Partition partition_;
};

// 2|s><s| - I on the complete graph.
struct GlobalGrover {};

using Operator = std::variant<OracleSpec, DiffusionSpec, GlobalGrover>;

namespace kernels {

inline void negate(std::span<double> amps, std::span<const std::size_t> offsets) noexcept {
  for (auto o : offsets) amps[o] = -amps[o];
}

// a -> 2 m_g - a inside every group g.
inline void reflect_group_means(std::span<double> amps, const Partition& p) noexcept {
  for (std::size_t k = 0; k < p.group_count(); ++k) {
    const auto grp = p.group(k);
    double sum = 0.0;
    for (auto o : grp) sum += amps[o];
    const double twice_mean = 2.0 * sum / static_cast<double>(grp.size());
    for (auto o : grp) amps[o] = twice_mean - amps[o];
  }
}

inline void reflect_global_mean(std::span<double> amps) noexcept {
  double sum = 0.0;
  for (double a : amps) sum += a;
  const double twice_mean = 2.0 * sum / static_cast<double>(amps.size());
  for (double& a : amps) a = twice_mean - a;
}

}  // namespace kernels

inline void apply_oracle(GridState& s, const OracleSpec& spec) {
  if (spec.marked.grid_side() != s.geometry().side()) {
    throw std::invalid_argument("oracle marked set belongs to a different grid");
  }
  kernels::negate(s.amplitudes(), spec.marked.offsets());
}

inline void apply_partition_diffusion(GridState& s, const DiffusionSpec& spec) {
  if (!(spec.partition().geometry() == s.geometry())) {
    throw std::invalid_argument("partition geometry (side " +
                                std::to_string(spec.partition().geometry().side()) +
                                ") does not match state (side " +
                                std::to_string(s.geometry().side()) + ")");
  }
  kernels::reflect_group_means(s.amplitudes(), spec.partition());
}

inline void apply_global_grover(GridState& s) { kernels::reflect_global_mean(s.amplitudes()); }

inline void apply(GridState& s, const Operator& op) {
  std::visit(
      [&s](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, OracleSpec>) apply_oracle(s, o);
        else if constexpr (std::is_same_v<T, DiffusionSpec>) apply_partition_diffusion(s, o);
        else apply_global_grover(s);
      },
      op);
}

// Row-major square matrix; only used for brute-force checks on small grids.
struct DenseMatrix {
  std::size_t dim = 0;
  std::vector<double> data;

  explicit DenseMatrix(std::size_t n) : dim(n), data(n * n, 0.0) {}

  double& operator()(std::size_t r, std::size_t c) { return data[r * dim + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * dim + c]; }

  std::vector<double> apply(std::span<const double> v) const {
    std::vector<double> out(dim, 0.0);
    for (std::size_t r = 0; r < dim; ++r) {
      double acc = 0.0;
      for (std::size_t c = 0; c < dim; ++c) acc += data[r * dim + c] * v[c];
      out[r] = acc;
    }
    return out;
  }
};

inline constexpr std::size_t default_dense_cap = 4096;

/// Builds the operator's n x n matrix straight from its projector formula
/// (not by running the in-place kernels), so it can serve as an independent
/// reference for them.
inline DenseMatrix materialize_dense(const Operator& op, const GridGeometry& g,
                                     std::size_t cap = default_dense_cap) {
  const std::size_t n = g.cell_count();
  if (n > cap) {
    throw std::length_error("dense materialization of n = " + std::to_string(n) +
                            " exceeds cap " + std::to_string(cap));
  }
  DenseMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = -1.0;

  if (const auto* oracle = std::get_if<OracleSpec>(&op)) {
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    for (auto o : oracle->marked.offsets()) m(o, o) = -1.0;
  } else if (const auto* diff = std::get_if<DiffusionSpec>(&op)) {
    const auto& p = diff->partition();
    if (!(p.geometry() == g)) throw std::invalid_argument("partition geometry mismatch");
    for (std::size_t k = 0; k < p.group_count(); ++k) {
      const auto grp = p.group(k);
      const double w = 2.0 / static_cast<double>(grp.size());
      for (auto r : grp) {
        for (auto c : grp) m(r, c) += w;
      }
    }
  } else {
    const double w = 2.0 / static_cast<double>(n);
    for (auto& x : m.data) x += w;
  }
  return m;
}

}  // namespace gridsearch
