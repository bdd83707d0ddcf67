#pragma once

// Seeded generators shared by the property tests and the acceptance suite.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "obstructor/algebra.hpp"
#include "obstructor/obstruction.hpp"

namespace obstructor::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  /// Uniform in [lo, hi].
  int uniform(int lo, int hi) {
    return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool chance(int percent) { return uniform(1, 100) <= percent; }

  /// Small rational n/d with |n| <= bound, 1 <= d <= 3.
  Rational rational(int bound) { return Rational(uniform(-bound, bound)) / uniform(1, 3); }

  RatVector vector(Index n, int bound, int density = 100) {
    RatVector v = RatVector::Zero(n);
    for (Index k = 0; k < n; ++k)
      if (chance(density)) v[k] = uniform(-bound, bound);
    return v;
  }

  AlgElement element(const AlgebraPtr& a, int bound, int density = 100) { return {a, vector(a->dim(), bound, density)}; }

  AlgElement nonzero_element(const AlgebraPtr& a, int bound, int density = 100) {
    for (;;) {
      AlgElement x = element(a, bound, density);
      if (!x.is_zero()) return x;
    }
  }

  DMatrix dmatrix(const AlgebraPtr& base, Index rows, Index cols, int bound, int density) {
    return {base, rows, cols, vector(rows * cols * base->dim(), bound, density)};
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Definite quaternion bases ramified at {p, ∞} for small p.
inline AlgebraPtr random_base(Gen& gen) {
  static const std::vector<AlgebraPtr> bases{quaternion_for_prime(2), quaternion_for_prime(3),
                                             quaternion_for_prime(5)};
  return bases[static_cast<std::size_t>(gen.uniform(0, 2))];
}

/// r in [2, max_r], sizes in [1, max_g]. Edges are dropped, sparse, dense or
/// supported on the first row and column only, so that zero, proper-corner,
/// non-corner and full E_i all occur.
inline ObstructionGraph random_graph(Gen& gen, const AlgebraPtr& base, int max_r = 4, int max_g = 2) {
  const int r = gen.uniform(2, max_r);
  std::vector<int> sizes;
  for (int v = 0; v < r; ++v) sizes.push_back(gen.uniform(1, max_g));
  const int style = gen.uniform(0, 3);
  ObstructionGraph::EdgeMap edges;
  for (int i = 1; i <= r; ++i)
    for (int j = i + 1; j <= r; ++j) {
      if (gen.chance(25)) continue;
      const int gi = sizes[static_cast<std::size_t>(i - 1)];
      const int gj = sizes[static_cast<std::size_t>(j - 1)];
      DMatrix m = gen.dmatrix(base, gj, gi, 3, style == 0 ? 20 : 60);
      if (style == 1) {
        DMatrix corner(base, gj, gi);
        corner.set_entry(0, 0, m.entry(0, 0));
        m = corner;
      }
      edges.emplace(std::make_pair(i, j), std::move(m));
    }
  return ObstructionGraph(base, std::move(sizes), std::move(edges));
}

/// pi = [u_1 S_1 | ... | u_m S_m] with u_k nonzero quaternion scalars and S_k
/// signed permutation matrices; iota = pi†, so pi·iota = (Σ n(u_k))·1.
inline Cover random_cover(Gen& gen, const AlgebraPtr& base, int g, int max_blocks = 2) {
  const int blocks = gen.uniform(1, max_blocks);
  DMatrix pi(base, g, static_cast<Index>(g) * blocks);
  Rational degree = 0;
  for (int k = 0; k < blocks; ++k) {
    const AlgElement u = gen.nonzero_element(base, 2);
    degree += reduced_norm(u);
    std::vector<int> perm(static_cast<std::size_t>(g));
    for (int t = 0; t < g; ++t) perm[static_cast<std::size_t>(t)] = t;
    std::shuffle(perm.begin(), perm.end(), gen.engine());
    for (int row = 0; row < g; ++row) {
      const Rational sign = gen.chance(50) ? 1 : -1;
      pi.set_entry(row, static_cast<Index>(k) * g + perm[static_cast<std::size_t>(row)], sign * u);
    }
  }
  return {dagger_transpose(pi), pi, static_cast<int>(numerator(degree).convert_to<long>())};
}

inline std::vector<Cover> random_covers(Gen& gen, const ObstructionGraph& graph) {
  std::vector<Cover> covers;
  for (int v = 1; v <= graph.r(); ++v) covers.push_back(random_cover(gen, graph.base(), graph.size(v)));
  return covers;
}

/// Random invertible u (nonzero norm) for conjugation maps.
inline AlgElement random_unit(Gen& gen, const AlgebraPtr& base) { return gen.nonzero_element(base, 4); }

}  // namespace obstructor::testing
