#pragma once

// The loop invariant E_i of a line bundle on a product of curves, modelled by
// the off-diagonal Hom-components φ_ji : J_i → J_j of the bundle. Each J_i is
// taken up to isogeny as a power E^{g_i} of one supersingular elliptic curve,
// so Hom°(J_i, J_j) is g_j x g_i matrices over the quaternion algebra D.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "obstructor/algebra.hpp"
#include "obstructor/closure.hpp"
#include "obstructor/linear.hpp"

namespace obstructor {

class ObstructionGraph {
 public:
  /// Keyed by the 1-based pair (i, j), i < j; the value is φ_ji with shape g_j x g_i.
  using EdgeMap = std::map<std::pair<int, int>, DMatrix>;

  ObstructionGraph(AlgebraPtr base, std::vector<int> sizes, EdgeMap edges = {});

  const AlgebraPtr& base() const { return base_; }
  int r() const { return static_cast<int>(sizes_.size()); }
  const std::vector<int>& sizes() const { return sizes_; }
  int size(int vertex) const;
  const EdgeMap& edges() const { return edges_; }

  /// φ_ij : J_j → J_i as a g_i x g_j matrix, for i != j. Reversed edges are the
  /// dagger-transpose of the stored one; missing edges are zero.
  DMatrix hom(int i, int j) const;

  /// Dimension of the coefficient space of Hom°(J_j, J_i).
  Index hom_dim(int i, int j) const;

 private:
  void check_vertex(int v) const;

  AlgebraPtr base_;
  std::vector<int> sizes_;
  EdgeMap edges_;
};

/// Least fixed point of S[i][j] ⊇ span{φ_ij}, S[i][k]·S[k][j] ⊆ S[i][j].
struct PathSpanTable {
  int r = 0;
  std::vector<Subspace> spans;  // (i-1) * r + (j-1)
  int rounds = 0;

  const Subspace& at(int i, int j) const {
    return spans[static_cast<std::size_t>((i - 1) * r + (j - 1))];
  }
};

PathSpanTable path_span_table(const ObstructionGraph& graph);

/// E_i: span of all loop compositions based at i with at least two arrows,
/// inside the coefficient space of End°(J_i) (= matrix_algebra(base, g_i)).
Subspace compute_obstruction(const ObstructionGraph& graph, int vertex);

/// Independent check of compute_obstruction: the span of the values of all
/// loops at `vertex` with 2 <= arrows <= max_arrows, accumulated one arrow at
/// a time through exact-length walk spans.
Subspace loop_oracle(const ObstructionGraph& graph, int vertex, int max_arrows);

/// Runs loop_oracle until one more arrow changes no walk span. `length` is
/// the last arrow count that was needed.
OracleSpan loop_oracle_stable(const ObstructionGraph& graph, int vertex);

struct CornerReport {
  bool is_corner = false;
  std::optional<AlgElement> idempotent;  // the unit of E, when E has one
  std::optional<Index> factor_dim;       // dim p·A·p for that unit
  bool is_full = false;
  bool is_zero = false;
};

/// Decides whether E = p·A·p for an idempotent p. E = 0 is reported as the
/// corner of p = 0.
CornerReport corner_detect(const Subspace& e, const AlgebraPtr& algebra);

enum class Verdict { Obstructed, NotObstructed, Inconclusive };

std::string to_string(Verdict v);

struct ObstructionVerdict {
  Verdict verdict = Verdict::Inconclusive;
  std::string note;
};

/// OBSTRUCTED iff E is a nonzero corner over a supersingular base. A
/// non-corner E is INCONCLUSIVE. The verdict is the same for every tensor
/// power of the bundle since E_i(L^m) = E_i(L).
ObstructionVerdict flag_nonliftable(const CornerReport& report, bool base_is_ramified);

/// True iff the algebra is a quaternion algebra ramified exactly at {p, ∞}
/// for one prime p.
bool is_supersingular_base(const StructureAlgebra& base);

/// One finite cover f_i : C'_i → C_i on Jacobians: iota = f_i^* (g'_i x g_i),
/// pi = f_{i,*} (g_i x g'_i) with pi·iota = degree·1 and iota a nonzero
/// rational multiple of pi^†. Reversed edges then pick up only nonzero
/// scalars, which spans absorb.
struct Cover {
  DMatrix iota;
  DMatrix pi;
  int degree = 1;
};

/// Pulls the bundle back along the product of the covers:
/// φ'_ji = ι_j φ_ji π_i.
ObstructionGraph pullback_transform(const ObstructionGraph& graph, const std::vector<Cover>& covers);

/// span{ι e π : e ∈ E} for E inside End°(J_i).
Subspace transport_span(const Subspace& e, const Cover& cover);

/// An injective unital homomorphism between involutive base algebras that
/// commutes with the involutions. Applied entrywise it commutes with matrix
/// products and dagger-transposes.
class BaseHomomorphism {
 public:
  /// Column k of `matrix` is the image of basis vector k. Throws
  /// ValidationError if the map is not injective, unital, multiplicative on
  /// all basis pairs, or compatible with the involutions.
  BaseHomomorphism(AlgebraPtr source, AlgebraPtr target, RatMatrix matrix);

  const AlgebraPtr& source() const { return source_; }
  const AlgebraPtr& target() const { return target_; }
  const RatMatrix& matrix() const { return matrix_; }

  AlgElement apply(const AlgElement& x) const;
  DMatrix apply(const DMatrix& m) const;
  /// Entrywise image of a flattened matrix over the source.
  RatVector apply_flat(const RatVector& flat) const;

 private:
  AlgebraPtr source_;
  AlgebraPtr target_;
  RatMatrix matrix_;
};

/// x ↦ u x u⁻¹ on `base`; u·u† must be a nonzero scalar.
BaseHomomorphism conjugation_map(const AlgebraPtr& base, const AlgElement& u);

/// Applies h to every edge; the image graph lives over h.target().
ObstructionGraph specialize_transform(const ObstructionGraph& graph, const BaseHomomorphism& h);

/// Entrywise image of a subspace of flattened matrices.
Subspace map_span(const Subspace& e, const BaseHomomorphism& h);

/// The bundle L^m: every Hom-component multiplied by m.
ObstructionGraph tensor_power(const ObstructionGraph& graph, int m);

/// Relabels vertex v as perm[v-1] (a permutation of 1..r). Edges whose
/// orientation flips are stored dagger-transposed, so hom() is preserved.
ObstructionGraph permute_vertices(const ObstructionGraph& graph, const std::vector<int>& perm);

}  // namespace obstructor
