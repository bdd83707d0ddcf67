#include "obstructor/obstruction.hpp"

#include <algorithm>

#include "obstructor/errors.hpp"
#include "obstructor/hilbert.hpp"

namespace obstructor {

ObstructionGraph::ObstructionGraph(AlgebraPtr base, std::vector<int> sizes, EdgeMap edges)
    : base_(std::move(base)), sizes_(std::move(sizes)), edges_(std::move(edges)) {
  if (!base_ || !base_->has_unit() || !base_->has_involution())
    throw InvalidArgument("ObstructionGraph: base algebra needs a unit and an involution");
  if (sizes_.size() < 2) throw InvalidArgument("ObstructionGraph: need at least two vertices");
  for (int g : sizes_)
    if (g < 1) throw InvalidArgument("ObstructionGraph: vertex sizes must be positive");
  for (const auto& [key, m] : edges_) {
    const auto [i, j] = key;
    if (i < 1 || j > r() || i >= j)
      throw InvalidArgument("ObstructionGraph: edge key (" + std::to_string(i) + "," + std::to_string(j) +
                            ") must satisfy 1 <= i < j <= r");
    if (!same_algebra(m.base(), base_)) throw InvalidArgument("ObstructionGraph: edge matrix over a different base");
    if (m.rows() != size(j) || m.cols() != size(i))
      throw DimensionMismatch("ObstructionGraph: edge (" + std::to_string(i) + "," + std::to_string(j) +
                              ") must have shape " + std::to_string(size(j)) + "x" + std::to_string(size(i)));
  }
}

void ObstructionGraph::check_vertex(int v) const {
  if (v < 1 || v > r())
    throw InvalidArgument("vertex " + std::to_string(v) + " out of range 1.." + std::to_string(r()));
}

int ObstructionGraph::size(int vertex) const {
  check_vertex(vertex);
  return sizes_[static_cast<std::size_t>(vertex - 1)];
}

DMatrix ObstructionGraph::hom(int i, int j) const {
  check_vertex(i);
  check_vertex(j);
  if (i == j) throw InvalidArgument("hom: there is no edge from a vertex to itself");
  if (i > j) {
    const auto it = edges_.find({j, i});
    return it != edges_.end() ? it->second : DMatrix(base_, size(i), size(j));
  }
  const auto it = edges_.find({i, j});
  return it != edges_.end() ? dagger_transpose(it->second) : DMatrix(base_, size(i), size(j));
}

Index ObstructionGraph::hom_dim(int i, int j) const {
  return base_->dim() * size(i) * size(j);
}

PathSpanTable path_span_table(const ObstructionGraph& graph) {
  const int r = graph.r();
  const auto& base = *graph.base();
  auto at = [r](int i, int j) { return static_cast<std::size_t>((i - 1) * r + (j - 1)); };

  std::vector<IncrementalBasis<Rational>> spans;
  for (int i = 1; i <= r; ++i)
    for (int j = 1; j <= r; ++j) spans.emplace_back(graph.hom_dim(i, j));
  for (int i = 1; i <= r; ++i)
    for (int j = 1; j <= r; ++j)
      if (i != j) spans[at(i, j)].insert(graph.hom(i, j).flat());

  std::vector<std::size_t> processed(spans.size(), 0);
  std::vector<std::size_t> current(spans.size(), 0);
  int rounds = 0;
  for (;;) {
    for (std::size_t s = 0; s < spans.size(); ++s) current[s] = spans[s].members().size();
    if (current == processed) break;
    ++rounds;
    for (int i = 1; i <= r; ++i)
      for (int k = 1; k <= r; ++k)
        for (int j = 1; j <= r; ++j) {
          auto& target = spans[at(i, j)];
          const std::size_t left = at(i, k);
          const std::size_t right = at(k, j);
          for (std::size_t u = 0; u < current[left] && !target.is_full(); ++u) {
            // Copy: the target may be the left span and grow while we loop.
            const RatVector lhs = spans[left].members()[u];
            for (std::size_t v = 0; v < current[right] && !target.is_full(); ++v) {
              if (u < processed[left] && v < processed[right]) continue;
              target.insert(dmatrix_product(base, lhs, graph.size(i), graph.size(k),
                                            spans[right].members()[v], graph.size(j)));
            }
          }
        }
    processed = current;
  }

  PathSpanTable table;
  table.r = r;
  table.rounds = rounds;
  for (const auto& s : spans) table.spans.push_back(s.span());
  return table;
}

Subspace compute_obstruction(const ObstructionGraph& graph, int vertex) {
  graph.size(vertex);
  return path_span_table(graph).at(vertex, vertex);
}

namespace {

// One more arrow on every walk: W'[j'] = Σ_{j != j'} W[j] · φ_{j j'}.
std::vector<Subspace> extend_walks(const ObstructionGraph& graph, int vertex, const std::vector<Subspace>& walks) {
  const int r = graph.r();
  const auto& base = *graph.base();
  const int gi = graph.size(vertex);
  std::vector<Subspace> next;
  for (int to = 1; to <= r; ++to) {
    std::vector<RatVector> rows;
    for (int from = 1; from <= r; ++from) {
      if (from == to) continue;
      const Subspace& w = walks[static_cast<std::size_t>(from - 1)];
      if (w.is_zero()) continue;
      const RatVector edge = graph.hom(from, to).flat();
      for (Index b = 0; b < w.dim(); ++b)
        rows.push_back(dmatrix_product(base, w.basis_vector(b), gi, graph.size(from), edge, graph.size(to)));
    }
    next.push_back(echelonize(rows, graph.hom_dim(vertex, to)));
  }
  return next;
}

std::vector<Subspace> single_arrow_walks(const ObstructionGraph& graph, int vertex) {
  std::vector<Subspace> walks;
  for (int to = 1; to <= graph.r(); ++to) {
    std::vector<RatVector> rows;
    if (to != vertex) rows.push_back(graph.hom(vertex, to).flat());
    walks.push_back(echelonize(rows, graph.hom_dim(vertex, to)));
  }
  return walks;
}

}  // namespace

Subspace loop_oracle(const ObstructionGraph& graph, int vertex, int max_arrows) {
  graph.size(vertex);
  if (max_arrows < 2) throw InvalidArgument("loop_oracle: max_arrows must be >= 2");
  const auto self = static_cast<std::size_t>(vertex - 1);
  std::vector<Subspace> walks = single_arrow_walks(graph, vertex);
  Subspace loops(graph.hom_dim(vertex, vertex));
  for (int len = 2; len <= max_arrows; ++len) {
    walks = extend_walks(graph, vertex, walks);
    loops = subspace_sum(loops, walks[self]);
  }
  return loops;
}

OracleSpan loop_oracle_stable(const ObstructionGraph& graph, int vertex) {
  graph.size(vertex);
  const auto self = static_cast<std::size_t>(vertex - 1);
  std::vector<Subspace> walks = single_arrow_walks(graph, vertex);
  std::vector<Subspace> total = walks;
  for (int len = 2;; ++len) {
    walks = extend_walks(graph, vertex, walks);
    bool grew = false;
    for (std::size_t t = 0; t < total.size(); ++t) {
      Subspace next = subspace_sum(total[t], walks[t]);
      grew = grew || next.dim() != total[t].dim();
      total[t] = std::move(next);
    }
    if (!grew) return {total[self], std::max(2, len - 1)};
  }
}

CornerReport corner_detect(const Subspace& e, const AlgebraPtr& algebra) {
  if (e.ambient_dim() != algebra->dim())
    throw DimensionMismatch("corner_detect: subspace does not live in " + algebra->name());
  if (!algebra->has_unit()) throw InvalidArgument("corner_detect: algebra has no unit");

  CornerReport report;
  if (e.is_zero()) {
    report.is_corner = true;
    report.is_zero = true;
    report.idempotent = AlgElement::zero(algebra);
    report.factor_dim = 0;
    return report;
  }

  // Unknown c with u = Σ c_t v_t satisfying u·v_s = v_s = v_s·u for every s.
  const Index d = e.dim();
  const Index n = algebra->dim();
  std::vector<RatVector> basis;
  for (Index t = 0; t < d; ++t) basis.push_back(e.basis_vector(t));
  RatMatrix system(2 * d * n, d);
  RatVector rhs(2 * d * n);
  for (Index s = 0; s < d; ++s) {
    rhs.segment(s * n, n) = basis[static_cast<std::size_t>(s)];
    rhs.segment((d + s) * n, n) = basis[static_cast<std::size_t>(s)];
    for (Index t = 0; t < d; ++t) {
      system.block(s * n, t, n, 1) =
          algebra->multiply(basis[static_cast<std::size_t>(t)], basis[static_cast<std::size_t>(s)]);
      system.block((d + s) * n, t, n, 1) =
          algebra->multiply(basis[static_cast<std::size_t>(s)], basis[static_cast<std::size_t>(t)]);
    }
  }
  const auto c = solve_linear(system, rhs);
  if (!c) return report;

  RatVector unit = RatVector::Zero(n);
  for (Index t = 0; t < d; ++t) unit += (*c)[t] * basis[static_cast<std::size_t>(t)];
  const AlgElement p(algebra, unit);
  if (!(p * p == p)) return report;

  std::vector<RatVector> corner;
  for (Index k = 0; k < n; ++k) corner.push_back(algebra->multiply(algebra->multiply(unit, algebra->basis_vector(k)), unit));
  const Subspace pap = echelonize(corner, n);

  report.idempotent = p;
  report.factor_dim = pap.dim();
  report.is_corner = (pap == e);
  report.is_full = report.is_corner && unit == algebra->unit();
  return report;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Obstructed:
      return "OBSTRUCTED";
    case Verdict::NotObstructed:
      return "NOT-OBSTRUCTED";
    case Verdict::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

ObstructionVerdict flag_nonliftable(const CornerReport& report, bool base_is_ramified) {
  const std::string powers = " The verdict holds for every tensor power L^m, m > 0, since E_i(L^m) = E_i(L).";
  if (!report.is_corner)
    return {Verdict::Inconclusive, "E_i is not of the form pEnd(J_i)p, so it does not cut out an isogeny factor." + powers};
  if (report.is_zero) return {Verdict::NotObstructed, "E_i = 0 corresponds to the zero isogeny factor." + powers};
  if (!base_is_ramified)
    return {Verdict::NotObstructed, "E_i is a corner, but the base is not the supersingular quaternion algebra." + powers};
  return {Verdict::Obstructed,
          "E_i is a nonzero corner over the supersingular quaternion algebra: no multiple of L lifts." + powers};
}

bool is_supersingular_base(const StructureAlgebra& base) {
  const auto& q = base.quaternion_params();
  if (!q) return false;
  const auto places = ramified_places(q->a, q->b);
  return places.size() == 2 && !places[0].is_infinite() && places[1].is_infinite();
}

namespace {

// x = c·y for some rational c != 0.
bool proportional(const RatVector& x, const RatVector& y) {
  Index k = 0;
  while (k < y.size() && y[k] == 0) ++k;
  if (k == y.size()) return false;
  const Rational c = x[k] / y[k];
  return c != 0 && x == RatVector(c * y);
}

}  // namespace

ObstructionGraph pullback_transform(const ObstructionGraph& graph, const std::vector<Cover>& covers) {
  if (covers.size() != static_cast<std::size_t>(graph.r()))
    throw DimensionMismatch("pullback_transform: need one cover per vertex");
  std::vector<int> sizes;
  for (int i = 1; i <= graph.r(); ++i) {
    const Cover& c = covers[static_cast<std::size_t>(i - 1)];
    const std::string where = "cover " + std::to_string(i) + ": ";
    if (!same_algebra(c.pi.base(), graph.base()) || !same_algebra(c.iota.base(), graph.base()))
      throw InvalidArgument(where + "matrices over a different base");
    if (c.degree < 1) throw InvalidArgument(where + "degree must be positive");
    if (c.pi.rows() != graph.size(i) || c.iota.cols() != graph.size(i) || c.pi.cols() != c.iota.rows())
      throw DimensionMismatch(where + "pi must be g x g' and iota g' x g");
    if (!(c.pi * c.iota == Rational(c.degree) * DMatrix::identity(graph.base(), graph.size(i))))
      throw ValidationError(where + "pi * iota is not degree times the identity");
    if (!proportional(c.iota.flat(), dagger_transpose(c.pi).flat()))
      throw ValidationError(where + "iota must be a rational multiple of the dagger-transpose of pi");
    sizes.push_back(static_cast<int>(c.iota.rows()));
  }
  ObstructionGraph::EdgeMap edges;
  for (const auto& [key, phi] : graph.edges()) {
    const auto [i, j] = key;
    const Cover& ci = covers[static_cast<std::size_t>(i - 1)];
    const Cover& cj = covers[static_cast<std::size_t>(j - 1)];
    edges.emplace(key, cj.iota * phi * ci.pi);
  }
  return ObstructionGraph(graph.base(), std::move(sizes), std::move(edges));
}

Subspace transport_span(const Subspace& e, const Cover& cover) {
  const auto& base = cover.pi.base();
  const Index g = cover.pi.rows();
  const Index g2 = cover.pi.cols();
  if (e.ambient_dim() != base->dim() * g * g) throw DimensionMismatch("transport_span: E has the wrong ambient dimension");
  std::vector<RatVector> rows;
  for (Index k = 0; k < e.dim(); ++k) {
    const DMatrix m(base, g, g, e.basis_vector(k));
    rows.push_back((cover.iota * m * cover.pi).flat());
  }
  return echelonize(rows, base->dim() * g2 * g2);
}

BaseHomomorphism::BaseHomomorphism(AlgebraPtr source, AlgebraPtr target, RatMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != target_->dim() || matrix_.cols() != source_->dim())
    throw DimensionMismatch("BaseHomomorphism: matrix must be dim(target) x dim(source)");
  if (!source_->has_unit() || !target_->has_unit() || !source_->has_involution() || !target_->has_involution())
    throw InvalidArgument("BaseHomomorphism: both algebras need a unit and an involution");
  if (echelonize(RatMatrix(matrix_.transpose())).dim() != source_->dim())
    throw ValidationError("BaseHomomorphism: map is not injective");
  if (!(RatVector(matrix_ * source_->unit()) == target_->unit()))
    throw ValidationError("BaseHomomorphism: map is not unital");
  for (Index i = 0; i < source_->dim(); ++i) {
    const RatVector hi = matrix_.col(i);
    if (!(RatVector(matrix_ * source_->involute(source_->basis_vector(i))) == target_->involute(hi)))
      throw ValidationError("BaseHomomorphism: map does not commute with the involution on " +
                            source_->basis_labels()[static_cast<std::size_t>(i)]);
    for (Index j = 0; j < source_->dim(); ++j) {
      const RatVector lhs = matrix_ * source_->structure_constant(i, j);
      const RatVector rhs = target_->multiply(hi, matrix_.col(j));
      if (!(lhs == rhs))
        throw ValidationError("BaseHomomorphism: map is not multiplicative on (" +
                              source_->basis_labels()[static_cast<std::size_t>(i)] + ", " +
                              source_->basis_labels()[static_cast<std::size_t>(j)] + ")");
    }
  }
}

AlgElement BaseHomomorphism::apply(const AlgElement& x) const {
  if (!same_algebra(x.algebra(), source_)) throw InvalidArgument("BaseHomomorphism::apply: element not in the source");
  return {target_, matrix_ * x.coeffs()};
}

RatVector BaseHomomorphism::apply_flat(const RatVector& flat) const {
  const Index m = source_->dim();
  const Index n = target_->dim();
  if (flat.size() % m != 0) throw DimensionMismatch("apply_flat: length is not a multiple of the source dimension");
  const Index entries = flat.size() / m;
  RatVector out(entries * n);
  for (Index e = 0; e < entries; ++e) out.segment(e * n, n) = matrix_ * flat.segment(e * m, m);
  return out;
}

DMatrix BaseHomomorphism::apply(const DMatrix& x) const {
  if (!same_algebra(x.base(), source_)) throw InvalidArgument("BaseHomomorphism::apply: matrix not over the source");
  return {target_, x.rows(), x.cols(), apply_flat(x.flat())};
}

BaseHomomorphism conjugation_map(const AlgebraPtr& base, const AlgElement& u) {
  if (!same_algebra(u.algebra(), base)) throw InvalidArgument("conjugation_map: u is not in the base");
  const Rational norm = reduced_norm(u);
  if (norm == 0) throw InvalidArgument("conjugation_map: u is not invertible");
  const AlgElement u_inv = (Rational(1) / norm) * apply_involution(u);
  RatMatrix m(base->dim(), base->dim());
  for (Index k = 0; k < base->dim(); ++k) m.col(k) = (u * AlgElement::basis(base, k) * u_inv).coeffs();
  return BaseHomomorphism(base, base, std::move(m));
}

ObstructionGraph specialize_transform(const ObstructionGraph& graph, const BaseHomomorphism& h) {
  if (h.source() != graph.base()) throw InvalidArgument("specialize_transform: map source is not the graph base");
  ObstructionGraph::EdgeMap edges;
  for (const auto& [key, phi] : graph.edges()) edges.emplace(key, h.apply(phi));
  return ObstructionGraph(h.target(), graph.sizes(), std::move(edges));
}

Subspace map_span(const Subspace& e, const BaseHomomorphism& h) {
  std::vector<RatVector> rows;
  for (Index k = 0; k < e.dim(); ++k) rows.push_back(h.apply_flat(e.basis_vector(k)));
  const Index ambient = e.ambient_dim() / h.source()->dim() * h.target()->dim();
  return echelonize(rows, ambient);
}

ObstructionGraph tensor_power(const ObstructionGraph& graph, int m) {
  if (m < 1) throw InvalidArgument("tensor_power: m must be positive");
  ObstructionGraph::EdgeMap edges;
  for (const auto& [key, phi] : graph.edges()) edges.emplace(key, Rational(m) * phi);
  return ObstructionGraph(graph.base(), graph.sizes(), std::move(edges));
}

ObstructionGraph permute_vertices(const ObstructionGraph& graph, const std::vector<int>& perm) {
  const int r = graph.r();
  std::vector<int> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  for (int k = 0; k < r; ++k)
    if (sorted.size() != static_cast<std::size_t>(r) || sorted[static_cast<std::size_t>(k)] != k + 1)
      throw InvalidArgument("permute_vertices: not a permutation of 1..r");
  auto img = [&](int v) { return perm[static_cast<std::size_t>(v - 1)]; };
  std::vector<int> sizes(static_cast<std::size_t>(r));
  for (int v = 1; v <= r; ++v) sizes[static_cast<std::size_t>(img(v) - 1)] = graph.size(v);
  ObstructionGraph::EdgeMap edges;
  for (const auto& [key, phi] : graph.edges()) {
    const auto [i, j] = key;
    const int a = img(i), b = img(j);
    if (a < b)
      edges.emplace(std::make_pair(a, b), phi);
    else
      edges.emplace(std::make_pair(b, a), dagger_transpose(phi));
  }
  return ObstructionGraph(graph.base(), std::move(sizes), std::move(edges));
}

}  // namespace obstructor
