#include "obstructor/closure.hpp"

#include "obstructor/errors.hpp"

namespace obstructor {

namespace {

void check_generators(const AlgebraPtr& algebra, const std::vector<AlgElement>& gens) {
  for (const auto& g : gens)
    if (!same_algebra(g.algebra(), algebra)) throw InvalidArgument("generator does not belong to " + algebra->name());
}

}  // namespace

SubrngResult subrng_closure(const AlgebraPtr& algebra, const std::vector<AlgElement>& gens,
                            ClosureOptions options) {
  check_generators(algebra, gens);
  if (gens.empty() && !options.allow_empty)
    throw InvalidArgument("subrng_closure: empty generator list (set allow_empty for the zero subrng)");

  IncrementalBasis<Rational> basis(algebra->dim());
  for (const auto& g : gens) basis.insert(g.coeffs());

  SubrngResult result{Subspace(algebra->dim()), gens, true, 0};
  std::size_t processed = 0;
  while (!basis.is_full()) {
    const std::size_t current = basis.members().size();
    if (processed == current) break;
    if (options.max_rounds >= 0 && result.rounds >= options.max_rounds) {
      result.closed = false;
      break;
    }
    ++result.rounds;
    for (std::size_t a = 0; a < current && !basis.is_full(); ++a)
      for (std::size_t b = 0; b < current && !basis.is_full(); ++b) {
        if (a < processed && b < processed) continue;
        basis.insert(algebra->multiply(basis.members()[a], basis.members()[b]));
      }
    processed = current;
  }
  result.span = basis.span();
  return result;
}

bool generates_fully(const AlgebraPtr& algebra, const std::vector<AlgElement>& gens) {
  return subrng_closure(algebra, gens, {.allow_empty = true}).span.is_full();
}

namespace {

std::vector<RatVector> coeff_rows(const std::vector<AlgElement>& gens) {
  std::vector<RatVector> rows;
  for (const auto& g : gens) rows.push_back(g.coeffs());
  return rows;
}

// Span of exact-length-(m+1) words from the span of exact-length-m words.
Subspace extend_layer(const AlgebraPtr& algebra, const Subspace& layer, const std::vector<AlgElement>& gens) {
  std::vector<RatVector> rows;
  for (Index r = 0; r < layer.dim(); ++r) {
    const RatVector w = layer.basis_vector(r);
    for (const auto& g : gens) rows.push_back(algebra->multiply(w, g.coeffs()));
  }
  return echelonize(rows, algebra->dim());
}

}  // namespace

Subspace word_span_oracle(const AlgebraPtr& algebra, const std::vector<AlgElement>& gens, int max_len) {
  if (max_len < 1) throw InvalidArgument("word_span_oracle: max_len must be >= 1");
  check_generators(algebra, gens);
  Subspace layer = echelonize(coeff_rows(gens), algebra->dim());
  Subspace total = layer;
  for (int m = 2; m <= max_len; ++m) {
    layer = extend_layer(algebra, layer, gens);
    total = subspace_sum(total, layer);
  }
  return total;
}

OracleSpan word_span_oracle_stable(const AlgebraPtr& algebra, const std::vector<AlgElement>& gens) {
  check_generators(algebra, gens);
  Subspace layer = echelonize(coeff_rows(gens), algebra->dim());
  Subspace total = layer;
  for (int m = 2;; ++m) {
    layer = extend_layer(algebra, layer, gens);
    Subspace next = subspace_sum(total, layer);
    if (next.dim() == total.dim()) return {std::move(total), m - 1};
    total = std::move(next);
  }
}

bool is_closed_under_products(const AlgebraPtr& algebra, const Subspace& s) {
  if (s.ambient_dim() != algebra->dim()) throw DimensionMismatch("subspace is not in the algebra's coefficient space");
  for (Index a = 0; a < s.dim(); ++a)
    for (Index b = 0; b < s.dim(); ++b)
      if (!contains(s, algebra->multiply(s.basis_vector(a), s.basis_vector(b)))) return false;
  return true;
}

std::vector<AlgElement> basis_elements(const AlgebraPtr& algebra, const Subspace& s) {
  if (s.ambient_dim() != algebra->dim()) throw DimensionMismatch("subspace is not in the algebra's coefficient space");
  std::vector<AlgElement> out;
  for (Index r = 0; r < s.dim(); ++r) out.emplace_back(algebra, s.basis_vector(r));
  return out;
}

}  // namespace obstructor
