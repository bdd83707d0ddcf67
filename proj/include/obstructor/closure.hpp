#pragma once

// Q-subrngs (non-unital subalgebras) generated by finitely many elements.

#include <vector>

#include "obstructor/algebra.hpp"
#include "obstructor/linear.hpp"

namespace obstructor {

struct SubrngResult {
  Subspace span;
  std::vector<AlgElement> generators;
  bool closed = false;
  int rounds = 0;  // product rounds run, including the final one that added nothing
};

struct ClosureOptions {
  /// Accept an empty generator list and return the zero subrng.
  bool allow_empty = false;
  /// Stop after this many rounds (closed = false if cut short); < 0 means no limit.
  int max_rounds = -1;
};

/// Smallest subspace containing `gens` and closed under multiplication. The
/// unit is never adjoined. Round k multiplies every pair of basis members of
/// V_k that involves a member added in round k-1; the iteration stops when a
/// round adds nothing or the span is the whole algebra.
SubrngResult subrng_closure(const AlgebraPtr& algebra, const std::vector<AlgElement>& gens,
                            ClosureOptions options = {});

bool generates_fully(const AlgebraPtr& algebra, const std::vector<AlgElement>& gens);

/// Span of all products g_{w1}···g_{wm}, 1 <= m <= max_len. Built layer by
/// layer from exact-length word spans, independently of subrng_closure.
Subspace word_span_oracle(const AlgebraPtr& algebra, const std::vector<AlgElement>& gens, int max_len);

struct OracleSpan {
  Subspace span;
  int length = 0;  // first word length at which the span stopped growing
};

/// Runs the word oracle until one more letter adds nothing.
OracleSpan word_span_oracle_stable(const AlgebraPtr& algebra, const std::vector<AlgElement>& gens);

/// Certificate: every product of two basis vectors of s lies in s.
bool is_closed_under_products(const AlgebraPtr& algebra, const Subspace& s);

/// Elements of `algebra` for the echelon basis of s.
std::vector<AlgElement> basis_elements(const AlgebraPtr& algebra, const Subspace& s);

}  // namespace obstructor
