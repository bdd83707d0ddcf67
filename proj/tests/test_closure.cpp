#include <doctest.h>

#include "obstructor/closure.hpp"
#include "obstructor/errors.hpp"
#include "obstructor/witness.hpp"
#include "support.hpp"

using namespace obstructor;

namespace {

AlgElement unit_matrix(const AlgebraPtr& m2, int row, int col) { return AlgElement::basis(m2, (row - 1) * 2 + (col - 1)); }

std::vector<AlgebraPtr> small_algebras() {
  return {quaternion_for_prime(2), quaternion_for_prime(3), matrix_algebra(rationals(), 2),
          matrix_algebra(rationals(), 3), split_model(2), matrix_algebra(quaternion_for_prime(2), 2)};
}

}  // namespace

TEST_SUITE("closure") {
  TEST_CASE("M_2(Q) from e12 and e21") {
    const AlgebraPtr m2 = matrix_algebra(rationals(), 2);
    const SubrngResult r = subrng_closure(m2, {unit_matrix(m2, 1, 2), unit_matrix(m2, 2, 1)});
    CHECK(r.span.dim() == 4);
    CHECK(r.closed);
    CHECK(generates_fully(m2, {unit_matrix(m2, 1, 2), unit_matrix(m2, 2, 1)}));
  }

  TEST_CASE("zero generator and empty list") {
    const AlgebraPtr m2 = matrix_algebra(rationals(), 2);
    CHECK(subrng_closure(m2, {AlgElement::zero(m2)}).span.dim() == 0);
    CHECK_THROWS_AS(subrng_closure(m2, {}), InvalidArgument);
    CHECK(subrng_closure(m2, {}, {.allow_empty = true}).span.dim() == 0);
  }

  TEST_CASE("i and i† in the Hamilton quaternions span {1, i}") {
    const AlgebraPtr h = quaternion_algebra(-1, -1);
    const AlgElement i = AlgElement::basis(h, 1);
    const Subspace s = subrng_closure(h, {i, apply_involution(i)}).span;
    CHECK(s.dim() == 2);
    CHECK(contains(s, AlgElement::unit(h).coeffs()));
    CHECK(contains(s, i.coeffs()));
  }

  TEST_CASE("generates_fully examples") {
    const AlgebraPtr s2 = split_model(2);
    const AlgElement x = shift_witness(2);
    CHECK(generates_fully(s2, {x, apply_involution(x)}));
    CHECK(subrng_closure(s2, {x, apply_involution(x)}).span.dim() == 16);

    testing::Gen gen(40);
    const AlgebraPtr d = quaternion_for_prime(2);
    for (int t = 0; t < 10; ++t) {
      const AlgElement y = gen.element(d, 10);
      CHECK_FALSE(generates_fully(d, {y, apply_involution(y)}));
    }
    for (const auto& a : small_algebras())
      if (a->dim() > 1) CHECK_FALSE(generates_fully(a, {AlgElement::unit(a)}));
  }

  TEST_CASE("the unit is never adjoined") {
    const AlgebraPtr m2 = matrix_algebra(rationals(), 2);
    const Subspace s = subrng_closure(m2, {unit_matrix(m2, 1, 2)}).span;
    CHECK(s.dim() == 1);
    CHECK_FALSE(contains(s, AlgElement::unit(m2).coeffs()));
  }

  TEST_CASE("round cap") {
    const AlgebraPtr s3 = split_model(3);
    const AlgElement x = shift_witness(3);
    const SubrngResult cut = subrng_closure(s3, {x}, {.max_rounds = 1});
    CHECK_FALSE(cut.closed);
    CHECK(cut.rounds == 1);
    const SubrngResult full = subrng_closure(s3, {x});
    CHECK(full.closed);
    CHECK(full.span.dim() == 5);  // x, ..., x^5
  }

  TEST_CASE("word oracle examples") {
    const AlgebraPtr m2 = matrix_algebra(rationals(), 2);
    testing::Gen gen(41);
    for (int t = 0; t < 10; ++t) {
      const std::vector<AlgElement> gens{gen.element(m2, 3, 50), gen.element(m2, 3, 50)};
      std::vector<RatVector> rows;
      for (const auto& g : gens) rows.push_back(g.coeffs());
      CHECK(word_span_oracle(m2, gens, 1) == echelonize(rows, 4));
      CHECK(word_span_oracle(m2, gens, 4) == word_span_oracle(m2, gens, 5));
      CHECK(is_subspace_of(word_span_oracle(m2, gens, 2), word_span_oracle(m2, gens, 3)));
    }
    CHECK_THROWS_AS(word_span_oracle(m2, {AlgElement::unit(m2)}, 0), InvalidArgument);
  }

  TEST_CASE("properties on random generator sets") {
    testing::Gen gen(42);
    const auto algebras = small_algebras();
    for (int t = 0; t < 40; ++t) {
      const AlgebraPtr a = algebras[static_cast<std::size_t>(gen.uniform(0, static_cast<int>(algebras.size()) - 1))];
      std::vector<AlgElement> gens;
      const int count = gen.uniform(1, 3);
      for (int k = 0; k < count; ++k) gens.push_back(gen.element(a, 3, gen.uniform(5, 40)));
      const SubrngResult r = subrng_closure(a, gens);
      CAPTURE(a->name());

      for (const auto& g : gens) CHECK(contains(r.span, g.coeffs()));
      CHECK(is_closed_under_products(a, r.span));
      CHECK(subrng_closure(a, basis_elements(a, r.span), {.allow_empty = true}).span == r.span);

      std::vector<AlgElement> shuffled = gens;
      std::shuffle(shuffled.begin(), shuffled.end(), gen.engine());
      CHECK(subrng_closure(a, shuffled).span == r.span);

      std::vector<AlgElement> more = gens;
      more.push_back(gen.element(a, 3, 20));
      CHECK(is_subspace_of(r.span, subrng_closure(a, more).span));

      CHECK(word_span_oracle_stable(a, gens).span == r.span);
    }
  }

  TEST_CASE("closedness certificate detects a non-closed subspace") {
    const AlgebraPtr m2 = matrix_algebra(rationals(), 2);
    const Subspace s = echelonize(std::vector<RatVector>{unit_matrix(m2, 1, 2).coeffs(), unit_matrix(m2, 2, 1).coeffs()}, 4);
    CHECK_FALSE(is_closed_under_products(m2, s));
  }

  TEST_CASE("generators from another algebra are rejected") {
    CHECK_THROWS_AS(subrng_closure(split_model(1), {AlgElement::unit(quaternion_for_prime(2))}), InvalidArgument);
  }
}
