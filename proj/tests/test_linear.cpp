#include <doctest.h>

#include "obstructor/errors.hpp"
#include "obstructor/linear.hpp"
#include "support.hpp"

using namespace obstructor;

namespace {

RatVector vec(std::initializer_list<long> xs) {
  RatVector v(static_cast<Index>(xs.size()));
  Index k = 0;
  for (long x : xs) v[k++] = x;
  return v;
}

Subspace span(std::initializer_list<RatVector> rows, Index n) { return echelonize(std::vector<RatVector>(rows), n); }

}  // namespace

TEST_SUITE("rational") {
  TEST_CASE("parse and print") {
    CHECK(parse_rational("6/4") == Rational(3) / 2);
    CHECK(parse_rational("-7") == -7);
    CHECK(parse_rational("0/5") == 0);
    CHECK(to_string(Rational(-6) / 4) == "-3/2");
    CHECK(to_string(Rational(4) / 2) == "2");
    CHECK(to_string(parse_rational("-0")) == "0");
    CHECK(to_string(parse_rational("123456789012345678901234567890/3")) == "41152263004115226300411522630");
  }

  TEST_CASE("lowest terms with positive denominator") {
    const Rational q = parse_rational("-10/4");
    CHECK(denominator(q) == 2);
    CHECK(numerator(q) == -5);
  }

  TEST_CASE("malformed input") {
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
    CHECK_THROWS_AS(parse_rational("a"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/"), ParseError);
  }
}

TEST_SUITE("linear") {
  TEST_CASE("echelonize examples") {
    const Subspace s = span({vec({1, 2}), vec({2, 4})}, 2);
    CHECK(s.dim() == 1);
    CHECK(s.basis_vector(0) == vec({1, 2}));

    CHECK(echelonize(std::vector<RatVector>{}, 3).dim() == 0);

    const Subspace t = span({vec({0, 1}), vec({1, 0})}, 2);
    REQUIRE(t.dim() == 2);
    CHECK(t.basis_vector(0) == vec({1, 0}));
    CHECK(t.basis_vector(1) == vec({0, 1}));
  }

  TEST_CASE("echelonize rejects ragged rows") {
    CHECK_THROWS_AS(echelonize(std::vector<RatVector>{vec({1, 2}), vec({1})}, 2), DimensionMismatch);
  }

  TEST_CASE("contains examples") {
    CHECK(contains(span({vec({1, 0})}, 2), vec({3, 0})));
    CHECK_FALSE(contains(span({vec({1, 0})}, 2), vec({0, 1})));
    CHECK(contains(span({vec({1, 2}), vec({0, 1})}, 2), vec({5, 11})));
    CHECK_THROWS_AS(contains(span({vec({1, 0})}, 2), vec({1, 0, 0})), DimensionMismatch);
  }

  TEST_CASE("sum and equality examples") {
    const Subspace x = span({vec({1, 0})}, 2);
    const Subspace y = span({vec({0, 1})}, 2);
    CHECK(subspace_sum(x, y).dim() == 2);
    CHECK(subspace_sum(x, x) == x);
    CHECK(subspace_sum(span({vec({1, 1})}, 2), span({vec({1, -1})}, 2)).dim() == 2);
    CHECK(subspace_equal(span({vec({2, 4})}, 2), span({vec({-1, -2})}, 2)));
    CHECK_THROWS_AS(subspace_sum(x, Subspace(3)), DimensionMismatch);
  }

  TEST_CASE("solve_linear examples") {
    RatMatrix id = RatMatrix::Identity(3, 3);
    CHECK(*solve_linear(id, vec({4, 5, 6})) == vec({4, 5, 6}));

    RatMatrix zero = RatMatrix::Zero(2, 2);
    CHECK_FALSE(solve_linear(zero, vec({1, 0})).has_value());

    RatMatrix a(2, 2);
    a << 1, 1, 0, 1;
    CHECK(*solve_linear(a, vec({3, 1})) == vec({2, 1}));

    RatMatrix under(1, 3);
    under << 0, 2, 1;
    CHECK(*solve_linear(under, vec({4})) == vec({0, 2, 0}));

    CHECK_THROWS_AS(solve_linear(a, vec({1, 2, 3})), DimensionMismatch);
  }

  TEST_CASE("incremental basis keeps insertion order") {
    IncrementalBasis<Rational> b(3);
    CHECK(b.insert(vec({0, 1, 0})));
    CHECK_FALSE(b.insert(vec({0, 2, 0})));
    CHECK(b.insert(vec({1, 1, 0})));
    CHECK(b.dim() == 2);
    CHECK(b.members().size() == 2);
    CHECK(b.members()[0] == vec({0, 1, 0}));
    CHECK(b.contains(vec({3, 5, 0})));
    CHECK_FALSE(b.contains(vec({0, 0, 1})));
    CHECK(b.span() == span({vec({1, 0, 0}), vec({0, 1, 0})}, 3));
  }

  TEST_CASE("canonical form invariants on random matrices") {
    testing::Gen gen(11);
    for (int trial = 0; trial < 60; ++trial) {
      const Index n = gen.uniform(1, 6);
      std::vector<RatVector> rows;
      const int count = gen.uniform(0, 7);
      for (int k = 0; k < count; ++k) {
        RatVector v(n);
        for (Index c = 0; c < n; ++c) v[c] = gen.chance(40) ? Rational(0) : gen.rational(4);
        rows.push_back(v);
      }
      const Subspace s = echelonize(rows, n);
      // Pivots are 1, strictly increasing, and the only nonzero in their column.
      for (std::size_t r = 0; r < s.pivots().size(); ++r) {
        const Index p = s.pivots()[r];
        if (r > 0) CHECK(p > s.pivots()[r - 1]);
        for (Index q = 0; q < s.dim(); ++q) CHECK(s.basis()(q, p) == (q == static_cast<Index>(r) ? 1 : 0));
      }
      CHECK(echelonize(s.basis()) == s);

      std::vector<RatVector> shuffled = rows;
      std::shuffle(shuffled.begin(), shuffled.end(), gen.engine());
      for (auto& v : shuffled) v *= Rational(gen.uniform(1, 5)) / gen.uniform(1, 5);
      CHECK(echelonize(shuffled, n) == s);

      for (const auto& v : rows) CHECK(contains(s, v));
      const RatVector probe = gen.vector(n, 3);
      CHECK(contains(s, probe) == (subspace_sum(s, echelonize(std::vector<RatVector>{probe}, n)).dim() == s.dim()));
    }
  }

  TEST_CASE("solve then multiply reproduces b exactly") {
    testing::Gen gen(12);
    for (int trial = 0; trial < 40; ++trial) {
      const Index m = gen.uniform(1, 6);
      const Index n = gen.uniform(1, 6);
      RatMatrix a(m, n);
      for (Index r = 0; r < m; ++r)
        for (Index c = 0; c < n; ++c) a(r, c) = gen.rational(5);
      RatVector x(n);
      for (Index c = 0; c < n; ++c) x[c] = gen.rational(5);
      const RatVector b = a * x;
      const auto sol = solve_linear(a, b);
      REQUIRE(sol.has_value());
      CHECK(RatVector(a * *sol) == b);
    }
  }

  TEST_CASE("the kernel is generic in the scalar") {
    using Q = boost::multiprecision::mpq_rational;
    Matrix<Q> m(2, 3);
    m << 2, 4, 6, 1, 2, 4;
    const BasicSubspace<Q> s = echelonize(m);
    CHECK(s.dim() == 2);
    CHECK(s.pivots() == std::vector<Index>{0, 2});
  }
}
