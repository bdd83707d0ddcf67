#include <doctest.h>

#include "obstructor/divisor.hpp"
#include "obstructor/errors.hpp"
#include "support.hpp"

using namespace obstructor;

namespace {

// Random multihomogeneous polynomial of the given multidegree.
MultiHomogPoly random_poly(testing::Gen& gen, const std::vector<int>& degrees) {
  const int r = static_cast<int>(degrees.size());
  MultiHomogPoly::Terms terms;
  const int count = gen.uniform(0, 4);
  for (int t = 0; t < count; ++t) {
    MultiHomogPoly::Exponents e;
    for (int d : degrees) {
      const int a = gen.uniform(0, d);
      e.push_back(a);
      e.push_back(d - a);
    }
    terms[e] += gen.rational(4);
  }
  return MultiHomogPoly(r, terms);
}

const MultiHomogPoly& example() {
  static const MultiHomogPoly f = parse_poly("x1*x2*x3 - y1*y2*y3", 3);
  return f;
}

}  // namespace

TEST_SUITE("divisor") {
  TEST_CASE("parse examples") {
    const MultiHomogPoly& f = example();
    CHECK(f.degrees() == std::vector<int>{1, 1, 1});
    CHECK(f.terms().size() == 2);
    CHECK(to_string(f) == "x1*x2*x3 - y1*y2*y3");

    const MultiHomogPoly zero = parse_poly("0", 2);
    CHECK(zero.is_zero());
    CHECK(zero.degrees() == std::vector<int>{0, 0});
    CHECK(to_string(zero) == "0");
  }

  TEST_CASE("parser syntax") {
    CHECK(parse_poly("(x1 + y1)^2", 1) == parse_poly("x1^2 + 2*x1*y1 + y1^2", 1));
    CHECK(parse_poly("1/2*x1*y2 − 3*y1*x2", 2) == parse_poly("-3*y1*x2 + 1/2*x1*y2", 2));
    CHECK(parse_poly("-(x1 - y1)", 1) == parse_poly("y1 - x1", 1));
    CHECK(parse_poly("x1*y1 - y1*x1", 1).is_zero());
    CHECK(parse_poly("3", 2) == MultiHomogPoly::constant(2, 3));
    CHECK(to_string(parse_poly("2*x1^3*y2 - x1^3*x2", 2)) == "-x1^3*x2 + 2*x1^3*y2");
  }

  TEST_CASE("inhomogeneous input names the term") {
    try {
      parse_poly("x1^2 + y1", 1);
      FAIL("expected a validation error");
    } catch (const ValidationError& e) {
      const std::string what = e.what();
      CHECK(what.find("y1") != std::string::npos);
      CHECK(what.find("(1)") != std::string::npos);
      CHECK(what.find("(2)") != std::string::npos);
    }
  }

  TEST_CASE("syntax errors carry a position") {
    auto position = [](const char* text, int r) -> std::size_t {
      try {
        parse_poly(text, r);
      } catch (const ParseError& e) {
        return e.position();
      }
      return std::string::npos;
    };
    CHECK(position("x1 + * y1", 1) == 5);
    CHECK(position("x3", 2) == 0);
    CHECK(position("x1 + z1", 1) == 5);
    CHECK(position("(x1 + y1", 1) == 8);
    CHECK(position("x1^", 1) == 3);
    CHECK(position("2/0*x1", 1) == 0);
    CHECK(position("x1 y1", 1) == 3);
    CHECK_THROWS_AS(parse_poly("x1", 0), InvalidArgument);
  }

  TEST_CASE("substitute_powers") {
    const MultiHomogPoly sq = substitute_powers(example(), {2, 2, 2});
    CHECK(sq == parse_poly("x1^2*x2^2*x3^2 - y1^2*y2^2*y3^2", 3));
    CHECK(sq.degrees() == std::vector<int>{2, 2, 2});
    CHECK(substitute_powers(example(), {1, 1, 1}) == example());
    CHECK(substitute_powers(example(), {1, 3, 2}).degrees() == std::vector<int>{1, 3, 2});
    CHECK_THROWS_AS(substitute_powers(example(), {2, 2}), DimensionMismatch);
    CHECK_THROWS_AS(substitute_powers(example(), {2, 0, 2}), InvalidArgument);
  }

  TEST_CASE("verify_factorization") {
    const MultiHomogPoly sq = substitute_powers(example(), {2, 2, 2});
    const MultiHomogPoly plus = parse_poly("x1*x2*x3 + y1*y2*y3", 3);
    CHECK(verify_factorization(sq, {example(), plus}));
    CHECK_FALSE(verify_factorization(sq, {example(), example()}));
    CHECK(verify_factorization(example(), {example(), MultiHomogPoly::constant(3, 1)}));
    CHECK(verify_factorization(example(), {example()}));
    CHECK_THROWS_AS(verify_factorization(sq, {example()}), DimensionMismatch);
  }

  TEST_CASE("double fibers") {
    CHECK(contains_double_fiber(example(), 1, {0, 1}, 2, {1, 0}));
    CHECK_FALSE(contains_double_fiber(example(), 1, {1, 1}, 2, {1, 1}));
    CHECK(to_string(restrict_to_fibers(example(), {{1, {1, 1}}, {2, {1, 1}}})) == "x3 - y3");
    CHECK(contains_double_fiber(parse_poly("0", 3), 1, {2, 5}, 3, {1, 0}));
    CHECK_THROWS_AS(ProjectivePoint(0, 0), InvalidArgument);
    CHECK_THROWS_AS(contains_double_fiber(example(), 1, {0, 1}, 1, {1, 0}), InvalidArgument);
    CHECK_THROWS_AS(contains_double_fiber(example(), 1, {0, 1}, 4, {1, 0}), InvalidArgument);
  }

  TEST_CASE("point and fiber syntax") {
    const auto [i, pt] = parse_fiber("2:[1/2:-3]");
    CHECK(i == 2);
    CHECK(pt.x == Rational(1) / 2);
    CHECK(pt.y == -3);
    CHECK(to_string(parse_point("[0:1]")) == "[0:1]");
    CHECK_THROWS_AS(parse_point("[0:0]"), InvalidArgument);
    CHECK_THROWS_AS(parse_point("0:1"), ParseError);
    CHECK_THROWS_AS(parse_fiber("[0:1]"), ParseError);
    CHECK_THROWS_AS(parse_fiber("x:[0:1]"), ParseError);
  }

  TEST_CASE("arithmetic properties on random polynomials") {
    testing::Gen gen(70);
    for (int t = 0; t < 40; ++t) {
      const int r = gen.uniform(1, 3);
      std::vector<int> df, dg, exps;
      for (int i = 0; i < r; ++i) {
        df.push_back(gen.uniform(0, 2));
        dg.push_back(gen.uniform(0, 2));
        exps.push_back(gen.uniform(1, 3));
      }
      const MultiHomogPoly f = random_poly(gen, df), f2 = random_poly(gen, df), g = random_poly(gen, dg);
      CHECK(substitute_powers(f * g, exps) == substitute_powers(f, exps) * substitute_powers(g, exps));
      CHECK(substitute_powers(f + f2, exps) == substitute_powers(f, exps) + substitute_powers(f2, exps));
      CHECK(f * g == g * f);
      CHECK(f - f == MultiHomogPoly(r));
      CHECK(parse_poly(to_string(f), r) == f);
      if (!f.is_zero() && !g.is_zero()) CHECK(verify_factorization(f * g, {g, f}));

      if (r >= 2) {
        const ProjectivePoint p(gen.uniform(-2, 2), gen.uniform(1, 2)), q(gen.uniform(1, 2), gen.uniform(-2, 2));
        const Rational s = gen.uniform(1, 5), u = -gen.uniform(1, 5);
        const ProjectivePoint ps(s * p.x, s * p.y), qs(u * q.x, u * q.y);
        CHECK(contains_double_fiber(f, 1, p, 2, q) == contains_double_fiber(f, 1, ps, 2, qs));
      }
    }
  }

  TEST_CASE("operand mismatch") {
    CHECK_THROWS_AS(example() + parse_poly("x1", 1), DimensionMismatch);
    CHECK_THROWS_AS(example() + parse_poly("x1^2*x2*x3", 3), DimensionMismatch);
    CHECK_THROWS_AS(MultiHomogPoly(1, {{{1, 0}, Rational(1)}, {{1, 1}, Rational(1)}}), ValidationError);
    CHECK_THROWS_AS(MultiHomogPoly(1, {{{1}, Rational(1)}}), DimensionMismatch);
  }
}
