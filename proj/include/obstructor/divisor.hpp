#pragma once

// Multihomogeneous polynomials on (P^1)^r with rational coefficients. Factor i
// carries the coordinates [x_i : y_i].

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "obstructor/rational.hpp"

namespace obstructor {

/// A point [x : y] of P^1; (0, 0) is rejected.
struct ProjectivePoint {
  Rational x;
  Rational y;

  ProjectivePoint(Rational x, Rational y);
};

std::string to_string(const ProjectivePoint& pt);

class MultiHomogPoly {
 public:
  /// (a_1, b_1, ..., a_r, b_r): the exponents of x_1, y_1, ..., x_r, y_r.
  using Exponents = std::vector<int>;
  using Terms = std::map<Exponents, Rational>;

  /// The zero polynomial, with multidegree (0, ..., 0).
  explicit MultiHomogPoly(int r);

  /// Validates that every term has the same multidegree; drops zero
  /// coefficients. Throws ValidationError naming the first offending term.
  MultiHomogPoly(int r, Terms terms);

  static MultiHomogPoly constant(int r, const Rational& c);

  int r() const { return r_; }
  const std::vector<int>& degrees() const { return degrees_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  friend bool operator==(const MultiHomogPoly&, const MultiHomogPoly&) = default;

 private:
  int r_;
  std::vector<int> degrees_;
  Terms terms_;
};

/// Variables x1..xr, y1..yr; integer or n/d coefficients; + - * ^ and
/// parentheses. ParseError carries the byte offset of a syntax error; an
/// inhomogeneous input raises ValidationError naming the offending term.
MultiHomogPoly parse_poly(std::string_view text, int r);

/// Sum; both operands must share r, and the multidegree unless one is zero.
MultiHomogPoly operator+(const MultiHomogPoly& f, const MultiHomogPoly& g);
MultiHomogPoly operator-(const MultiHomogPoly& f);
MultiHomogPoly operator-(const MultiHomogPoly& f, const MultiHomogPoly& g);
MultiHomogPoly operator*(const MultiHomogPoly& f, const MultiHomogPoly& g);

/// x_i <- x_i^{e_i}, y_i <- y_i^{e_i}.
MultiHomogPoly substitute_powers(const MultiHomogPoly& f, const std::vector<int>& exps);

/// f == product of factors (the empty product is 1). Throws DimensionMismatch
/// when nonzero factors have multidegrees that do not add up to f's.
bool verify_factorization(const MultiHomogPoly& f, const std::vector<MultiHomogPoly>& factors);

/// Substitutes the given points into their factors (1-based); the result has
/// degree 0 in those factors.
MultiHomogPoly restrict_to_fibers(const MultiHomogPoly& f,
                                  const std::vector<std::pair<int, ProjectivePoint>>& fibers);

/// Whether V(f) contains the fiber over (pt_i, pt_j) in factors i != j.
bool contains_double_fiber(const MultiHomogPoly& f, int i, const ProjectivePoint& pt_i, int j,
                           const ProjectivePoint& pt_j);

/// Terms in descending lexicographic order, e.g. "x1*x2*x3 - y1*y2*y3".
std::string to_string(const MultiHomogPoly& f);

/// "[a:b]" with rational a, b.
ProjectivePoint parse_point(std::string_view text);

/// "i:[a:b]".
std::pair<int, ProjectivePoint> parse_fiber(std::string_view text);

}  // namespace obstructor
