#pragma once

// Finite-dimensional associative Q-algebras given by structure constants,
// their elements, and rectangular matrices over an involutive base algebra.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "obstructor/rational.hpp"

namespace obstructor {

struct Term {
  Index index;
  Rational coeff;
};

/// Sorted by index, no zero coefficients.
using SparseVector = std::vector<Term>;

struct QuaternionParams {
  Rational a;
  Rational b;
  std::optional<Integer> p;  // set when built for a supersingular prime
};

/// Unvalidated description of an algebra; make_algebra() checks it.
struct AlgebraData {
  Index dim = 0;
  std::vector<std::string> labels;
  /// products[i * dim + j] is the coefficient vector of b_i * b_j.
  std::vector<SparseVector> products;
  std::optional<RatVector> unit;
  /// Column k holds the coefficients of σ(b_k).
  std::optional<RatMatrix> involution;
  std::string name;
  std::optional<QuaternionParams> quaternion;
};

class StructureAlgebra;
using AlgebraPtr = std::shared_ptr<const StructureAlgebra>;

class StructureAlgebra {
 public:
  Index dim() const { return data_.dim; }
  const std::string& name() const { return data_.name; }
  const std::vector<std::string>& basis_labels() const { return data_.labels; }

  const SparseVector& basis_product(Index i, Index j) const {
    return data_.products[static_cast<std::size_t>(i * data_.dim + j)];
  }
  /// Dense coefficient vector of b_i * b_j.
  RatVector structure_constant(Index i, Index j) const;

  bool has_unit() const { return data_.unit.has_value(); }
  const RatVector& unit() const;
  bool has_involution() const { return data_.involution.has_value(); }
  const RatMatrix& involution() const;
  const std::optional<QuaternionParams>& quaternion_params() const { return data_.quaternion; }

  RatVector zero() const { return RatVector::Zero(data_.dim); }
  RatVector basis_vector(Index k) const;

  RatVector multiply(const RatVector& x, const RatVector& y) const;
  RatVector involute(const RatVector& x) const;

 private:
  explicit StructureAlgebra(AlgebraData data);
  friend AlgebraPtr make_algebra(AlgebraData data);
  friend bool same_algebra(const AlgebraPtr& x, const AlgebraPtr& y);

  AlgebraData data_;
  std::vector<SparseVector> involution_columns_;
};

/// Same object, or equal structure constants, unit and involution. Factories
/// build a fresh algebra per call, so identity alone is too strict.
bool same_algebra(const AlgebraPtr& x, const AlgebraPtr& y);

/// Validates associativity on all basis triples, the unit law and the
/// involution laws, then freezes the algebra. Throws ValidationError naming
/// the first failing basis triple or pair.
AlgebraPtr make_algebra(AlgebraData data);

/// Dense-constant overload: struct_consts[i][j] = coefficients of b_i b_j.
AlgebraPtr make_algebra(Index dim, const std::vector<std::vector<RatVector>>& struct_consts,
                        std::optional<RatVector> unit = std::nullopt,
                        std::optional<RatMatrix> involution = std::nullopt);

/// Q itself with the trivial involution.
AlgebraPtr rationals();

/// (a,b)/Q with basis 1,i,j,k, i² = a, j² = b, ij = k = -ji, and the main
/// involution x ↦ Trd(x) - x.
AlgebraPtr quaternion_algebra(const Rational& a, const Rational& b);

/// The definite quaternion algebra ramified exactly at {p, ∞}.
AlgebraPtr quaternion_for_prime(const Integer& p);

/// M_g(base) with (a_ij)† = (a_ji†). Basis index (row * g + col) * dim(base) + k.
AlgebraPtr matrix_algebra(const AlgebraPtr& base, int g);

/// M_2g(Q) with the 2x2-block symplectic involution
/// (a b; c d) at block (I,J) ↦ (d -b; -c a) at block (J,I).
/// Basis index row * 2g + col.
AlgebraPtr split_model(int g);

/// An element of a StructureAlgebra.
class AlgElement {
 public:
  AlgElement(AlgebraPtr algebra, RatVector coeffs);

  static AlgElement zero(const AlgebraPtr& algebra);
  static AlgElement unit(const AlgebraPtr& algebra);
  static AlgElement basis(const AlgebraPtr& algebra, Index k);

  const AlgebraPtr& algebra() const { return algebra_; }
  const RatVector& coeffs() const { return coeffs_; }
  bool is_zero() const { return is_zero_vector(coeffs_); }

  friend bool operator==(const AlgElement& x, const AlgElement& y);
  friend AlgElement operator+(const AlgElement& x, const AlgElement& y);
  friend AlgElement operator-(const AlgElement& x, const AlgElement& y);
  friend AlgElement operator-(const AlgElement& x);
  friend AlgElement operator*(const AlgElement& x, const AlgElement& y);
  friend AlgElement operator*(const Rational& s, const AlgElement& x);

 private:
  AlgebraPtr algebra_;
  RatVector coeffs_;
};

AlgElement mul(const AlgElement& x, const AlgElement& y);
AlgElement apply_involution(const AlgElement& x);
/// x^n for n >= 1.
AlgElement power(const AlgElement& x, int n);
bool commutes(const AlgElement& x, const AlgElement& y);

/// Reduced trace and norm of a quaternion: x + x† and x·x† as rationals.
Rational reduced_trace(const AlgElement& x);
Rational reduced_norm(const AlgElement& x);

/// Human-readable sum of basis labels, e.g. "2*e12 - e21".
std::string format_element(const AlgElement& x);

/// A rows x cols matrix over an involutive base algebra. Flattened row-major,
/// then by base coefficient.
class DMatrix {
 public:
  DMatrix(AlgebraPtr base, Index rows, Index cols);
  DMatrix(AlgebraPtr base, Index rows, Index cols, RatVector flat);

  static DMatrix identity(const AlgebraPtr& base, Index n);

  const AlgebraPtr& base() const { return base_; }
  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  const RatVector& flat() const { return flat_; }

  AlgElement entry(Index r, Index c) const;
  void set_entry(Index r, Index c, const AlgElement& value);

  friend bool operator==(const DMatrix& x, const DMatrix& y);
  friend DMatrix operator+(const DMatrix& x, const DMatrix& y);
  friend DMatrix operator-(const DMatrix& x, const DMatrix& y);
  friend DMatrix operator*(const DMatrix& x, const DMatrix& y);
  friend DMatrix operator*(const Rational& s, const DMatrix& x);

 private:
  AlgebraPtr base_;
  Index rows_;
  Index cols_;
  RatVector flat_;
};

/// Transpose with the base involution applied entrywise.
DMatrix dagger_transpose(const DMatrix& m);

/// Flat product of a (rows x inner) and an (inner x cols) matrix over base.
RatVector dmatrix_product(const StructureAlgebra& base, const RatVector& lhs, Index rows,
                          Index inner, const RatVector& rhs, Index cols);

/// Same coefficients, viewed in matrix_algebra(m.base(), g) (m must be g x g).
AlgElement to_matrix_element(const DMatrix& m, const AlgebraPtr& matrix_alg);
DMatrix from_matrix_element(const AlgElement& x, const AlgebraPtr& base, Index g);

}  // namespace obstructor
