#pragma once

// Exact dense linear algebra over a field scalar: reduced row-echelon
// subspaces, incremental bases and linear solves. Everything here is
// templated on the scalar; the library instantiates it with Rational.
// Comparisons against zero are exact, so Scalar must be an exact field type.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "obstructor/errors.hpp"
#include "obstructor/rational.hpp"

namespace obstructor {

namespace detail {

/// In-place Gauss-Jordan elimination. Leaves the nonzero rows of the reduced
/// row-echelon form in rows [0, rank) and returns their pivot columns.
template <typename Scalar>
std::vector<Index> reduce_rows(Matrix<Scalar>& m) {
  std::vector<Index> pivots;
  const Index rows = m.rows();
  const Index cols = m.cols();
  Index row = 0;
  for (Index col = 0; col < cols && row < rows; ++col) {
    Index pivot = row;
    while (pivot < rows && m(pivot, col) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != row) m.row(pivot).swap(m.row(row));
    const Scalar inv = Scalar(1) / m(row, col);
    for (Index c = col; c < cols; ++c)
      if (m(row, c) != 0) m(row, c) *= inv;
    for (Index r = 0; r < rows; ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Scalar factor = m(r, col);
      for (Index c = col; c < cols; ++c)
        if (m(row, c) != 0) m(r, c) -= factor * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace detail

/// A subspace of Scalar^n stored by its reduced row-echelon basis. The
/// representation is canonical: equal subspaces have identical bases.
template <typename Scalar>
class BasicSubspace {
 public:
  explicit BasicSubspace(Index ambient_dim = 0)
      : ambient_(ambient_dim), basis_(0, ambient_dim) {}

  Index ambient_dim() const { return ambient_; }
  Index dim() const { return basis_.rows(); }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_; }

  /// dim() x ambient_dim() matrix whose rows are the echelon basis.
  const Matrix<Scalar>& basis() const { return basis_; }
  Vector<Scalar> basis_vector(Index k) const { return basis_.row(k).transpose(); }
  const std::vector<Index>& pivots() const { return pivots_; }

  friend bool operator==(const BasicSubspace& a, const BasicSubspace& b) {
    if (a.ambient_ != b.ambient_ || a.dim() != b.dim()) return false;
    for (Index r = 0; r < a.dim(); ++r)
      for (Index c = 0; c < a.ambient_; ++c)
        if (a.basis_(r, c) != b.basis_(r, c)) return false;
    return true;
  }

 private:
  template <typename S>
  friend BasicSubspace<S> echelonize(const Matrix<S>& rows);

  Index ambient_;
  Matrix<Scalar> basis_;
  std::vector<Index> pivots_;
};

/// Canonical span of the rows of `rows`; the ambient dimension is rows.cols().
template <typename Scalar>
BasicSubspace<Scalar> echelonize(const Matrix<Scalar>& rows) {
  Matrix<Scalar> work = rows;
  BasicSubspace<Scalar> out(rows.cols());
  out.pivots_ = detail::reduce_rows(work);
  out.basis_ = work.topRows(static_cast<Index>(out.pivots_.size()));
  return out;
}

template <typename Scalar>
BasicSubspace<Scalar> echelonize(std::span<const Vector<Scalar>> rows, Index ambient_dim) {
  Matrix<Scalar> m(static_cast<Index>(rows.size()), ambient_dim);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != ambient_dim)
      throw DimensionMismatch("echelonize: row " + std::to_string(r) + " has length " +
                              std::to_string(rows[r].size()) + ", expected " +
                              std::to_string(ambient_dim));
    m.row(static_cast<Index>(r)) = rows[r].transpose();
  }
  return echelonize(m);
}

template <typename Scalar>
BasicSubspace<Scalar> echelonize(const std::vector<Vector<Scalar>>& rows, Index ambient_dim) {
  return echelonize(std::span<const Vector<Scalar>>(rows), ambient_dim);
}

/// Residual of v after eliminating the pivot coordinates of S.
/// The residual is zero iff v lies in S.
template <typename Scalar>
Vector<Scalar> reduce(const BasicSubspace<Scalar>& s, Vector<Scalar> v) {
  if (v.size() != s.ambient_dim())
    throw DimensionMismatch("reduce: vector length " + std::to_string(v.size()) +
                            " vs ambient " + std::to_string(s.ambient_dim()));
  const auto& b = s.basis();
  for (Index r = 0; r < s.dim(); ++r) {
    const Index p = s.pivots()[static_cast<std::size_t>(r)];
    if (v[p] == 0) continue;
    const Scalar factor = v[p];
    for (Index c = p; c < v.size(); ++c)
      if (b(r, c) != 0) v[c] -= factor * b(r, c);
  }
  return v;
}

template <typename Scalar>
bool contains(const BasicSubspace<Scalar>& s, const Vector<Scalar>& v) {
  return is_zero_vector(reduce(s, v));
}

template <typename Scalar>
BasicSubspace<Scalar> subspace_sum(const BasicSubspace<Scalar>& a, const BasicSubspace<Scalar>& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw DimensionMismatch("subspace_sum: ambient dimensions differ");
  Matrix<Scalar> stacked(a.dim() + b.dim(), a.ambient_dim());
  stacked << a.basis(), b.basis();
  return echelonize(stacked);
}

template <typename Scalar>
bool subspace_equal(const BasicSubspace<Scalar>& a, const BasicSubspace<Scalar>& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw DimensionMismatch("subspace_equal: ambient dimensions differ");
  return a == b;
}

/// a ⊆ b.
template <typename Scalar>
bool is_subspace_of(const BasicSubspace<Scalar>& a, const BasicSubspace<Scalar>& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw DimensionMismatch("is_subspace_of: ambient dimensions differ");
  for (Index r = 0; r < a.dim(); ++r)
    if (!contains(b, a.basis_vector(r))) return false;
  return true;
}

/// One exact solution of a·x = b, or nullopt if the system is inconsistent.
/// Free variables are set to zero.
template <typename Scalar>
std::optional<Vector<Scalar>> solve_linear(const Matrix<Scalar>& a, const Vector<Scalar>& b) {
  if (a.rows() != b.size())
    throw DimensionMismatch("solve_linear: matrix has " + std::to_string(a.rows()) +
                            " rows, right-hand side has " + std::to_string(b.size()));
  Matrix<Scalar> aug(a.rows(), a.cols() + 1);
  aug << a, b;
  const auto pivots = detail::reduce_rows(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  Vector<Scalar> x = Vector<Scalar>::Zero(a.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r)
    x[pivots[r]] = aug(static_cast<Index>(r), a.cols());
  return x;
}

/// Grows a linearly independent family one vector at a time. Keeps the
/// inserted vectors verbatim (in insertion order) next to a row-echelon
/// copy used for membership tests. Fixed-point algorithms use the stable
/// member order to multiply only pairs that involve new members.
template <typename Scalar>
class IncrementalBasis {
 public:
  explicit IncrementalBasis(Index ambient_dim) : ambient_(ambient_dim) {}

  Index ambient_dim() const { return ambient_; }
  Index dim() const { return static_cast<Index>(members_.size()); }
  bool is_full() const { return dim() == ambient_; }
  const std::vector<Vector<Scalar>>& members() const { return members_; }

  bool contains(const Vector<Scalar>& v) const { return is_zero_vector(reduce(v)); }

  /// Adds v if it is not already in the span; returns whether it was added.
  bool insert(const Vector<Scalar>& v) {
    if (is_full()) {
      check_length(v);
      return false;
    }
    Vector<Scalar> residual = reduce(v);
    Index pivot = 0;
    while (pivot < residual.size() && residual[pivot] == 0) ++pivot;
    if (pivot == residual.size()) return false;
    const Scalar inv = Scalar(1) / residual[pivot];
    for (Index c = pivot; c < residual.size(); ++c)
      if (residual[c] != 0) residual[c] *= inv;
    echelon_.emplace(pivot, std::move(residual));
    members_.push_back(v);
    return true;
  }

  BasicSubspace<Scalar> span() const { return echelonize(members_, ambient_); }

 private:
  void check_length(const Vector<Scalar>& v) const {
    if (v.size() != ambient_)
      throw DimensionMismatch("IncrementalBasis: vector length " + std::to_string(v.size()) +
                              " vs ambient " + std::to_string(ambient_));
  }

  Vector<Scalar> reduce(Vector<Scalar> v) const {
    check_length(v);
    // Rows have zeros left of their pivot, so increasing pivot order clears
    // every pivot coordinate in one pass.
    for (const auto& [pivot, row] : echelon_) {
      if (v[pivot] == 0) continue;
      const Scalar factor = v[pivot];
      for (Index c = pivot; c < ambient_; ++c)
        if (row[c] != 0) v[c] -= factor * row[c];
    }
    return v;
  }

  Index ambient_;
  std::vector<Vector<Scalar>> members_;
  std::map<Index, Vector<Scalar>> echelon_;
};

using Subspace = BasicSubspace<Rational>;

}  // namespace obstructor
