#include "obstructor/algebra.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <sstream>
#include <thread>

#include "obstructor/errors.hpp"
#include "obstructor/hilbert.hpp"

namespace obstructor {

namespace {

SparseVector canonical(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& x, const Term& y) { return x.index < y.index; });
  SparseVector out;
  for (auto& t : terms) {
    if (!out.empty() && out.back().index == t.index)
      out.back().coeff += t.coeff;
    else
      out.push_back(std::move(t));
  }
  std::erase_if(out, [](const Term& t) { return t.coeff == 0; });
  return out;
}

SparseVector to_sparse(const RatVector& v) {
  SparseVector out;
  for (Index k = 0; k < v.size(); ++k)
    if (v[k] != 0) out.push_back({k, v[k]});
  return out;
}

SparseVector basis_sparse(Index k) { return {{k, Rational(1)}}; }

std::vector<Index> support(const RatVector& v) {
  std::vector<Index> out;
  for (Index k = 0; k < v.size(); ++k)
    if (v[k] != 0) out.push_back(k);
  return out;
}

// Sparse product through raw structure constants; used before the algebra
// object exists.
SparseVector sparse_mul(const AlgebraData& d, const SparseVector& x, const SparseVector& y) {
  std::vector<Term> acc;
  for (const auto& [i, ci] : x)
    for (const auto& [j, cj] : y) {
      const Rational cij = ci * cj;
      for (const auto& [k, c] : d.products[static_cast<std::size_t>(i * d.dim + j)])
        acc.push_back({k, cij * c});
    }
  return canonical(std::move(acc));
}

bool sparse_equal(const SparseVector& x, const SparseVector& y) {
  if (x.size() != y.size()) return false;
  for (std::size_t k = 0; k < x.size(); ++k)
    if (x[k].index != y[k].index || x[k].coeff != y[k].coeff) return false;
  return true;
}

std::string label(const AlgebraData& d, Index k) {
  return d.labels[static_cast<std::size_t>(k)];
}

void check_shapes(AlgebraData& d) {
  if (d.dim <= 0) throw ValidationError("algebra dimension must be positive");
  const auto n = static_cast<std::size_t>(d.dim);
  if (d.labels.empty())
    for (Index k = 0; k < d.dim; ++k) d.labels.push_back("b" + std::to_string(k + 1));
  if (d.labels.size() != n) throw DimensionMismatch("expected " + std::to_string(n) + " basis labels");
  if (d.products.size() != n * n)
    throw DimensionMismatch("expected " + std::to_string(n * n) + " structure constant vectors");
  for (auto& p : d.products) {
    for (const auto& t : p)
      if (t.index < 0 || t.index >= d.dim)
        throw DimensionMismatch("structure constant index out of range");
    p = canonical(std::move(p));
  }
  if (d.unit && d.unit->size() != d.dim) throw DimensionMismatch("unit has wrong length");
  if (d.involution && (d.involution->rows() != d.dim || d.involution->cols() != d.dim))
    throw DimensionMismatch("involution matrix has wrong shape");
}

void check_associativity(const AlgebraData& d) {
  const Index n = d.dim;
  // Each worker scans a stripe of first indices and records its first failure;
  // the smallest failing triple is reported so the message is deterministic.
  const unsigned workers =
      n * n * n < 20000 ? 1u : std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  std::vector<Index> first_fail(workers, -1);
  std::vector<std::array<Index, 3>> triple(workers);
  std::atomic<Index> global_fail{n};
  auto run = [&](unsigned w) {
    for (Index i = w; i < n && i <= global_fail.load(); i += workers)
      for (Index j = 0; j < n; ++j) {
        const SparseVector& bij = d.products[static_cast<std::size_t>(i * n + j)];
        for (Index k = 0; k < n; ++k) {
          const SparseVector& bjk = d.products[static_cast<std::size_t>(j * n + k)];
          const SparseVector lhs = sparse_mul(d, bij, basis_sparse(k));
          const SparseVector rhs = sparse_mul(d, basis_sparse(i), bjk);
          if (!sparse_equal(lhs, rhs)) {
            first_fail[w] = i;
            triple[w] = {i, j, k};
            Index seen = global_fail.load();
            while (i < seen && !global_fail.compare_exchange_weak(seen, i)) {
            }
            return;
          }
        }
      }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  std::optional<std::array<Index, 3>> worst;
  for (unsigned w = 0; w < workers; ++w)
    if (first_fail[w] >= 0 && (!worst || triple[w] < *worst)) worst = triple[w];
  if (worst) {
    const auto [i, j, k] = *worst;
    throw ValidationError("structure constants are not associative on (" + label(d, i) + ", " +
                          label(d, j) + ", " + label(d, k) + ")");
  }
}

void check_unit(const AlgebraData& d) {
  const SparseVector u = to_sparse(*d.unit);
  for (Index k = 0; k < d.dim; ++k) {
    const SparseVector bk = basis_sparse(k);
    if (!sparse_equal(sparse_mul(d, u, bk), bk) || !sparse_equal(sparse_mul(d, bk, u), bk))
      throw ValidationError("claimed unit fails on basis element " + label(d, k));
  }
}

void check_involution(const AlgebraData& d, const std::vector<SparseVector>& sigma) {
  auto apply = [&](const SparseVector& x) {
    std::vector<Term> acc;
    for (const auto& [k, c] : x)
      for (const auto& [m, s] : sigma[static_cast<std::size_t>(k)]) acc.push_back({m, c * s});
    return canonical(std::move(acc));
  };
  for (Index k = 0; k < d.dim; ++k)
    if (!sparse_equal(apply(sigma[static_cast<std::size_t>(k)]), basis_sparse(k)))
      throw ValidationError("involution is not involutive on " + label(d, k));
  for (Index i = 0; i < d.dim; ++i)
    for (Index j = 0; j < d.dim; ++j) {
      const SparseVector lhs = apply(d.products[static_cast<std::size_t>(i * d.dim + j)]);
      const SparseVector rhs =
          sparse_mul(d, sigma[static_cast<std::size_t>(j)], sigma[static_cast<std::size_t>(i)]);
      if (!sparse_equal(lhs, rhs))
        throw ValidationError("involution is not anti-multiplicative on (" + label(d, i) + ", " +
                              label(d, j) + ")");
    }
  if (d.unit) {
    const SparseVector u = to_sparse(*d.unit);
    if (!sparse_equal(apply(u), u)) throw ValidationError("involution does not fix the unit");
  }
}

void require_same(const AlgElement& x, const AlgElement& y, const char* op) {
  if (!same_algebra(x.algebra(), y.algebra()))
    throw InvalidArgument(std::string(op) + ": elements belong to different algebras");
}

}  // namespace

StructureAlgebra::StructureAlgebra(AlgebraData data) : data_(std::move(data)) {
  if (data_.involution)
    for (Index k = 0; k < data_.dim; ++k)
      involution_columns_.push_back(to_sparse(data_.involution->col(k)));
}

RatVector StructureAlgebra::structure_constant(Index i, Index j) const {
  RatVector out = zero();
  for (const auto& [k, c] : basis_product(i, j)) out[k] = c;
  return out;
}

const RatVector& StructureAlgebra::unit() const {
  if (!data_.unit) throw InvalidArgument(name() + " has no unit");
  return *data_.unit;
}

const RatMatrix& StructureAlgebra::involution() const {
  if (!data_.involution) throw InvalidArgument(name() + " has no involution");
  return *data_.involution;
}

RatVector StructureAlgebra::basis_vector(Index k) const {
  RatVector out = zero();
  out[k] = 1;
  return out;
}

RatVector StructureAlgebra::multiply(const RatVector& x, const RatVector& y) const {
  if (x.size() != dim() || y.size() != dim())
    throw DimensionMismatch("multiply: operand length does not match algebra dimension");
  RatVector out = zero();
  const auto sx = support(x);
  const auto sy = support(y);
  for (Index i : sx)
    for (Index j : sy) {
      const SparseVector& p = basis_product(i, j);
      if (p.empty()) continue;
      const Rational cij = x[i] * y[j];
      for (const auto& [k, c] : p) out[k] += cij * c;
    }
  return out;
}

RatVector StructureAlgebra::involute(const RatVector& x) const {
  if (!has_involution()) throw InvalidArgument(name() + " has no involution");
  if (x.size() != dim()) throw DimensionMismatch("involute: length does not match algebra");
  RatVector out = zero();
  for (Index k = 0; k < x.size(); ++k) {
    if (x[k] == 0) continue;
    for (const auto& [m, s] : involution_columns_[static_cast<std::size_t>(k)]) out[m] += x[k] * s;
  }
  return out;
}

bool same_algebra(const AlgebraPtr& x, const AlgebraPtr& y) {
  if (x == y) return true;
  if (!x || !y) return false;
  const AlgebraData& a = x->data_;
  const AlgebraData& b = y->data_;
  if (a.dim != b.dim || a.unit.has_value() != b.unit.has_value() ||
      a.involution.has_value() != b.involution.has_value())
    return false;
  if (a.unit && *a.unit != *b.unit) return false;
  if (a.involution && *a.involution != *b.involution) return false;
  for (std::size_t k = 0; k < a.products.size(); ++k)
    if (!sparse_equal(a.products[k], b.products[k])) return false;
  return true;
}

AlgebraPtr make_algebra(AlgebraData data) {
  check_shapes(data);
  check_associativity(data);
  if (data.unit) check_unit(data);
  if (data.involution) {
    std::vector<SparseVector> sigma;
    for (Index k = 0; k < data.dim; ++k) sigma.push_back(to_sparse(data.involution->col(k)));
    check_involution(data, sigma);
  }
  if (data.name.empty()) data.name = "A" + std::to_string(data.dim);
  return AlgebraPtr(new StructureAlgebra(std::move(data)));
}

AlgebraPtr make_algebra(Index dim, const std::vector<std::vector<RatVector>>& struct_consts,
                        std::optional<RatVector> unit, std::optional<RatMatrix> involution) {
  AlgebraData d;
  d.dim = dim;
  if (struct_consts.size() != static_cast<std::size_t>(dim))
    throw DimensionMismatch("structure constants must be a dim x dim array");
  for (const auto& row : struct_consts) {
    if (row.size() != static_cast<std::size_t>(dim))
      throw DimensionMismatch("structure constants must be a dim x dim array");
    for (const auto& v : row) {
      if (v.size() != dim) throw DimensionMismatch("structure constant vector has wrong length");
      d.products.push_back(to_sparse(v));
    }
  }
  d.unit = std::move(unit);
  d.involution = std::move(involution);
  return make_algebra(std::move(d));
}

AlgebraPtr rationals() {
  AlgebraData d;
  d.dim = 1;
  d.labels = {"1"};
  d.products = {{{0, Rational(1)}}};
  d.unit = RatVector::Ones(1);
  d.involution = RatMatrix::Identity(1, 1);
  d.name = "Q";
  return make_algebra(std::move(d));
}

AlgebraPtr quaternion_algebra(const Rational& a, const Rational& b) {
  if (a == 0 || b == 0) throw InvalidArgument("quaternion_algebra: parameters must be nonzero");
  AlgebraData d;
  d.dim = 4;
  d.labels = {"1", "i", "j", "k"};
  d.products.resize(16);
  auto set = [&](int x, int y, int z, const Rational& c) {
    d.products[static_cast<std::size_t>(x * 4 + y)] = {{z, c}};
  };
  for (int x = 0; x < 4; ++x) {
    set(0, x, x, 1);
    set(x, 0, x, 1);
  }
  set(1, 1, 0, a);
  set(2, 2, 0, b);
  set(3, 3, 0, -a * b);
  set(1, 2, 3, 1);
  set(2, 1, 3, -1);
  set(1, 3, 2, a);
  set(3, 1, 2, -a);
  set(2, 3, 1, -b);
  set(3, 2, 1, b);
  d.unit = RatVector::Unit(4, 0);
  RatMatrix conj = RatMatrix::Zero(4, 4);
  conj(0, 0) = 1;
  for (int k = 1; k < 4; ++k) conj(k, k) = -1;
  d.involution = conj;
  d.name = "(" + to_string(a) + "," + to_string(b) + ")/Q";
  d.quaternion = QuaternionParams{a, b, std::nullopt};
  return make_algebra(std::move(d));
}

AlgebraPtr quaternion_for_prime(const Integer& p) {
  if (!is_prime(p)) throw InvalidArgument("quaternion_for_prime: not a prime: " + p.str());
  Rational a;
  const Rational b = -Rational(p);
  if (p == 2) {
    a = -1;
  } else if (p % 4 == 3) {
    a = -1;
  } else if (p % 8 == 5) {
    a = -2;
  } else {
    // p ≡ 1 mod 8: smallest prime q ≡ 3 mod 4 that is a non-residue mod p.
    Integer q = 3;
    while (!(is_prime(q) && q % 4 == 3 && hilbert_symbol(Rational(q), Rational(p), Place::prime(p)) == -1))
      q += 4;
    a = -Rational(q);
  }
  const Rational bb = (p == 2) ? Rational(-1) : b;
  const auto ramified = ramified_places(a, bb);
  if (ramified.size() != 2 || !(ramified[0] == Place::prime(p)) || !ramified[1].is_infinite())
    throw ValidationError("quaternion_for_prime: parameters for p = " + p.str() +
                          " are not ramified exactly at {p, inf}");
  auto base = quaternion_algebra(a, bb);
  AlgebraData d;
  // Re-tag with the prime; the structure is that of quaternion_algebra(a, bb).
  d.dim = 4;
  d.labels = base->basis_labels();
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j) d.products.push_back(base->basis_product(i, j));
  d.unit = base->unit();
  d.involution = base->involution();
  d.name = "D(" + p.str() + ",inf)";
  d.quaternion = QuaternionParams{a, bb, p};
  return make_algebra(std::move(d));
}

AlgebraPtr matrix_algebra(const AlgebraPtr& base, int g) {
  if (g < 1) throw InvalidArgument("matrix_algebra: size must be positive");
  if (!base->has_unit() || !base->has_involution())
    throw InvalidArgument("matrix_algebra: base algebra needs a unit and an involution");
  const Index m = base->dim();
  const Index n = m * g * g;
  auto idx = [&](Index r, Index c, Index k) { return (r * g + c) * m + k; };
  AlgebraData d;
  d.dim = n;
  d.products.resize(static_cast<std::size_t>(n * n));
  for (Index r = 0; r < g; ++r)
    for (Index c = 0; c < g; ++c)
      for (Index k = 0; k < m; ++k) {
        std::string lbl = "e" + std::to_string(r + 1) + std::to_string(c + 1);
        if (m > 1) lbl += "*" + base->basis_labels()[static_cast<std::size_t>(k)];
        d.labels.push_back(std::move(lbl));
        for (Index e = 0; e < g; ++e)
          for (Index l = 0; l < m; ++l) {
            SparseVector prod;
            for (const auto& [s, coeff] : base->basis_product(k, l)) prod.push_back({idx(r, e, s), coeff});
            d.products[static_cast<std::size_t>(idx(r, c, k) * n + idx(c, e, l))] = std::move(prod);
          }
      }
  RatVector unit = RatVector::Zero(n);
  RatMatrix inv = RatMatrix::Zero(n, n);
  for (Index r = 0; r < g; ++r) {
    for (Index k = 0; k < m; ++k) unit[idx(r, r, k)] = base->unit()[k];
    for (Index c = 0; c < g; ++c)
      for (Index k = 0; k < m; ++k)
        for (Index l = 0; l < m; ++l) inv(idx(c, r, l), idx(r, c, k)) = base->involution()(l, k);
  }
  d.unit = std::move(unit);
  d.involution = std::move(inv);
  d.name = "M_" + std::to_string(g) + "(" + base->name() + ")";
  return make_algebra(std::move(d));
}

AlgebraPtr split_model(int g) {
  if (g < 1) throw InvalidArgument("split_model: g must be positive");
  const Index n = 2 * g;
  const Index dim = n * n;
  AlgebraData d;
  d.dim = dim;
  d.products.resize(static_cast<std::size_t>(dim * dim));
  for (Index r = 0; r < n; ++r)
    for (Index c = 0; c < n; ++c) {
      d.labels.push_back("e" + std::to_string(r + 1) + "," + std::to_string(c + 1));
      for (Index e = 0; e < n; ++e)
        d.products[static_cast<std::size_t>((r * n + c) * dim + c * n + e)] = {{r * n + e, Rational(1)}};
    }
  RatVector unit = RatVector::Zero(dim);
  for (Index r = 0; r < n; ++r) unit[r * n + r] = 1;
  // e_{2I+s, 2J+t} ↦ ±e_{2J+1-t, 2I+1-s}, minus sign off the block diagonal.
  RatMatrix inv = RatMatrix::Zero(dim, dim);
  for (Index r = 0; r < n; ++r)
    for (Index c = 0; c < n; ++c) {
      const Index bi = r / 2, s = r % 2, bj = c / 2, t = c % 2;
      const Index r2 = 2 * bj + 1 - t, c2 = 2 * bi + 1 - s;
      inv(r2 * n + c2, r * n + c) = (s == t) ? 1 : -1;
    }
  d.unit = std::move(unit);
  d.involution = std::move(inv);
  d.name = "M_" + std::to_string(n) + "(Q)^symp";
  return make_algebra(std::move(d));
}

// ---------------------------------------------------------------------------

AlgElement::AlgElement(AlgebraPtr algebra, RatVector coeffs)
    : algebra_(std::move(algebra)), coeffs_(std::move(coeffs)) {
  if (!algebra_) throw InvalidArgument("AlgElement: null algebra");
  if (coeffs_.size() != algebra_->dim())
    throw DimensionMismatch("AlgElement: " + std::to_string(coeffs_.size()) +
                            " coefficients for an algebra of dimension " + std::to_string(algebra_->dim()));
}

AlgElement AlgElement::zero(const AlgebraPtr& algebra) { return {algebra, algebra->zero()}; }
AlgElement AlgElement::unit(const AlgebraPtr& algebra) { return {algebra, algebra->unit()}; }
AlgElement AlgElement::basis(const AlgebraPtr& algebra, Index k) {
  return {algebra, algebra->basis_vector(k)};
}

bool operator==(const AlgElement& x, const AlgElement& y) {
  require_same(x, y, "==");
  return x.coeffs_ == y.coeffs_;
}

AlgElement operator+(const AlgElement& x, const AlgElement& y) {
  require_same(x, y, "+");
  return {x.algebra_, x.coeffs_ + y.coeffs_};
}

AlgElement operator-(const AlgElement& x, const AlgElement& y) {
  require_same(x, y, "-");
  return {x.algebra_, x.coeffs_ - y.coeffs_};
}

AlgElement operator-(const AlgElement& x) { return {x.algebra_, -x.coeffs_}; }

AlgElement operator*(const AlgElement& x, const AlgElement& y) {
  require_same(x, y, "*");
  return {x.algebra_, x.algebra_->multiply(x.coeffs_, y.coeffs_)};
}

AlgElement operator*(const Rational& s, const AlgElement& x) { return {x.algebra_, s * x.coeffs_}; }

AlgElement mul(const AlgElement& x, const AlgElement& y) { return x * y; }

AlgElement apply_involution(const AlgElement& x) {
  return {x.algebra(), x.algebra()->involute(x.coeffs())};
}

AlgElement power(const AlgElement& x, int n) {
  if (n < 1) throw InvalidArgument("power: exponent must be >= 1");
  AlgElement out = x;
  for (int k = 1; k < n; ++k) out = out * x;
  return out;
}

bool commutes(const AlgElement& x, const AlgElement& y) { return x * y == y * x; }

namespace {

Rational scalar_part(const AlgElement& s, const char* what) {
  const auto& alg = *s.algebra();
  const AlgElement one = AlgElement::unit(s.algebra());
  // s must be a multiple of the unit; read the factor off the unit's support.
  Index k = 0;
  while (k < alg.dim() && one.coeffs()[k] == 0) ++k;
  const Rational factor = s.coeffs()[k] / one.coeffs()[k];
  if (!(factor * one == s)) throw ValidationError(std::string(what) + " is not a scalar");
  return factor;
}

}  // namespace

Rational reduced_trace(const AlgElement& x) { return scalar_part(x + apply_involution(x), "x + x†"); }
Rational reduced_norm(const AlgElement& x) { return scalar_part(x * apply_involution(x), "x x†"); }

std::string format_element(const AlgElement& x) {
  std::ostringstream os;
  bool first = true;
  const auto& labels = x.algebra()->basis_labels();
  for (Index k = 0; k < x.coeffs().size(); ++k) {
    Rational c = x.coeffs()[k];
    if (c == 0) continue;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    c = abs(c);
    if (c != 1) os << to_string(c) << "*";
    os << labels[static_cast<std::size_t>(k)];
    first = false;
  }
  return first ? "0" : os.str();
}

// ---------------------------------------------------------------------------

DMatrix::DMatrix(AlgebraPtr base, Index rows, Index cols)
    : DMatrix(base, rows, cols, RatVector::Zero(base->dim() * rows * cols)) {}

DMatrix::DMatrix(AlgebraPtr base, Index rows, Index cols, RatVector flat)
    : base_(std::move(base)), rows_(rows), cols_(cols), flat_(std::move(flat)) {
  if (rows_ < 1 || cols_ < 1) throw InvalidArgument("DMatrix: shape must be positive");
  if (flat_.size() != base_->dim() * rows_ * cols_)
    throw DimensionMismatch("DMatrix: flat length does not match shape");
}

DMatrix DMatrix::identity(const AlgebraPtr& base, Index n) {
  DMatrix out(base, n, n);
  for (Index r = 0; r < n; ++r) out.set_entry(r, r, AlgElement::unit(base));
  return out;
}

AlgElement DMatrix::entry(Index r, Index c) const {
  const Index m = base_->dim();
  return {base_, flat_.segment((r * cols_ + c) * m, m)};
}

void DMatrix::set_entry(Index r, Index c, const AlgElement& value) {
  if (!same_algebra(value.algebra(), base_)) throw InvalidArgument("DMatrix::set_entry: entry over another algebra");
  const Index m = base_->dim();
  flat_.segment((r * cols_ + c) * m, m) = value.coeffs();
}

namespace {

void require_same_shape(const DMatrix& x, const DMatrix& y, const char* op) {
  if (!same_algebra(x.base(), y.base())) throw InvalidArgument(std::string(op) + ": different base algebras");
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw DimensionMismatch(std::string(op) + ": shapes differ");
}

}  // namespace

bool operator==(const DMatrix& x, const DMatrix& y) {
  require_same_shape(x, y, "==");
  return x.flat_ == y.flat_;
}

DMatrix operator+(const DMatrix& x, const DMatrix& y) {
  require_same_shape(x, y, "+");
  return {x.base_, x.rows_, x.cols_, x.flat_ + y.flat_};
}

DMatrix operator-(const DMatrix& x, const DMatrix& y) {
  require_same_shape(x, y, "-");
  return {x.base_, x.rows_, x.cols_, x.flat_ - y.flat_};
}

DMatrix operator*(const DMatrix& x, const DMatrix& y) {
  if (!same_algebra(x.base_, y.base_)) throw InvalidArgument("*: different base algebras");
  if (x.cols_ != y.rows_)
    throw DimensionMismatch("DMatrix product: " + std::to_string(x.rows_) + "x" + std::to_string(x.cols_) +
                            " times " + std::to_string(y.rows_) + "x" + std::to_string(y.cols_));
  return {x.base_, x.rows_, y.cols_, dmatrix_product(*x.base_, x.flat_, x.rows_, x.cols_, y.flat_, y.cols_)};
}

DMatrix operator*(const Rational& s, const DMatrix& x) { return {x.base_, x.rows_, x.cols_, s * x.flat_}; }

RatVector dmatrix_product(const StructureAlgebra& base, const RatVector& lhs, Index rows, Index inner,
                          const RatVector& rhs, Index cols) {
  const Index m = base.dim();
  if (lhs.size() != rows * inner * m || rhs.size() != inner * cols * m)
    throw DimensionMismatch("dmatrix_product: flat lengths do not match shapes");
  RatVector out = RatVector::Zero(rows * cols * m);
  for (Index r = 0; r < rows; ++r)
    for (Index k = 0; k < inner; ++k) {
      const Index lo = (r * inner + k) * m;
      for (Index p = 0; p < m; ++p) {
        if (lhs[lo + p] == 0) continue;
        for (Index c = 0; c < cols; ++c) {
          const Index ro = (k * cols + c) * m;
          const Index oo = (r * cols + c) * m;
          for (Index q = 0; q < m; ++q) {
            if (rhs[ro + q] == 0) continue;
            const Rational pq = lhs[lo + p] * rhs[ro + q];
            for (const auto& [s, coeff] : base.basis_product(p, q)) out[oo + s] += pq * coeff;
          }
        }
      }
    }
  return out;
}

DMatrix dagger_transpose(const DMatrix& m) {
  DMatrix out(m.base(), m.cols(), m.rows());
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) out.set_entry(c, r, apply_involution(m.entry(r, c)));
  return out;
}

AlgElement to_matrix_element(const DMatrix& m, const AlgebraPtr& matrix_alg) {
  if (m.rows() != m.cols()) throw DimensionMismatch("to_matrix_element: matrix is not square");
  if (matrix_alg->dim() != m.flat().size())
    throw DimensionMismatch("to_matrix_element: algebra dimension does not match matrix size");
  return {matrix_alg, m.flat()};
}

DMatrix from_matrix_element(const AlgElement& x, const AlgebraPtr& base, Index g) {
  return {base, g, g, x.coeffs()};
}

}  // namespace obstructor
