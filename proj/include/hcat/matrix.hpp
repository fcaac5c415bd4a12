#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hcat/error.hpp"
#include "hcat/field.hpp"

namespace hcat {

/// Dense row-major matrix over an exact field. The field descriptor travels
/// with the matrix so that operands from different fields are rejected.
template <class F>
class Matrix {
 public:
  using field_type = F;
  using value_type = typename F::value_type;

  Matrix() = default;
  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

  static Matrix identity(F field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  /// Builds from nested rows of integers (tests and catalog data).
  static Matrix from_ints(F field, const std::vector<std::vector<long long>>& rows) {
    std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
    Matrix m(field, r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw DimensionMismatch("ragged matrix literal");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = field.from_int(rows[i][j]);
    }
    return m;
  }

  /// Column vector from entries.
  static Matrix column(F field, const std::vector<value_type>& entries) {
    Matrix m(field, entries.size(), 1);
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, 0) = entries[i];
    return m;
  }

  static Matrix unit_vector(F field, std::size_t n, std::size_t i) {
    Matrix m(field, n, 1);
    m(i, 0) = field.one();
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  value_type& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const value_type& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  const std::vector<value_type>& data() const { return data_; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [&](const value_type& v) { return field_.is_zero(v); });
  }

  bool operator==(const Matrix& o) const {
    if (!(field_ == o.field_) || rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t i = 0; i < data_.size(); ++i)
      if (!field_.equal(data_[i], o.data_[i])) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix col(std::size_t j) const {
    Matrix c(field_, rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
    return c;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionMismatch("block out of range");
    Matrix b(field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw DimensionMismatch("set_block out of range");
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  Matrix select_columns(const std::vector<std::size_t>& idx) const {
    Matrix s(field_, rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) s(i, j) = (*this)(i, idx[j]);
    return s;
  }

  Matrix select_rows(const std::vector<std::size_t>& idx) const {
    Matrix s(field_, idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < cols_; ++j) s(i, j) = (*this)(idx[i], j);
    return s;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << field_.to_string((*this)(i, j));
      os << "]";
    }
    os << "]";
    return os.str();
  }

 private:
  F field_{};
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<value_type> data_;
};

namespace detail {
template <class F>
void require_same_field(const Matrix<F>& a, const Matrix<F>& b) {
  if (!(a.field() == b.field())) throw FieldMismatch(a.field().name() + " vs " + b.field().name());
}
}  // namespace detail

template <class F>
Matrix<F> operator*(const Matrix<F>& a, const Matrix<F>& b) {
  detail::require_same_field(a, b);
  if (a.cols() != b.rows())
    throw DimensionMismatch(std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " * " +
                            std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  const F& f = a.field();
  Matrix<F> c(f, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const auto& aik = a(i, k);
      if (f.is_zero(aik)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const auto& bkj = b(k, j);
        if (!f.is_zero(bkj)) f.add_mul(c(i, j), aik, bkj);
      }
    }
  return c;
}

template <class F>
Matrix<F> operator+(const Matrix<F>& a, const Matrix<F>& b) {
  detail::require_same_field(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("matrix sum");
  Matrix<F> c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a.field().add(a(i, j), b(i, j));
  return c;
}

template <class F>
Matrix<F> operator-(const Matrix<F>& a, const Matrix<F>& b) {
  detail::require_same_field(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("matrix difference");
  Matrix<F> c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a.field().sub(a(i, j), b(i, j));
  return c;
}

template <class F>
Matrix<F> scale(const typename F::value_type& s, const Matrix<F>& a) {
  Matrix<F> c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a.field().mul(s, a(i, j));
  return c;
}

template <class F>
Matrix<F> negate(const Matrix<F>& a) {
  return scale(a.field().neg(a.field().one()), a);
}

/// acc += s * a, in place.
template <class F>
void add_scaled(Matrix<F>& acc, const typename F::value_type& s, const Matrix<F>& a) {
  detail::require_same_field(acc, a);
  if (acc.rows() != a.rows() || acc.cols() != a.cols()) throw DimensionMismatch("add_scaled");
  const F& f = a.field();
  if (f.is_zero(s)) return;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!f.is_zero(a(i, j))) f.add_mul(acc(i, j), s, a(i, j));
}

/// Kronecker product. Index contract: (i, k) -> i * dim(second) + k.
template <class F>
Matrix<F> kron(const Matrix<F>& m, const Matrix<F>& n) {
  detail::require_same_field(m, n);
  const F& f = m.field();
  Matrix<F> k(f, m.rows() * n.rows(), m.cols() * n.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const auto& mij = m(i, j);
      if (f.is_zero(mij)) continue;
      for (std::size_t a = 0; a < n.rows(); ++a)
        for (std::size_t b = 0; b < n.cols(); ++b)
          if (!f.is_zero(n(a, b))) k(i * n.rows() + a, j * n.cols() + b) = f.mul(mij, n(a, b));
    }
  return k;
}

template <class F>
Matrix<F> hstack(const Matrix<F>& a, const Matrix<F>& b) {
  detail::require_same_field(a, b);
  if (a.rows() != b.rows()) throw DimensionMismatch("hstack");
  Matrix<F> c(a.field(), a.rows(), a.cols() + b.cols());
  c.set_block(0, 0, a);
  c.set_block(0, a.cols(), b);
  return c;
}

template <class F>
Matrix<F> vstack(const Matrix<F>& a, const Matrix<F>& b) {
  detail::require_same_field(a, b);
  if (a.cols() != b.cols()) throw DimensionMismatch("vstack");
  Matrix<F> c(a.field(), a.rows() + b.rows(), a.cols());
  c.set_block(0, 0, a);
  c.set_block(a.rows(), 0, b);
  return c;
}

template <class F>
Matrix<F> hstack_all(const F& field, std::size_t rows, const std::vector<Matrix<F>>& parts) {
  std::size_t cols = 0;
  for (const auto& p : parts) {
    if (p.rows() != rows) throw DimensionMismatch("hstack_all");
    cols += p.cols();
  }
  Matrix<F> c(field, rows, cols);
  std::size_t off = 0;
  for (const auto& p : parts) {
    c.set_block(0, off, p);
    off += p.cols();
  }
  return c;
}

template <class F>
Matrix<F> vstack_all(const F& field, std::size_t cols, const std::vector<Matrix<F>>& parts) {
  std::size_t rows = 0;
  for (const auto& p : parts) {
    if (p.cols() != cols) throw DimensionMismatch("vstack_all");
    rows += p.rows();
  }
  Matrix<F> c(field, rows, cols);
  std::size_t off = 0;
  for (const auto& p : parts) {
    c.set_block(off, 0, p);
    off += p.rows();
  }
  return c;
}

template <class F>
Matrix<F> block_diag(const Matrix<F>& a, const Matrix<F>& b) {
  detail::require_same_field(a, b);
  Matrix<F> c(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  c.set_block(0, 0, a);
  c.set_block(a.rows(), a.cols(), b);
  return c;
}

template <class F>
struct RrefResult {
  Matrix<F> matrix;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

/// Reduced row echelon form by Gauss-Jordan elimination; the pivot in each
/// column is the first nonzero entry at or below the current row.
template <class F>
RrefResult<F> rref(Matrix<F> m) {
  const F& f = m.field();
  std::size_t row = 0;
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> nz;
  for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
    std::size_t r = row;
    while (r < m.rows() && f.is_zero(m(r, c))) ++r;
    if (r == m.rows()) continue;
    if (r != row)
      for (std::size_t j = c; j < m.cols(); ++j) std::swap(m(r, j), m(row, j));
    if (!f.is_one(m(row, c))) {
      auto inv = f.inv(m(row, c));
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!f.is_zero(m(row, j))) m(row, j) = f.mul(m(row, j), inv);
    }
    nz.clear();
    for (std::size_t j = c; j < m.cols(); ++j)
      if (!f.is_zero(m(row, j))) nz.push_back(j);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || f.is_zero(m(i, c))) continue;
      auto factor = m(i, c);
      for (std::size_t j : nz) f.sub_mul(m(i, j), factor, m(row, j));
    }
    pivots.push_back(c);
    ++row;
  }
  RrefResult<F> out{std::move(m), std::move(pivots), 0};
  out.rank = out.pivots.size();
  return out;
}

template <class F>
std::size_t rank(const Matrix<F>& m) {
  return rref(m).rank;
}

/// Columns form a basis of the null space, one per free column of the rref,
/// in increasing order of the free column.
template <class F>
Matrix<F> kernel_basis(const Matrix<F>& m) {
  auto r = rref(m);
  const F& f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix<F> k(f, m.cols(), free_cols.size());
  for (std::size_t j = 0; j < free_cols.size(); ++j) {
    std::size_t fc = free_cols[j];
    k(fc, j) = f.one();
    for (std::size_t i = 0; i < r.pivots.size(); ++i)
      if (!f.is_zero(r.matrix(i, fc))) k(r.pivots[i], j) = f.neg(r.matrix(i, fc));
  }
  return k;
}

/// Solves m * x = b (b may have several columns). Free variables are set to
/// zero, so the answer is a deterministic function of (m, b).
template <class F>
std::optional<Matrix<F>> solve(const Matrix<F>& m, const Matrix<F>& b) {
  detail::require_same_field(m, b);
  if (m.rows() != b.rows()) throw DimensionMismatch("solve: rows(M) != rows(b)");
  auto r = rref(hstack(m, b));
  const F& f = m.field();
  Matrix<F> x(f, m.cols(), b.cols());
  for (std::size_t i = 0; i < r.pivots.size(); ++i) {
    if (r.pivots[i] >= m.cols()) return std::nullopt;
    for (std::size_t j = 0; j < b.cols(); ++j) x(r.pivots[i], j) = r.matrix(i, m.cols() + j);
  }
  return x;
}

/// Maximal set of independent columns (pivot columns of the rref), as columns of m.
template <class F>
Matrix<F> column_space_basis(const Matrix<F>& m) {
  return m.select_columns(rref(m).pivots);
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  auto x = solve(m, Matrix<F>::identity(m.field(), m.rows()));
  if (!x) return std::nullopt;
  if (rank(m) != m.rows()) return std::nullopt;
  return x;
}

template <class F>
bool is_invertible(const Matrix<F>& m) {
  return m.rows() == m.cols() && rank(m) == m.rows();
}

/// Incrementally maintained echelon basis of a subspace of F^n, for fast
/// membership tests while generating spans.
template <class F>
class EchelonBasis {
 public:
  using value_type = typename F::value_type;

  EchelonBasis(F field, std::size_t n) : field_(field), n_(n) {}

  std::size_t dim() const { return rows_.size(); }
  std::size_t ambient() const { return n_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Reduces v against the stored rows (in insertion order).
  void reduce(std::vector<value_type>& v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      auto p = pivots_[r];
      if (field_.is_zero(v[p])) continue;
      auto factor = v[p];
      for (auto j : support_[r]) field_.sub_mul(v[j], factor, rows_[r][j]);
    }
  }

  bool contains(std::vector<value_type> v) const {
    reduce(v);
    return std::all_of(v.begin(), v.end(), [&](const value_type& x) { return field_.is_zero(x); });
  }

  /// Inserts v; returns true when it enlarged the span.
  bool insert(std::vector<value_type> v) {
    if (v.size() != n_) throw DimensionMismatch("EchelonBasis::insert");
    reduce(v);
    std::size_t p = 0;
    while (p < n_ && field_.is_zero(v[p])) ++p;
    if (p == n_) return false;
    auto inv = field_.inv(v[p]);
    std::vector<std::size_t> supp;
    for (std::size_t j = p; j < n_; ++j)
      if (!field_.is_zero(v[j])) {
        v[j] = field_.mul(v[j], inv);
        supp.push_back(j);
      }
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    support_.push_back(std::move(supp));
    return true;
  }

  bool insert_column(const Matrix<F>& m, std::size_t c) { return insert(column_entries(m, c)); }
  bool contains_column(const Matrix<F>& m, std::size_t c) const { return contains(column_entries(m, c)); }

  static std::vector<value_type> column_entries(const Matrix<F>& m, std::size_t c) {
    std::vector<value_type> v(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, c);
    return v;
  }

 private:
  F field_;
  std::size_t n_;
  std::vector<std::vector<value_type>> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<std::vector<std::size_t>> support_;
};

/// Coordinates with respect to a full-column-rank matrix W: for v in the
/// column span, coords(v) is the unique x with W x = v.
template <class F>
class SubspaceCoords {
 public:
  SubspaceCoords() = default;
  explicit SubspaceCoords(const Matrix<F>& w) : basis_(w) {
    auto r = rref(w.transpose());
    if (r.rank != w.cols()) throw InvariantViolation("SubspaceCoords: basis columns are dependent");
    rows_ = r.pivots;
    auto inv = inverse(w.select_rows(rows_));
    inverse_ = *inv;
  }

  std::size_t dim() const { return basis_.cols(); }
  const Matrix<F>& basis() const { return basis_; }

  /// Unchecked: assumes every column of v lies in the span.
  Matrix<F> coords(const Matrix<F>& v) const { return inverse_ * v.select_rows(rows_); }

  /// Checked variant: returns nullopt if some column of v leaves the span.
  std::optional<Matrix<F>> checked_coords(const Matrix<F>& v) const {
    auto x = coords(v);
    if (!(basis_ * x == v)) return std::nullopt;
    return x;
  }

  /// The linear map v |-> coords(v), as a dim x ambient matrix.
  Matrix<F> extractor() const {
    Matrix<F> e(basis_.field(), basis_.cols(), basis_.rows());
    for (std::size_t i = 0; i < inverse_.rows(); ++i)
      for (std::size_t j = 0; j < rows_.size(); ++j) e(i, rows_[j]) = inverse_(i, j);
    return e;
  }

 private:
  Matrix<F> basis_;
  std::vector<std::size_t> rows_;
  Matrix<F> inverse_;
};

/// Quotient of F^d by the span of the columns of u. The complement is spanned
/// by the standard vectors at the non-pivot positions of rref(u^T), so the
/// choice of representatives is deterministic.
template <class F>
struct Quotient {
  Matrix<F> projection;  // q x d, kills the subspace
  Matrix<F> section;     // d x q, projection * section = I
  std::vector<std::size_t> complement;  // ambient indices spanning the complement

  std::size_t dim() const { return projection.rows(); }
};

template <class F>
Quotient<F> quotient_by(const F& f, std::size_t d, const Matrix<F>& u) {
  std::vector<bool> is_pivot(d, false);
  RrefResult<F> r;
  if (u.cols() > 0) {
    r = rref(u.transpose());
    for (auto p : r.pivots) is_pivot[p] = true;
  }
  Quotient<F> q;
  for (std::size_t j = 0; j < d; ++j)
    if (!is_pivot[j]) q.complement.push_back(j);
  std::size_t qd = q.complement.size();
  q.projection = Matrix<F>(f, qd, d);
  q.section = Matrix<F>(f, d, qd);
  for (std::size_t a = 0; a < qd; ++a) {
    q.projection(a, q.complement[a]) = f.one();
    q.section(q.complement[a], a) = f.one();
  }
  for (std::size_t i = 0; i < r.pivots.size(); ++i)
    for (std::size_t a = 0; a < qd; ++a) {
      const auto& e = r.matrix(i, q.complement[a]);
      if (!f.is_zero(e)) q.projection(a, r.pivots[i]) = f.neg(e);
    }
  return q;
}

}  // namespace hcat
