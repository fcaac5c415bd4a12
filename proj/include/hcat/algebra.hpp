#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hcat/matrix.hpp"

namespace hcat {

/// A nonzero structure constant: e_i * e_j contains value * e_k.
template <class F>
struct StructureConstant {
  std::size_t i, j, k;
  typename F::value_type value;
};

/// Failing associativity triple or unit defect reported by the validator.
struct AlgebraDefect {
  enum class Kind { associativity, left_unit, right_unit } kind;
  std::size_t i = 0, j = 0, l = 0;
  std::string describe() const {
    switch (kind) {
      case Kind::associativity:
        return "associativity fails for (e" + std::to_string(i) + " e" + std::to_string(j) + ") e" +
               std::to_string(l);
      case Kind::left_unit:
        return "unit fails on the left for e" + std::to_string(i);
      case Kind::right_unit:
        return "unit fails on the right for e" + std::to_string(i);
    }
    return "defect";
  }
};

/// Finite-dimensional unital associative algebra. The data is immutable and
/// shared, so copies are cheap. Multiplication is stored as the left and right
/// regular representations: L_i(k, j) = R_j(k, i) = c_ijk.
template <class F>
class Algebra {
 public:
  using value_type = typename F::value_type;
  using Mat = Matrix<F>;

  Algebra() = default;

  /// Builds and validates an algebra from its nonzero structure constants.
  static Algebra from_constants(F field, std::size_t n, const std::vector<StructureConstant<F>>& consts,
                                const std::vector<value_type>& unit, std::vector<std::string> labels = {},
                                std::string name = "") {
    std::vector<Mat> left(n, Mat(field, n, n));
    for (const auto& c : consts) {
      if (c.i >= n || c.j >= n || c.k >= n) throw DimensionMismatch("structure constant index out of range");
      left[c.i](c.k, c.j) = field.add(left[c.i](c.k, c.j), c.value);
    }
    if (unit.size() != n) throw DimensionMismatch("unit vector length");
    Algebra a = from_left(field, std::move(left), Mat::column(field, unit), std::move(labels), std::move(name));
    if (auto d = a.validate()) throw InvariantViolation(d->describe());
    return a;
  }

  /// Unvalidated construction from left multiplication matrices.
  static Algebra from_left(F field, std::vector<Mat> left, Mat unit, std::vector<std::string> labels,
                           std::string name) {
    auto d = std::make_shared<Data>();
    d->field = field;
    d->n = left.size();
    d->right.assign(d->n, Mat(field, d->n, d->n));
    for (std::size_t i = 0; i < d->n; ++i)
      for (std::size_t j = 0; j < d->n; ++j)
        for (std::size_t k = 0; k < d->n; ++k) d->right[j](k, i) = left[i](k, j);
    d->left = std::move(left);
    d->unit = std::move(unit);
    if (labels.empty())
      for (std::size_t i = 0; i < d->n; ++i) labels.push_back("e" + std::to_string(i));
    d->labels = std::move(labels);
    d->name = std::move(name);
    return Algebra(std::move(d));
  }

  /// The ground field as a one-dimensional algebra.
  static Algebra ground(F field) {
    std::vector<Mat> left{Mat::identity(field, 1)};
    return from_left(field, std::move(left), Mat::identity(field, 1), {"1"}, "k");
  }

  bool valid() const { return static_cast<bool>(d_); }
  const F& field() const { return d_->field; }
  std::size_t dim() const { return d_->n; }
  const std::string& name() const { return d_->name; }
  const std::vector<std::string>& labels() const { return d_->labels; }
  const Mat& unit() const { return d_->unit; }
  const Mat& left(std::size_t i) const { return d_->left[i]; }
  const Mat& right(std::size_t j) const { return d_->right[j]; }
  const std::vector<Mat>& left_matrices() const { return d_->left; }
  const value_type& constant(std::size_t i, std::size_t j, std::size_t k) const { return d_->left[i](k, j); }

  /// Present only for algebras built by tensor_algebra (and their opposites).
  const std::pair<Algebra, Algebra>* factors() const { return d_->factors.get(); }

  /// Left multiplication by an arbitrary element a (column vector).
  Mat left_of(const Mat& a) const { return combine(d_->left, a); }
  Mat right_of(const Mat& a) const { return combine(d_->right, a); }
  Mat multiply(const Mat& a, const Mat& b) const { return left_of(a) * b; }

  /// First failing identity, if any; n^3 associativity checks plus unit checks.
  std::optional<AlgebraDefect> validate() const {
    const F& f = field();
    std::size_t n = dim();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        // L_i L_j must equal L_{e_i e_j} = sum_k c_ijk L_k
        Mat lhs = left(i) * left(j);
        Mat rhs(f, n, n);
        for (std::size_t k = 0; k < n; ++k) add_scaled(rhs, constant(i, j, k), left(k));
        if (lhs == rhs) continue;
        for (std::size_t l = 0; l < n; ++l)
          for (std::size_t r = 0; r < n; ++r)
            if (!f.equal(lhs(r, l), rhs(r, l))) return AlgebraDefect{AlgebraDefect::Kind::associativity, i, j, l};
      }
    Mat id = Mat::identity(f, n);
    Mat lu = left_of(unit()), ru = right_of(unit());
    for (std::size_t i = 0; i < n; ++i) {
      if (!(lu.col(i) == id.col(i))) return AlgebraDefect{AlgebraDefect::Kind::left_unit, i, 0, 0};
      if (!(ru.col(i) == id.col(i))) return AlgebraDefect{AlgebraDefect::Kind::right_unit, i, 0, 0};
    }
    return std::nullopt;
  }

  /// Structural equality (tags and labels are metadata).
  bool operator==(const Algebra& o) const {
    if (d_ == o.d_) return true;
    if (!d_ || !o.d_) return false;
    if (!(field() == o.field()) || dim() != o.dim() || !(unit() == o.unit())) return false;
    for (std::size_t i = 0; i < dim(); ++i)
      if (!(left(i) == o.left(i))) return false;
    return true;
  }

  bool is_commutative() const {
    for (std::size_t i = 0; i < dim(); ++i)
      if (!(left(i) == right(i))) return false;
    return true;
  }

  /// Basis of the trace-form radical {x : tr(L_{x y}) = 0 for all y}, as columns.
  /// This equals the Jacobson radical when char = 0 or char > dim.
  const Mat& trace_radical() const {
    std::call_once(d_->radical_once, [this] {
      const F& f = field();
      std::size_t n = dim();
      std::uint64_t p = f.characteristic();
      if (p != 0 && p <= n) {
        d_->radical_ok = false;
        return;
      }
      std::vector<value_type> tr(n, f.zero());
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t r = 0; r < n; ++r) tr[k] = f.add(tr[k], left(k)(r, r));
      Mat t(f, n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = 0; k < n; ++k)
            if (!f.is_zero(constant(i, j, k))) f.add_mul(t(i, j), constant(i, j, k), tr[k]);
      d_->radical = kernel_basis(t);
      d_->radical_ok = true;
    });
    if (!d_->radical_ok)
      throw Error("radical by trace form needs characteristic 0 or larger than " + std::to_string(dim()));
    return d_->radical;
  }

  bool has_trace_radical() const { return field().characteristic() == 0 || field().characteristic() > dim(); }

  /// A generating set of the algebra, chosen greedily among basis vectors.
  const std::vector<Mat>& generators() const {
    std::call_once(d_->gens_once, [this] {
      const F& f = field();
      std::size_t n = dim();
      EchelonBasis<F> span(f, n);
      std::vector<Mat> members{unit()};
      span.insert_column(unit(), 0);
      for (std::size_t i = 0; i < n && span.dim() < n; ++i) {
        Mat e = Mat::unit_vector(f, n, i);
        if (span.contains_column(e, 0)) continue;
        d_->gens.push_back(e);
        // close the span under left multiplication by all generators
        std::vector<Mat> frontier = members;
        while (!frontier.empty()) {
          std::vector<Mat> next;
          for (const auto& v : frontier)
            for (const auto& g : d_->gens) {
              Mat w = multiply(g, v);
              if (span.insert_column(w, 0)) {
                members.push_back(w);
                next.push_back(w);
              }
            }
          frontier = std::move(next);
        }
      }
    });
    return d_->gens;
  }

 private:
  struct Data {
    F field{};
    std::size_t n = 0;
    std::vector<Mat> left, right;
    Mat unit;
    std::vector<std::string> labels;
    std::string name;
    std::shared_ptr<const std::pair<Algebra, Algebra>> factors;
    mutable std::once_flag radical_once;
    mutable bool radical_ok = false;
    mutable Mat radical;
    mutable std::once_flag gens_once;
    mutable std::vector<Mat> gens;
  };

  explicit Algebra(std::shared_ptr<Data> d) : d_(std::move(d)) {}

  Mat combine(const std::vector<Mat>& mats, const Mat& a) const {
    Mat out(field(), dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i) add_scaled(out, a(i, 0), mats[i]);
    return out;
  }

  std::shared_ptr<Data> d_;

  template <class G>
  friend Algebra<G> opposite_algebra(const Algebra<G>& a);
  template <class G>
  friend Algebra<G> tensor_algebra(const Algebra<G>& a, const Algebra<G>& b);
};

template <class F>
Algebra<F> opposite_algebra(const Algebra<F>& a) {
  auto labels = a.labels();
  std::string name = a.name();
  if (name.size() > 3 && name.compare(name.size() - 3, 3, "^op") == 0)
    name.resize(name.size() - 3);
  else
    name += "^op";
  auto d = std::make_shared<typename Algebra<F>::Data>();
  d->field = a.field();
  d->n = a.dim();
  d->left = a.d_->right;
  d->right = a.d_->left;
  d->unit = a.unit();
  d->labels = std::move(labels);
  d->name = std::move(name);
  if (auto fac = a.factors())
    d->factors = std::make_shared<const std::pair<Algebra<F>, Algebra<F>>>(opposite_algebra(fac->first),
                                                                           opposite_algebra(fac->second));
  return Algebra<F>(std::move(d));
}

/// A (x) B with basis e_i (x) f_k at index i * dim(B) + k.
template <class F>
Algebra<F> tensor_algebra(const Algebra<F>& a, const Algebra<F>& b) {
  if (!(a.field() == b.field())) throw FieldMismatch(a.field().name() + " vs " + b.field().name());
  auto d = std::make_shared<typename Algebra<F>::Data>();
  d->field = a.field();
  d->n = a.dim() * b.dim();
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t k = 0; k < b.dim(); ++k) {
      d->left.push_back(kron(a.left(i), b.left(k)));
      d->right.push_back(kron(a.right(i), b.right(k)));
      d->labels.push_back(a.labels()[i] + "(x)" + b.labels()[k]);
    }
  d->unit = kron(a.unit(), b.unit());
  d->name = "(" + a.name() + ")(x)(" + b.name() + ")";
  d->factors = std::make_shared<const std::pair<Algebra<F>, Algebra<F>>>(a, b);
  return Algebra<F>(std::move(d));
}

template <class F>
Algebra<F> enveloping(const Algebra<F>& a) {
  return tensor_algebra(a, opposite_algebra(a));
}

/// Basis (as columns) of the center {z : z e_i = e_i z for all i}.
template <class F>
Matrix<F> center(const Algebra<F>& a) {
  std::vector<Matrix<F>> blocks;
  for (std::size_t i = 0; i < a.dim(); ++i) blocks.push_back(a.right(i) - a.left(i));
  return kernel_basis(vstack_all(a.field(), a.dim(), blocks));
}

}  // namespace hcat
