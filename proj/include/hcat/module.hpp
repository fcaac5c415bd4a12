#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hcat/algebra.hpp"

namespace hcat {

/// Finite-dimensional left module: one action matrix per algebra basis vector.
/// Bimodules are left modules over a factored algebra X (x) Y.
template <class F>
class LeftModule {
 public:
  using Mat = Matrix<F>;

  LeftModule() = default;

  /// Validated construction.
  static LeftModule make(const Algebra<F>& alg, std::size_t dim, std::vector<Mat> actions, std::string name = "") {
    LeftModule m = trusted(alg, dim, std::move(actions), std::move(name));
    if (auto why = m.validate()) throw InvariantViolation("module: " + *why);
    return m;
  }

  /// Construction without the representation check, for modules that satisfy
  /// it by construction (free modules, restrictions, induced structures).
  static LeftModule trusted(const Algebra<F>& alg, std::size_t dim, std::vector<Mat> actions, std::string name = "",
                            std::optional<std::size_t> free_rank = std::nullopt) {
    if (actions.size() != alg.dim()) throw DimensionMismatch("module needs one action matrix per basis vector");
    for (const auto& a : actions)
      if (a.rows() != dim || a.cols() != dim) throw DimensionMismatch("action matrix size");
    auto d = std::make_shared<Data>();
    d->alg = alg;
    d->dim = dim;
    d->actions = std::move(actions);
    d->name = std::move(name);
    d->free_rank = free_rank;
    return LeftModule(std::move(d));
  }

  bool valid() const { return static_cast<bool>(d_); }
  const Algebra<F>& algebra() const { return d_->alg; }
  const F& field() const { return d_->alg.field(); }
  std::size_t dim() const { return d_->dim; }
  const Mat& action(std::size_t i) const { return d_->actions[i]; }
  const std::vector<Mat>& actions() const { return d_->actions; }
  const std::string& name() const { return d_->name; }
  std::optional<std::size_t> free_rank() const { return d_->free_rank; }

  /// Action of an arbitrary algebra element (coordinate column).
  Mat action_of(const Mat& a) const {
    Mat out(field(), dim(), dim());
    for (std::size_t i = 0; i < a.rows(); ++i) add_scaled(out, a(i, 0), action(i));
    return out;
  }

  /// Representation identities, checked on algebra generators (sufficient:
  /// the elements respecting them form a unital subalgebra).
  std::optional<std::string> validate() const {
    const auto& alg = algebra();
    if (!(action_of(alg.unit()) == Mat::identity(field(), dim()))) return "unit does not act as identity";
    for (const auto& g : alg.generators()) {
      Mat rg = action_of(g);
      for (std::size_t j = 0; j < alg.dim(); ++j) {
        Mat prod = alg.multiply(g, Mat::unit_vector(field(), alg.dim(), j));
        if (!(rg * action(j) == action_of(prod)))
          return "rho(g) rho(e" + std::to_string(j) + ") != rho(g e" + std::to_string(j) + ")";
      }
    }
    return std::nullopt;
  }

  LeftModule renamed(std::string name) const {
    auto d = std::make_shared<Data>(*d_);
    d->name = std::move(name);
    return LeftModule(std::move(d));
  }

  /// Same actions over a structurally equal algebra (e.g. a tagged copy).
  LeftModule over(const Algebra<F>& alg) const {
    if (!(alg == algebra())) throw AlgebraMismatch("retagging needs a structurally equal algebra");
    auto d = std::make_shared<Data>(*d_);
    d->alg = alg;
    return LeftModule(std::move(d));
  }

 private:
  struct Data {
    Algebra<F> alg;
    std::size_t dim = 0;
    std::vector<Mat> actions;
    std::string name;
    std::optional<std::size_t> free_rank;
  };
  explicit LeftModule(std::shared_ptr<Data> d) : d_(std::move(d)) {}
  std::shared_ptr<Data> d_;
};

template <class F>
void require_same_algebra(const LeftModule<F>& m, const LeftModule<F>& n, const char* where) {
  if (!(m.field() == n.field())) throw FieldMismatch(where);
  if (!(m.algebra() == n.algebra())) throw AlgebraMismatch(where);
}

template <class F>
bool is_module_hom(const LeftModule<F>& m, const LeftModule<F>& n, const Matrix<F>& f) {
  if (f.rows() != n.dim() || f.cols() != m.dim()) return false;
  for (std::size_t i = 0; i < m.algebra().dim(); ++i)
    if (!(f * m.action(i) == n.action(i) * f)) return false;
  return true;
}

/// An intertwiner with its endpoints.
template <class F>
struct ModuleHom {
  LeftModule<F> source, target;
  Matrix<F> matrix;

  static ModuleHom make(LeftModule<F> s, LeftModule<F> t, Matrix<F> m) {
    require_same_algebra(s, t, "ModuleHom");
    if (!is_module_hom(s, t, m)) throw InvariantViolation("matrix does not intertwine the actions");
    return ModuleHom{std::move(s), std::move(t), std::move(m)};
  }
};

template <class F>
LeftModule<F> zero_module(const Algebra<F>& a) {
  return LeftModule<F>::trusted(a, 0, std::vector<Matrix<F>>(a.dim(), Matrix<F>(a.field(), 0, 0)), "0", 0);
}

/// A^r with basis (copy s, basis j) at index s * dim(A) + j.
template <class F>
LeftModule<F> free_module(const Algebra<F>& a, std::size_t r) {
  std::vector<Matrix<F>> acts;
  auto id = Matrix<F>::identity(a.field(), r);
  for (std::size_t i = 0; i < a.dim(); ++i) acts.push_back(kron(id, a.left(i)));
  return LeftModule<F>::trusted(a, r * a.dim(), std::move(acts), "free(" + std::to_string(r) + ")", r);
}

template <class F>
LeftModule<F> regular_module(const Algebra<F>& a) {
  return free_module(a, 1).renamed("regular");
}

/// Generators of the free module A^r: the unit in each copy, as columns.
template <class F>
Matrix<F> free_generators(const Algebra<F>& a, std::size_t r) {
  Matrix<F> g(a.field(), r * a.dim(), r);
  for (std::size_t s = 0; s < r; ++s) g.set_block(s * a.dim(), s, a.unit());
  return g;
}

template <class F>
LeftModule<F> direct_sum(const LeftModule<F>& m, const LeftModule<F>& n) {
  require_same_algebra(m, n, "direct_sum");
  std::vector<Matrix<F>> acts;
  for (std::size_t i = 0; i < m.algebra().dim(); ++i) acts.push_back(block_diag(m.action(i), n.action(i)));
  std::optional<std::size_t> fr;
  if (m.free_rank() && n.free_rank()) fr = *m.free_rank() + *n.free_rank();
  return LeftModule<F>::trusted(m.algebra(), m.dim() + n.dim(), std::move(acts), "", fr);
}

/// Dual space with transposed actions, a left module over the opposite algebra.
template <class F>
LeftModule<F> dual_module(const LeftModule<F>& m) {
  std::vector<Matrix<F>> acts;
  for (const auto& a : m.actions()) acts.push_back(a.transpose());
  return LeftModule<F>::trusted(opposite_algebra(m.algebra()), m.dim(), std::move(acts),
                                m.name().empty() ? "" : "D(" + m.name() + ")");
}

/// Invariant subspace spanned by the columns of w (need not be independent).
template <class F>
struct Submodule {
  LeftModule<F> module;
  Matrix<F> inclusion;  // dim(M) x dim(sub), independent columns
};

template <class F>
Submodule<F> submodule(const LeftModule<F>& m, const Matrix<F>& w) {
  Matrix<F> basis = column_space_basis(w);
  SubspaceCoords<F> c(basis);
  std::vector<Matrix<F>> acts;
  for (const auto& a : m.actions()) {
    auto x = c.checked_coords(a * basis);
    if (!x) throw InvariantViolation("subspace is not invariant under the action");
    acts.push_back(*x);
  }
  return {LeftModule<F>::trusted(m.algebra(), basis.cols(), std::move(acts)), basis};
}

/// Submodule generated by the columns of g.
template <class F>
Matrix<F> generated_span(const LeftModule<F>& m, const Matrix<F>& g) {
  EchelonBasis<F> span(m.field(), m.dim());
  std::vector<Matrix<F>> cols;
  for (std::size_t c = 0; c < g.cols(); ++c)
    for (const auto& a : m.actions()) {
      Matrix<F> v = a * g.col(c);
      if (span.insert_column(v, 0)) cols.push_back(v);
    }
  return hstack_all(m.field(), m.dim(), cols);
}

template <class F>
struct QuotientModule {
  LeftModule<F> module;
  Matrix<F> projection;  // dim(Q) x dim(M)
  Matrix<F> section;     // dim(M) x dim(Q), a linear splitting
};

/// Quotient of m by the invariant subspace spanned by columns of u.
template <class F>
QuotientModule<F> quotient_module(const LeftModule<F>& m, const Matrix<F>& u) {
  auto q = quotient_by(m.field(), m.dim(), u);
  std::vector<Matrix<F>> acts;
  for (const auto& a : m.actions()) {
    if (u.cols() && !(q.projection * a * u).is_zero())
      throw InvariantViolation("quotient by a non-invariant subspace");
    acts.push_back(q.projection * a * q.section);
  }
  return {LeftModule<F>::trusted(m.algebra(), q.dim(), std::move(acts)), q.projection, q.section};
}

// ---------------------------------------------------------------------------
// Bimodules: modules over a factored algebra X (x) Y.

template <class F>
const std::pair<Algebra<F>, Algebra<F>>& require_factors(const Algebra<F>& a) {
  if (!a.factors()) throw AlgebraMismatch("expected a tensor product algebra, got " + a.name());
  return *a.factors();
}

/// rho(e_i (x) 1) for each basis vector of the first factor.
template <class F>
std::vector<Matrix<F>> first_factor_actions(const LeftModule<F>& m) {
  const auto& [x, y] = require_factors(m.algebra());
  std::vector<Matrix<F>> out;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    Matrix<F> acc(m.field(), m.dim(), m.dim());
    for (std::size_t k = 0; k < y.dim(); ++k) add_scaled(acc, y.unit()(k, 0), m.action(i * y.dim() + k));
    out.push_back(std::move(acc));
  }
  return out;
}

/// rho(1 (x) f_k) for each basis vector of the second factor.
template <class F>
std::vector<Matrix<F>> second_factor_actions(const LeftModule<F>& m) {
  const auto& [x, y] = require_factors(m.algebra());
  std::vector<Matrix<F>> out;
  for (std::size_t k = 0; k < y.dim(); ++k) {
    Matrix<F> acc(m.field(), m.dim(), m.dim());
    for (std::size_t i = 0; i < x.dim(); ++i) add_scaled(acc, x.unit()(i, 0), m.action(i * y.dim() + k));
    out.push_back(std::move(acc));
  }
  return out;
}

template <class F>
LeftModule<F> restrict_to_first(const LeftModule<F>& m) {
  return LeftModule<F>::trusted(require_factors(m.algebra()).first, m.dim(), first_factor_actions(m), m.name());
}

template <class F>
LeftModule<F> restrict_to_second(const LeftModule<F>& m) {
  return LeftModule<F>::trusted(require_factors(m.algebra()).second, m.dim(), second_factor_actions(m), m.name());
}

/// Module over x (x) y from commuting marginal actions:
/// rho(e_i (x) f_k) = lx_i * ry_k.
template <class F>
LeftModule<F> from_marginals(const Algebra<F>& xy, const std::vector<Matrix<F>>& lx, const std::vector<Matrix<F>>& ry,
                             std::string name = "", bool check = true) {
  const auto& [x, y] = require_factors(xy);
  if (lx.size() != x.dim() || ry.size() != y.dim()) throw DimensionMismatch("marginal action count");
  std::size_t d = lx.empty() ? 0 : lx[0].rows();
  std::vector<Matrix<F>> acts;
  for (std::size_t i = 0; i < x.dim(); ++i)
    for (std::size_t k = 0; k < y.dim(); ++k) acts.push_back(lx[i] * ry[k]);
  if (check) return LeftModule<F>::make(xy, d, std::move(acts), std::move(name));
  return LeftModule<F>::trusted(xy, d, std::move(acts), std::move(name));
}

/// The same bimodule over y (x) x.
template <class F>
LeftModule<F> swap_sides(const LeftModule<F>& m) {
  const auto& [x, y] = require_factors(m.algebra());
  Algebra<F> yx = tensor_algebra(y, x);
  std::vector<Matrix<F>> acts;
  for (std::size_t k = 0; k < y.dim(); ++k)
    for (std::size_t i = 0; i < x.dim(); ++i) acts.push_back(m.action(i * y.dim() + k));
  // the standard basis of a free module is permuted here, so the rank tag is dropped
  return LeftModule<F>::trusted(yx, m.dim(), std::move(acts), m.name());
}

/// Left A-module viewed as a module over A (x) k.
template <class F>
LeftModule<F> as_left_bimodule(const LeftModule<F>& m) {
  Algebra<F> ak = tensor_algebra(m.algebra(), Algebra<F>::ground(m.field()));
  return LeftModule<F>::trusted(ak, m.dim(), m.actions(), m.name(), m.free_rank());
}

/// Left B^op-module (a right B-module) viewed as a module over k (x) B^op.
template <class F>
LeftModule<F> as_right_bimodule(const LeftModule<F>& m) {
  Algebra<F> kb = tensor_algebra(Algebra<F>::ground(m.field()), m.algebra());
  return LeftModule<F>::trusted(kb, m.dim(), m.actions(), m.name(), m.free_rank());
}

/// Drops one-dimensional tensor factors: a module over X (x) k or k (x) X
/// becomes a module over X.
template <class F>
LeftModule<F> drop_trivial_factors(const LeftModule<F>& m) {
  const auto* fac = m.algebra().factors();
  if (!fac) return m;
  if (fac->second.dim() == 1) return drop_trivial_factors(restrict_to_first(m));
  if (fac->first.dim() == 1) return drop_trivial_factors(restrict_to_second(m));
  return m;
}

/// A as a module over A (x) A^op: (a (x) b) . m = a m b.
template <class F>
LeftModule<F> regular_bimodule(const Algebra<F>& a) {
  Algebra<F> ae = enveloping(a);
  std::vector<Matrix<F>> acts;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t k = 0; k < a.dim(); ++k) acts.push_back(a.left(i) * a.right(k));
  return LeftModule<F>::trusted(ae, a.dim(), std::move(acts), "A");
}

/// D(A) = Hom_k(A, k) with (a . phi . b)(x) = phi(b x a).
template <class F>
LeftModule<F> dual_bimodule(const Algebra<F>& a) {
  return swap_sides(dual_module(regular_bimodule(a))).renamed("R");
}

}  // namespace hcat
