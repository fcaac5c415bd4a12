#pragma once

#include <algorithm>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hcat/hom.hpp"

namespace hcat {

/// Bounded cochain complex of left modules. Degrees lo..hi are stored; every
/// other degree is zero. d(i) maps degree i to degree i + 1.
template <class F>
class Complex {
 public:
  using Mat = Matrix<F>;

  Complex() = default;

  static Complex make(const Algebra<F>& alg, int lo, std::vector<LeftModule<F>> mods, std::vector<Mat> diffs) {
    Complex c = trusted(alg, lo, std::move(mods), std::move(diffs));
    if (auto why = c.validate()) throw InvariantViolation("complex: " + *why);
    return c;
  }

  static Complex trusted(const Algebra<F>& alg, int lo, std::vector<LeftModule<F>> mods, std::vector<Mat> diffs) {
    if (!mods.empty() && diffs.size() + 1 != mods.size()) throw DimensionMismatch("complex: need one differential per gap");
    auto d = std::make_shared<Data>();
    d->alg = alg;
    d->lo = lo;
    d->zero = zero_module(alg);
    for (std::size_t k = 0; k < mods.size(); ++k) {
      require_same_algebra(mods[k], d->zero, "complex term");
      if (k < diffs.size() &&
          (diffs[k].rows() != mods[k + 1].dim() || diffs[k].cols() != mods[k].dim()))
        throw DimensionMismatch("complex: differential " + std::to_string(lo + static_cast<int>(k)) + " has wrong size");
    }
    for (std::size_t k = 0; k + 1 < diffs.size(); ++k)
      if (!(diffs[k + 1] * diffs[k]).is_zero())
        throw InvariantViolation("complex: d^2 != 0 at degree " + std::to_string(lo + static_cast<int>(k)));
    d->mods = std::move(mods);
    d->diffs = std::move(diffs);
    return Complex(std::move(d));
  }

  /// A single module placed in the given degree.
  static Complex single(const LeftModule<F>& m, int degree = 0) {
    return trusted(m.algebra(), degree, {m}, {});
  }

  static Complex zero(const Algebra<F>& alg) { return trusted(alg, 0, {}, {}); }

  bool valid() const { return static_cast<bool>(d_); }
  const Algebra<F>& algebra() const { return d_->alg; }
  const F& field() const { return d_->alg.field(); }
  int lo() const { return d_->lo; }
  int hi() const { return d_->lo + static_cast<int>(d_->mods.size()) - 1; }
  bool empty() const { return d_->mods.empty(); }

  const LeftModule<F>& module(int i) const {
    if (i < lo() || i > hi()) return d_->zero;
    return d_->mods[static_cast<std::size_t>(i - lo())];
  }
  std::size_t dim(int i) const { return module(i).dim(); }

  /// Differential out of degree i (a zero matrix of the right shape outside the range).
  Mat d(int i) const {
    if (i < lo() || i >= hi()) return Mat(field(), dim(i + 1), dim(i));
    return d_->diffs[static_cast<std::size_t>(i - lo())];
  }

  std::size_t total_dim() const {
    std::size_t s = 0;
    for (const auto& m : d_->mods) s += m.dim();
    return s;
  }

  std::optional<std::string> validate() const {
    for (int i = lo(); i <= hi(); ++i) {
      if (auto why = module(i).validate()) return "degree " + std::to_string(i) + ": " + *why;
      if (i < hi() && !is_module_hom(module(i), module(i + 1), d(i)))
        return "differential " + std::to_string(i) + " is not a module map";
      if (i + 1 < hi() && !(d(i + 1) * d(i)).is_zero()) return "d^2 != 0 at degree " + std::to_string(i);
    }
    return std::nullopt;
  }

  /// Drops zero modules at both ends (the empty complex stays at lo).
  Complex trimmed() const {
    int a = lo(), b = hi();
    while (a <= b && dim(a) == 0) ++a;
    while (b >= a && dim(b) == 0) --b;
    if (a > b) return zero(algebra());
    return restricted(a, b);
  }

  /// Terms in degrees [a, b] with the differentials between them (the stupid
  /// truncation when a or b cuts inside the support).
  Complex restricted(int a, int b) const {
    std::vector<LeftModule<F>> mods;
    std::vector<Mat> diffs;
    for (int i = a; i <= b; ++i) {
      mods.push_back(module(i));
      if (i < b) diffs.push_back(d(i));
    }
    return trusted(algebra(), a, std::move(mods), std::move(diffs));
  }

  /// Same underlying data with a per-degree module transformation that keeps
  /// the underlying vector spaces (restriction, retagging, swapping sides).
  Complex map_modules(const std::function<LeftModule<F>(const LeftModule<F>&)>& fn) const {
    Algebra<F> alg = fn(d_->zero).algebra();
    std::vector<LeftModule<F>> mods;
    for (const auto& m : d_->mods) mods.push_back(fn(m));
    return trusted(alg, lo(), std::move(mods), d_->diffs);
  }

  Complex with_name(std::string name) const {
    auto d = std::make_shared<Data>(*d_);
    d->name = std::move(name);
    return Complex(std::move(d));
  }
  const std::string& name() const { return d_->name; }

 private:
  struct Data {
    Algebra<F> alg;
    int lo = 0;
    std::vector<LeftModule<F>> mods;
    std::vector<Mat> diffs;
    LeftModule<F> zero;
    std::string name;
  };
  explicit Complex(std::shared_ptr<Data> d) : d_(std::move(d)) {}
  std::shared_ptr<Data> d_;
};

/// Degreewise map between complexes, phi(i): source(i) -> target(i).
template <class F>
class ChainMap {
 public:
  using Mat = Matrix<F>;

  ChainMap() = default;

  static ChainMap make(Complex<F> s, Complex<F> t, std::vector<Mat> comps, int lo) {
    ChainMap m = trusted(std::move(s), std::move(t), std::move(comps), lo);
    if (auto why = m.validate()) throw InvariantViolation("chain map: " + *why);
    return m;
  }

  /// Components indexed from degree lo; missing degrees are zero.
  static ChainMap trusted(Complex<F> s, Complex<F> t, std::vector<Mat> comps, int lo) {
    if (!(s.algebra() == t.algebra())) throw AlgebraMismatch("chain map between complexes over different algebras");
    ChainMap m;
    m.src_ = std::move(s);
    m.tgt_ = std::move(t);
    m.lo_ = lo;
    m.comps_ = std::move(comps);
    for (std::size_t k = 0; k < m.comps_.size(); ++k) {
      int i = lo + static_cast<int>(k);
      if (m.comps_[k].rows() != m.tgt_.dim(i) || m.comps_[k].cols() != m.src_.dim(i))
        throw DimensionMismatch("chain map component " + std::to_string(i));
    }
    return m;
  }

  static ChainMap zero(Complex<F> s, Complex<F> t) { return trusted(std::move(s), std::move(t), {}, 0); }

  static ChainMap identity(const Complex<F>& c) {
    std::vector<Mat> comps;
    for (int i = c.lo(); i <= c.hi(); ++i) comps.push_back(Mat::identity(c.field(), c.dim(i)));
    return trusted(c, c, std::move(comps), c.lo());
  }

  const Complex<F>& source() const { return src_; }
  const Complex<F>& target() const { return tgt_; }

  Mat operator()(int i) const {
    if (i < lo_ || i >= lo_ + static_cast<int>(comps_.size())) return Mat(src_.field(), tgt_.dim(i), src_.dim(i));
    return comps_[static_cast<std::size_t>(i - lo_)];
  }

  /// Degrees where either end is nonzero.
  int lo() const { return std::min(src_.lo(), tgt_.lo()); }
  int hi() const { return std::max(src_.hi(), tgt_.hi()); }

  bool is_zero() const {
    for (const auto& c : comps_)
      if (!c.is_zero()) return false;
    return true;
  }

  std::optional<std::string> validate() const {
    for (int i = src_.lo(); i <= src_.hi(); ++i) {
      if (!is_module_hom(src_.module(i), tgt_.module(i), (*this)(i)))
        return "component " + std::to_string(i) + " is not a module map";
      if (!((*this)(i + 1) * src_.d(i) == tgt_.d(i) * (*this)(i)))
        return "square at degree " + std::to_string(i) + " does not commute";
    }
    return std::nullopt;
  }

 private:
  Complex<F> src_, tgt_;
  int lo_ = 0;
  std::vector<Mat> comps_;
};

template <class F>
ChainMap<F> compose(const ChainMap<F>& g, const ChainMap<F>& f) {
  std::vector<Matrix<F>> comps;
  int a = f.source().lo(), b = f.source().hi();
  for (int i = a; i <= b; ++i) comps.push_back(g(i) * f(i));
  return ChainMap<F>::trusted(f.source(), g.target(), std::move(comps), a);
}

template <class F>
ChainMap<F> combine_maps(const ChainMap<F>& f, const ChainMap<F>& g, const typename F::value_type& s) {
  std::vector<Matrix<F>> comps;
  int a = f.source().lo(), b = f.source().hi();
  for (int i = a; i <= b; ++i) {
    Matrix<F> c = f(i);
    add_scaled(c, s, g(i));
    comps.push_back(std::move(c));
  }
  return ChainMap<F>::trusted(f.source(), f.target(), std::move(comps), a);
}

/// f - g
template <class F>
ChainMap<F> difference(const ChainMap<F>& f, const ChainMap<F>& g) {
  const F& fld = f.source().field();
  return combine_maps(f, g, fld.neg(fld.one()));
}

inline int sign_of(int k) { return (k % 2 == 0) ? 1 : -1; }

/// M[k]: degree i holds M^(i+k), differential multiplied by (-1)^k.
template <class F>
Complex<F> shift(const Complex<F>& m, int k) {
  if (k == 0) return m;
  std::vector<LeftModule<F>> mods;
  std::vector<Matrix<F>> diffs;
  for (int i = m.lo(); i <= m.hi(); ++i) {
    mods.push_back(m.module(i));
    if (i < m.hi()) diffs.push_back(sign_of(k) == 1 ? m.d(i) : negate(m.d(i)));
  }
  return Complex<F>::trusted(m.algebra(), m.lo() - k, std::move(mods), std::move(diffs));
}

/// phi[k] with the same components.
template <class F>
ChainMap<F> shift(const ChainMap<F>& f, int k) {
  Complex<F> s = shift(f.source(), k), t = shift(f.target(), k);
  std::vector<Matrix<F>> comps;
  for (int i = s.lo(); i <= s.hi(); ++i) comps.push_back(f(i + k));
  return ChainMap<F>::trusted(s, t, std::move(comps), s.lo());
}

template <class F>
Complex<F> direct_sum(const Complex<F>& a, const Complex<F>& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  int lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
  std::vector<LeftModule<F>> mods;
  std::vector<Matrix<F>> diffs;
  for (int i = lo; i <= hi; ++i) {
    mods.push_back(direct_sum(a.module(i), b.module(i)));
    if (i < hi) diffs.push_back(block_diag(a.d(i), b.d(i)));
  }
  return Complex<F>::trusted(a.algebra(), lo, std::move(mods), std::move(diffs));
}

template <class F>
struct Cone {
  Complex<F> complex;
  ChainMap<F> inclusion;   // M -> cone
  ChainMap<F> projection;  // cone -> L[1]
};

/// cone(a)^i = L^(i+1) + M^i with d = [[-d_L, 0], [a, d_M]].
template <class F>
Cone<F> cone(const ChainMap<F>& a) {
  const Complex<F>& l = a.source();
  const Complex<F>& m = a.target();
  const F& f = m.field();
  Complex<F> tl = shift(l, 1);
  if (l.empty() && m.empty()) {
    Complex<F> z = Complex<F>::zero(m.algebra());
    return {z, ChainMap<F>::zero(m, z), ChainMap<F>::zero(z, tl)};
  }
  int lo = l.empty() ? m.lo() : m.empty() ? l.lo() - 1 : std::min(l.lo() - 1, m.lo());
  int hi = l.empty() ? m.hi() : m.empty() ? l.hi() - 1 : std::max(l.hi() - 1, m.hi());
  std::vector<LeftModule<F>> mods;
  std::vector<Matrix<F>> diffs, inc, proj;
  for (int i = lo; i <= hi; ++i) {
    mods.push_back(direct_sum(l.module(i + 1), m.module(i)));
    std::size_t dl = l.dim(i + 1), dm = m.dim(i);
    Matrix<F> in(f, dl + dm, dm), pr(f, dl, dl + dm);
    in.set_block(dl, 0, Matrix<F>::identity(f, dm));
    pr.set_block(0, 0, Matrix<F>::identity(f, dl));
    inc.push_back(std::move(in));
    proj.push_back(std::move(pr));
    if (i < hi) {
      std::size_t dl2 = l.dim(i + 2), dm2 = m.dim(i + 1);
      Matrix<F> d(f, dl2 + dm2, dl + dm);
      d.set_block(0, 0, negate(l.d(i + 1)));
      d.set_block(dl2, 0, a(i + 1));
      d.set_block(dl2, dl, m.d(i));
      diffs.push_back(std::move(d));
    }
  }
  auto c = Complex<F>::trusted(m.algebra(), lo, std::move(mods), std::move(diffs));
  auto incl = ChainMap<F>::trusted(m, c, std::move(inc), lo);
  auto prj = ChainMap<F>::trusted(c, tl, std::move(proj), lo);
  return {c, incl, prj};
}

/// H^i with explicit witnesses: `section` columns are cocycle representatives
/// of a basis of H^i; `extract` maps a cocycle of degree i to its class.
template <class F>
struct Cohomology {
  LeftModule<F> module;
  Matrix<F> cocycles;  // basis of ker d^i
  Matrix<F> section;   // dim M^i x dim H
  Matrix<F> extract;   // dim H x dim M^i (meaningful on cocycles)
  std::size_t dim() const { return module.dim(); }
};

template <class F>
Cohomology<F> cohomology(const Complex<F>& m, int i, bool validate_module = true) {
  const F& f = m.field();
  std::size_t n = m.dim(i);
  Matrix<F> z = kernel_basis(m.d(i));
  if (z.cols() == 0) {
    return {zero_module(m.algebra()), z, Matrix<F>(f, n, 0), Matrix<F>(f, 0, n)};
  }
  SubspaceCoords<F> zc(z);
  Matrix<F> b = zc.coords(m.d(i - 1));
  auto q = quotient_by(f, z.cols(), b);
  std::vector<Matrix<F>> acts;
  for (const auto& a : m.module(i).actions()) acts.push_back(q.projection * zc.coords(a * z) * q.section);
  auto h = validate_module ? LeftModule<F>::make(m.algebra(), q.dim(), std::move(acts))
                           : LeftModule<F>::trusted(m.algebra(), q.dim(), std::move(acts));
  return {h, z, z * q.section, q.projection * zc.extractor()};
}

template <class F>
bool is_acyclic(const Complex<F>& m) {
  for (int i = m.lo(); i <= m.hi(); ++i)
    if (cohomology(m, i, false).dim() != 0) return false;
  return true;
}

/// H^i(phi) in the bases chosen by cohomology().
template <class F>
Matrix<F> induced_map(const ChainMap<F>& phi, int i, const Cohomology<F>& hs, const Cohomology<F>& ht) {
  return ht.extract * phi(i) * hs.section;
}

template <class F>
Matrix<F> induced_map(const ChainMap<F>& phi, int i) {
  return induced_map(phi, i, cohomology(phi.source(), i, false), cohomology(phi.target(), i, false));
}

/// Induced maps on all cohomology are isomorphisms; the answer is checked
/// against acyclicity of the cone.
template <class F>
bool is_quasi_iso(const ChainMap<F>& phi, bool cross_check = true) {
  bool ok = true;
  for (int i = phi.lo(); i <= phi.hi() && ok; ++i) {
    auto hs = cohomology(phi.source(), i, false), ht = cohomology(phi.target(), i, false);
    if (hs.dim() != ht.dim()) {
      ok = false;
      break;
    }
    if (hs.dim() && !is_invertible(induced_map(phi, i, hs, ht))) ok = false;
  }
  if (cross_check) {
    bool by_cone = is_acyclic(cone(phi).complex);
    if (by_cone != ok) throw InvariantViolation("quasi-isomorphism test disagrees with cone acyclicity");
  }
  return ok;
}

/// Smart truncation tau_{<= t}: degree t replaced by its cocycles.
template <class F>
Complex<F> truncate_above(const Complex<F>& m, int t) {
  if (t >= m.hi()) return m;
  if (t < m.lo()) return Complex<F>::zero(m.algebra());
  std::vector<LeftModule<F>> mods;
  std::vector<Matrix<F>> diffs;
  for (int i = m.lo(); i < t; ++i) mods.push_back(m.module(i));
  for (int i = m.lo(); i < t - 1; ++i) diffs.push_back(m.d(i));
  auto sub = submodule(m.module(t), kernel_basis(m.d(t)));
  mods.push_back(sub.module);
  if (t > m.lo()) {
    SubspaceCoords<F> c(sub.inclusion);
    diffs.push_back(c.coords(m.d(t - 1)));
  }
  return Complex<F>::trusted(m.algebra(), m.lo(), std::move(mods), std::move(diffs));
}

/// Dimensions of H^i for i in [lo, hi].
template <class F>
std::vector<std::size_t> cohomology_dims(const Complex<F>& m, int lo, int hi) {
  std::vector<std::size_t> out;
  for (int i = lo; i <= hi; ++i) out.push_back(cohomology(m, i, false).dim());
  return out;
}

/// Degrees with nonzero cohomology.
template <class F>
std::vector<int> cohomology_support(const Complex<F>& m) {
  std::vector<int> out;
  for (int i = m.lo(); i <= m.hi(); ++i)
    if (cohomology(m, i, false).dim()) out.push_back(i);
  return out;
}

}  // namespace hcat
