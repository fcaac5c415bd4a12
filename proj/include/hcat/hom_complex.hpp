#pragma once

#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "hcat/complex.hpp"

namespace hcat {

/// Which algebra a Hom complex contracts, and how residual actions survive.
enum class Contract {
  plain,   // modules over A; result over the ground field
  first,   // modules over X (x) Y and X (x) Z; result over Y^op (x) Z
  second,  // modules over Y (x) X and Z (x) X; result over Y^op (x) Z
};

template <class F>
HomSide<F> side_for(const LeftModule<F>& m, Contract c) {
  switch (c) {
    case Contract::plain:
      return plain_side(m);
    case Contract::first:
      return first_side(m);
    case Contract::second:
      return second_side(m);
  }
  return plain_side(m);
}

template <class F>
Algebra<F> hom_result_algebra(const Algebra<F>& src, const Algebra<F>& tgt, Contract c) {
  if (c == Contract::plain) {
    if (!(src == tgt)) throw AlgebraMismatch("hom complex: different algebras");
    return Algebra<F>::ground(src.field());
  }
  const auto& fs = require_factors(src);
  const auto& ft = require_factors(tgt);
  if (c == Contract::first) {
    if (!(fs.first == ft.first)) throw AlgebraMismatch("hom complex: contracted factors differ");
    return tensor_algebra(opposite_algebra(fs.second), ft.second);
  }
  if (!(fs.second == ft.second)) throw AlgebraMismatch("hom complex: contracted factors differ");
  return tensor_algebra(opposite_algebra(fs.first), ft.first);
}

/// Hom(M, N)^i = sum_j Hom(M^j, N^(j+i)), d(phi) = d_N phi - (-1)^i phi d_M.
/// Keeps the Hom spaces so that elements can be decoded into components.
template <class F>
class HomComplex {
 public:
  struct Block {
    int source_degree;  // j
    std::size_t offset;
    HomSpace<F> space;
  };

  using SideFn = std::function<HomSide<F>(int, const LeftModule<F>&)>;

  HomComplex(const Complex<F>& m, const Complex<F>& n, Contract c,
             std::optional<Algebra<F>> result_alg = std::nullopt)
      : HomComplex(m, n, [c](int, const LeftModule<F>& x) { return side_for(x, c); },
                   [c](int, const LeftModule<F>& x) { return side_for(x, c); },
                   result_alg ? *result_alg : hom_result_algebra(m.algebra(), n.algebra(), c)) {}

  /// General form: the sides (contracted action and residual operators) are
  /// supplied per degree, and the residual products act through `ra`.
  HomComplex(const Complex<F>& m, const Complex<F>& n, const SideFn& side_m, const SideFn& side_n, const Algebra<F>& ra)
      : m_(m), n_(n) {
    const F& f = m.field();
    if (m.empty() || n.empty()) {
      complex_ = Complex<F>::zero(ra);
      lo_ = 0;
      return;
    }
    lo_ = n.lo() - m.hi();
    int hi = n.hi() - m.lo();
    std::vector<LeftModule<F>> mods;
    std::map<int, HomSide<F>> sides_m, sides_n;
    for (int j = m.lo(); j <= m.hi(); ++j) sides_m.emplace(j, side_m(j, m.module(j)));
    for (int j = n.lo(); j <= n.hi(); ++j) sides_n.emplace(j, side_n(j, n.module(j)));
    for (int i = lo_; i <= hi; ++i) {
      std::vector<Block> blocks;
      std::size_t off = 0;
      LeftModule<F> acc = zero_module(ra);
      for (int j = m.lo(); j <= m.hi(); ++j) {
        if (j + i < n.lo() || j + i > n.hi()) continue;
        auto [space, mod] = hom_module_core(ra, sides_m.at(j), sides_n.at(j + i));
        if (space.dim() == 0) continue;
        std::size_t dimb = space.dim();
        blocks.push_back(Block{j, off, std::move(space)});
        off += dimb;
        acc = direct_sum(acc, mod);
      }
      blocks_.push_back(std::move(blocks));
      mods.push_back(acc);
    }
    std::vector<Matrix<F>> diffs;
    for (int i = lo_; i < hi; ++i) {
      Matrix<F> d(f, mods[static_cast<std::size_t>(i + 1 - lo_)].dim(), mods[static_cast<std::size_t>(i - lo_)].dim());
      for (const auto& b : blocks(i))
        for (std::size_t e = 0; e < b.space.dim(); ++e) {
          std::vector<std::pair<int, Matrix<F>>> comps;
          const Matrix<F>& phi = b.space[e];
          int j = b.source_degree;
          comps.emplace_back(j, n.d(j + i) * phi);
          Matrix<F> back = phi * m.d(j - 1);
          if (sign_of(i) == 1) back = negate(back);
          comps.emplace_back(j - 1, back);
          d.set_block(0, b.offset + e, encode(i + 1, comps));
        }
      diffs.push_back(std::move(d));
    }
    complex_ = Complex<F>::trusted(ra, lo_, std::move(mods), std::move(diffs));
  }

  const Complex<F>& complex() const { return complex_; }
  const Complex<F>& source() const { return m_; }
  const Complex<F>& target() const { return n_; }

  const std::vector<Block>& blocks(int i) const {
    static const std::vector<Block> none;
    if (i < lo_ || i >= lo_ + static_cast<int>(blocks_.size())) return none;
    return blocks_[static_cast<std::size_t>(i - lo_)];
  }

  /// Coordinates of a graded map of degree i given by components (j, M^j -> N^(j+i)).
  Matrix<F> encode(int i, const std::vector<std::pair<int, Matrix<F>>>& comps) const {
    std::size_t n = 0;
    for (const auto& b : blocks(i)) n += b.space.dim();
    Matrix<F> x(m_.field(), n, 1);
    for (const auto& [j, g] : comps)
      for (const auto& b : blocks(i))
        if (b.source_degree == j) {
          auto c = b.space.coordinates(g);
          for (std::size_t r = 0; r < c.rows(); ++r) x(b.offset + r, 0) = m_.field().add(x(b.offset + r, 0), c(r, 0));
        }
    return x;
  }

  /// Component M^j -> N^(j+i) of an element of degree i.
  Matrix<F> component(int i, const Matrix<F>& x, int j) const {
    for (const auto& b : blocks(i))
      if (b.source_degree == j) return b.space.combination(x.block(b.offset, 0, b.space.dim(), 1));
    return Matrix<F>(m_.field(), n_.dim(j + i), m_.dim(j));
  }

  /// A degree-k cocycle as the chain map M -> N[k] with the same components.
  ChainMap<F> as_chain_map(int k, const Matrix<F>& x) const {
    Complex<F> t = shift(n_, k);
    std::vector<Matrix<F>> comps;
    for (int j = m_.lo(); j <= m_.hi(); ++j) comps.push_back(component(k, x, j));
    return ChainMap<F>::trusted(m_, t, std::move(comps), m_.lo());
  }

  /// Coordinates of a chain map M -> N[k] (same components) in degree k.
  Matrix<F> from_chain_map(int k, const ChainMap<F>& phi) const {
    std::vector<std::pair<int, Matrix<F>>> comps;
    for (int j = m_.lo(); j <= m_.hi(); ++j) comps.emplace_back(j, phi(j));
    return encode(k, comps);
  }

 private:
  Complex<F> m_, n_;
  Complex<F> complex_;
  int lo_ = 0;
  std::vector<std::vector<Block>> blocks_;
};

template <class F>
Complex<F> hom_complex(const Complex<F>& m, const Complex<F>& n, Contract c = Contract::plain) {
  return HomComplex<F>(m, n, c).complex();
}

/// Degree -1 maps h with phi = d h + h d, when phi is null-homotopic.
template <class F>
std::optional<std::vector<Matrix<F>>> is_null_homotopic(const ChainMap<F>& phi) {
  const Complex<F>& m = phi.source();
  const Complex<F>& n = phi.target();
  const F& f = m.field();
  if (phi.is_zero()) {
    std::vector<Matrix<F>> h;
    for (int j = m.lo(); j <= m.hi(); ++j) h.push_back(Matrix<F>(f, n.dim(j - 1), m.dim(j)));
    return h;
  }
  HomComplex<F> hc(m, n, Contract::plain);
  Matrix<F> target = hc.from_chain_map(0, phi);
  // with the sign rule, d(h) = d_N h + h d_M for h of degree -1
  auto x = solve(hc.complex().d(-1), target);
  if (!x) return std::nullopt;
  std::vector<Matrix<F>> h;
  for (int j = m.lo(); j <= m.hi(); ++j) h.push_back(hc.component(-1, *x, j));
  // certificate check
  for (int j = m.lo(); j <= m.hi(); ++j) {
    Matrix<F> lhs = n.d(j - 1) * h[static_cast<std::size_t>(j - m.lo())];
    if (j + 1 <= m.hi()) lhs = lhs + h[static_cast<std::size_t>(j + 1 - m.lo())] * m.d(j);
    if (!(lhs == phi(j))) throw InvariantViolation("homotopy certificate failed");
  }
  return h;
}

// ---------------------------------------------------------------------------
// Tensor products over a middle algebra.

/// Balanced tensor of m over X (x) B^op and n over B (x) W: the quotient of
/// m (x)_k n by the span of (m b) (x) n - m (x) (b n) over generators b of B.
template <class F>
struct BalancedTensor {
  LeftModule<F> module;  // over X (x) W
  Matrix<F> projection;  // from m (x)_k n
  Matrix<F> section;
};

template <class F>
BalancedTensor<F> balanced_tensor(const LeftModule<F>& m, const LeftModule<F>& n, const Algebra<F>& xw) {
  const auto& [x, bop] = require_factors(m.algebra());
  const auto& [b, w] = require_factors(n.algebra());
  if (!(opposite_algebra(bop) == b)) throw AlgebraMismatch("tensor: middle algebras do not match");
  const F& f = m.field();
  std::size_t dm = m.dim(), dn = n.dim();
  auto mr = second_factor_actions(m);
  auto nl = first_factor_actions(n);
  auto im = Matrix<F>::identity(f, dm), in = Matrix<F>::identity(f, dn);
  std::vector<Matrix<F>> rels;
  for (const auto& g : b.generators()) {
    Matrix<F> rm(f, dm, dm), ln(f, dn, dn);
    for (std::size_t k = 0; k < b.dim(); ++k) {
      add_scaled(rm, g(k, 0), mr[k]);
      add_scaled(ln, g(k, 0), nl[k]);
    }
    rels.push_back(kron(rm, in) - kron(im, ln));
  }
  Matrix<F> u = hstack_all(f, dm * dn, rels);
  auto q = quotient_by(f, dm * dn, u);
  auto ml = first_factor_actions(m);
  auto nr = second_factor_actions(n);
  std::vector<Matrix<F>> acts;
  for (std::size_t i = 0; i < x.dim(); ++i)
    for (std::size_t k = 0; k < w.dim(); ++k) acts.push_back(q.projection * kron(ml[i], nr[k]) * q.section);
  return {LeftModule<F>::trusted(xw, q.dim(), std::move(acts)), q.projection, q.section};
}

/// Total tensor complex, degree n = sum_{i+j=n} M^i (x)_B N^j with
/// d(m (x) n) = dm (x) n + (-1)^i m (x) dn.
template <class F>
Complex<F> tensor_complex(const Complex<F>& m, const Complex<F>& n) {
  const auto& [x, bop] = require_factors(m.algebra());
  const auto& [b, w] = require_factors(n.algebra());
  (void)bop;
  (void)b;
  Algebra<F> xw = tensor_algebra(x, w);
  const F& f = m.field();
  if (m.empty() || n.empty()) return Complex<F>::zero(xw);
  int lo = m.lo() + n.lo(), hi = m.hi() + n.hi();
  std::map<std::pair<int, int>, BalancedTensor<F>> pieces;
  for (int i = m.lo(); i <= m.hi(); ++i)
    for (int j = n.lo(); j <= n.hi(); ++j) pieces.emplace(std::make_pair(i, j), balanced_tensor(m.module(i), n.module(j), xw));
  std::vector<LeftModule<F>> mods;
  std::vector<std::map<int, std::size_t>> offsets;  // per total degree: i -> offset
  for (int t = lo; t <= hi; ++t) {
    LeftModule<F> acc = zero_module(xw);
    std::map<int, std::size_t> off;
    for (int i = m.lo(); i <= m.hi(); ++i) {
      int j = t - i;
      if (j < n.lo() || j > n.hi()) continue;
      off[i] = acc.dim();
      acc = direct_sum(acc, pieces.at({i, j}).module);
    }
    mods.push_back(acc);
    offsets.push_back(std::move(off));
  }
  std::vector<Matrix<F>> diffs;
  for (int t = lo; t < hi; ++t) {
    std::size_t k = static_cast<std::size_t>(t - lo);
    Matrix<F> d(f, mods[k + 1].dim(), mods[k].dim());
    for (const auto& [i, off] : offsets[k]) {
      int j = t - i;
      const auto& src = pieces.at({i, j});
      if (src.module.dim() == 0) continue;
      if (i + 1 <= m.hi()) {
        const auto& tgt = pieces.at({i + 1, j});
        Matrix<F> blk = tgt.projection * kron(m.d(i), Matrix<F>::identity(f, n.dim(j))) * src.section;
        d.set_block(offsets[k + 1].at(i + 1), off, blk);
      }
      if (j + 1 <= n.hi()) {
        const auto& tgt = pieces.at({i, j + 1});
        Matrix<F> blk = tgt.projection * kron(Matrix<F>::identity(f, m.dim(i)), n.d(j)) * src.section;
        if (sign_of(i) == -1) blk = negate(blk);
        d.set_block(offsets[k + 1].at(i), off, blk);
      }
    }
    diffs.push_back(std::move(d));
  }
  auto c = Complex<F>::trusted(xw, lo, std::move(mods), std::move(diffs));
  for (int t = c.lo(); t + 1 < c.hi(); ++t)
    if (!(c.d(t + 1) * c.d(t)).is_zero()) throw InvariantViolation("tensor complex: d^2 != 0");
  return c;
}

}  // namespace hcat
