#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hcat/module.hpp"

namespace hcat {

/// A module seen by a Hom computation: the action of the algebra being
/// contracted, plus residual operators that commute with it and are carried
/// over to the Hom space.
template <class F>
struct HomSide {
  std::size_t dim = 0;
  std::vector<Matrix<F>> action;
  std::vector<Matrix<F>> residual;
  std::optional<Matrix<F>> generators;  // columns generating the module over the contracted algebra
};

template <class F>
HomSide<F> plain_side(const LeftModule<F>& m) {
  HomSide<F> s{m.dim(), m.actions(), {Matrix<F>::identity(m.field(), m.dim())}, std::nullopt};
  if (m.free_rank()) s.generators = free_generators(m.algebra(), *m.free_rank());
  return s;
}

/// Contract the first factor of a module over X (x) Y; Y acts residually.
template <class F>
HomSide<F> first_side(const LeftModule<F>& m) {
  HomSide<F> s{m.dim(), first_factor_actions(m), second_factor_actions(m), std::nullopt};
  if (m.free_rank()) {
    const auto& [x, y] = require_factors(m.algebra());
    std::size_t r = *m.free_rank(), nx = x.dim(), ny = y.dim();
    Matrix<F> g(m.field(), m.dim(), r * ny);
    for (std::size_t c = 0; c < r; ++c)
      for (std::size_t k = 0; k < ny; ++k)
        for (std::size_t i = 0; i < nx; ++i) g(c * nx * ny + i * ny + k, c * ny + k) = x.unit()(i, 0);
    s.generators = std::move(g);
  }
  return s;
}

/// Contract the second factor of a module over Y (x) X; Y acts residually.
template <class F>
HomSide<F> second_side(const LeftModule<F>& m) {
  HomSide<F> s{m.dim(), second_factor_actions(m), first_factor_actions(m), std::nullopt};
  if (m.free_rank()) {
    const auto& [y, x] = require_factors(m.algebra());
    std::size_t r = *m.free_rank(), nx = x.dim(), ny = y.dim();
    Matrix<F> g(m.field(), m.dim(), r * ny);
    for (std::size_t c = 0; c < r; ++c)
      for (std::size_t k = 0; k < ny; ++k)
        for (std::size_t i = 0; i < nx; ++i) g(c * nx * ny + k * nx + i, c * ny + k) = x.unit()(i, 0);
    s.generators = std::move(g);
  }
  return s;
}

/// Columns generating m under the given action, chosen greedily among the
/// standard basis vectors.
template <class F>
Matrix<F> greedy_generators(const F& f, std::size_t dim, const std::vector<Matrix<F>>& action) {
  EchelonBasis<F> span(f, dim);
  std::vector<std::size_t> picked;
  for (std::size_t j = 0; j < dim && span.dim() < dim; ++j) {
    auto e = Matrix<F>::unit_vector(f, dim, j);
    if (span.contains_column(e, 0)) continue;
    picked.push_back(j);
    for (const auto& a : action) span.insert(EchelonBasis<F>::column_entries(a, j));
  }
  return Matrix<F>::identity(f, dim).select_columns(picked);
}

/// Basis of Hom over the contracted algebra, with coordinates.
/// A map f is determined by its values on generators g_1..g_t; the admissible
/// value tuples form the column space of `values`.
template <class F>
class HomSpace {
 public:
  HomSpace() = default;

  std::size_t dim() const { return basis_.size(); }
  std::size_t source_dim() const { return src_dim_; }
  std::size_t target_dim() const { return tgt_dim_; }
  const std::vector<Matrix<F>>& basis() const { return basis_; }
  const Matrix<F>& operator[](std::size_t i) const { return basis_[i]; }

  /// Coordinates of a homomorphism in the basis (unchecked).
  Matrix<F> coordinates(const Matrix<F>& f) const {
    Matrix<F> ev = f * gens_;
    Matrix<F> v(field_, ev.rows() * ev.cols(), 1);
    for (std::size_t s = 0; s < ev.cols(); ++s)
      for (std::size_t i = 0; i < ev.rows(); ++i) v(s * ev.rows() + i, 0) = ev(i, s);
    return coords_.coords(v);
  }

  Matrix<F> combination(const Matrix<F>& x) const {
    Matrix<F> out(field_, tgt_dim_, src_dim_);
    for (std::size_t b = 0; b < basis_.size(); ++b) add_scaled(out, x(b, 0), basis_[b]);
    return out;
  }

  template <class G>
  friend HomSpace<G> hom_space_core(const G& f, const HomSide<G>& m, const HomSide<G>& n);

 private:
  F field_{};
  std::size_t src_dim_ = 0, tgt_dim_ = 0;
  std::vector<Matrix<F>> basis_;
  Matrix<F> gens_;
  SubspaceCoords<F> coords_;
};

template <class F>
HomSpace<F> hom_space_core(const F& f, const HomSide<F>& m, const HomSide<F>& n) {
  if (m.action.size() != n.action.size()) throw AlgebraMismatch("hom: actions of different algebras");
  std::size_t nx = m.action.size(), dm = m.dim, dn = n.dim;
  HomSpace<F> h;
  h.field_ = f;
  h.src_dim_ = dm;
  h.tgt_dim_ = dn;
  h.gens_ = m.generators ? *m.generators : greedy_generators(f, dm, m.action);
  std::size_t t = h.gens_.cols();

  // cover Pi: (algebra)^t -> M, column s*nx + j = rho_j g_s
  Matrix<F> pi(f, dm, t * nx);
  for (std::size_t s = 0; s < t; ++s) {
    Matrix<F> g = h.gens_.col(s);
    for (std::size_t j = 0; j < nx; ++j) pi.set_block(0, s * nx + j, m.action[j] * g);
  }
  Matrix<F> ker = kernel_basis(pi);

  Matrix<F> values;
  if (ker.cols() == 0) {
    values = Matrix<F>::identity(f, t * dn);
  } else {
    Matrix<F> c(f, ker.cols() * dn, t * dn);
    for (std::size_t k = 0; k < ker.cols(); ++k)
      for (std::size_t s = 0; s < t; ++s) {
        Matrix<F> blk(f, dn, dn);
        for (std::size_t j = 0; j < nx; ++j) add_scaled(blk, ker(s * nx + j, k), n.action[j]);
        c.set_block(k * dn, s * dn, blk);
      }
    values = kernel_basis(c);
  }
  h.coords_ = SubspaceCoords<F>(values);

  if (dm == 0 || dn == 0) {
    for (std::size_t b = 0; b < values.cols(); ++b) h.basis_.push_back(Matrix<F>(f, dn, dm));
    return h;
  }
  auto sigma = solve(pi, Matrix<F>::identity(f, dm));
  if (!sigma) throw InvariantViolation("hom: generators do not generate the source");
  for (std::size_t b = 0; b < values.cols(); ++b) {
    Matrix<F> phi(f, dn, t * nx);
    for (std::size_t s = 0; s < t; ++s) {
      Matrix<F> v = values.block(s * dn, b, dn, 1);
      for (std::size_t j = 0; j < nx; ++j) phi.set_block(0, s * nx + j, n.action[j] * v);
    }
    h.basis_.push_back(phi * *sigma);
  }
  return h;
}

template <class F>
HomSpace<F> hom_space(const LeftModule<F>& m, const LeftModule<F>& n) {
  require_same_algebra(m, n, "hom_space");
  return hom_space_core(m.field(), plain_side(m), plain_side(n));
}

/// Independent solver of the intertwining equations f rho_M(e_i) = rho_N(e_i) f,
/// unknowns f(r, c) at index r * dim(M) + c.
template <class F>
std::vector<Matrix<F>> hom_space_direct(const LeftModule<F>& m, const LeftModule<F>& n) {
  require_same_algebra(m, n, "hom_space_direct");
  const F& f = m.field();
  std::size_t dm = m.dim(), dn = n.dim(), na = m.algebra().dim();
  Matrix<F> eq(f, na * dn * dm, dn * dm);
  for (std::size_t i = 0; i < na; ++i) {
    const auto& rm = m.action(i);
    const auto& rn = n.action(i);
    for (std::size_t r = 0; r < dn; ++r)
      for (std::size_t c = 0; c < dm; ++c) {
        std::size_t row = (i * dn + r) * dm + c;
        for (std::size_t l = 0; l < dm; ++l) f.add_mul(eq(row, r * dm + l), f.one(), rm(l, c));
        for (std::size_t l = 0; l < dn; ++l) f.sub_mul(eq(row, l * dm + c), f.one(), rn(r, l));
      }
  }
  Matrix<F> k = kernel_basis(eq);
  std::vector<Matrix<F>> out;
  for (std::size_t b = 0; b < k.cols(); ++b) {
    Matrix<F> g(f, dn, dm);
    for (std::size_t r = 0; r < dn; ++r)
      for (std::size_t c = 0; c < dm; ++c) g(r, c) = k(r * dm + c, b);
    out.push_back(std::move(g));
  }
  return out;
}

/// Hom over the contracted algebra together with the induced module structure
/// over `result`: basis index a * |n.residual| + b acts by
/// f |-> n.residual[b] f m.residual[a].
template <class F>
std::pair<HomSpace<F>, LeftModule<F>> hom_module_core(const Algebra<F>& result, const HomSide<F>& m,
                                                      const HomSide<F>& n) {
  const F& f = result.field();
  if (result.dim() != m.residual.size() * n.residual.size())
    throw DimensionMismatch("hom: result algebra does not match residual actions");
  HomSpace<F> h = hom_space_core(f, m, n);
  std::vector<Matrix<F>> acts;
  for (std::size_t a = 0; a < m.residual.size(); ++a)
    for (std::size_t b = 0; b < n.residual.size(); ++b) {
      Matrix<F> act(f, h.dim(), h.dim());
      for (std::size_t c = 0; c < h.dim(); ++c)
        act.set_block(0, c, h.coordinates(n.residual[b] * h[c] * m.residual[a]));
      acts.push_back(std::move(act));
    }
  LeftModule<F> mod = LeftModule<F>::trusted(result, h.dim(), std::move(acts));
  return {std::move(h), std::move(mod)};
}

/// Hom over X for m over X (x) Y and n over X (x) Z; result over Y^op (x) Z
/// with (y (x) z) . f = rho_n(1 (x) z) f rho_m(1 (x) y).
template <class F>
std::pair<HomSpace<F>, LeftModule<F>> hom_over_first(const LeftModule<F>& m, const LeftModule<F>& n) {
  const auto& [x1, y] = require_factors(m.algebra());
  const auto& [x2, z] = require_factors(n.algebra());
  if (!(x1 == x2)) throw AlgebraMismatch("hom over first factor: factors differ");
  return hom_module_core(tensor_algebra(opposite_algebra(y), z), first_side(m), first_side(n));
}

/// Hom over X for m over Y (x) X and n over Z (x) X; result over Y^op (x) Z.
template <class F>
std::pair<HomSpace<F>, LeftModule<F>> hom_over_second(const LeftModule<F>& m, const LeftModule<F>& n) {
  const auto& [y, x1] = require_factors(m.algebra());
  const auto& [z, x2] = require_factors(n.algebra());
  if (!(x1 == x2)) throw AlgebraMismatch("hom over second factor: factors differ");
  return hom_module_core(tensor_algebra(opposite_algebra(y), z), second_side(m), second_side(n));
}

/// Outcome of an isomorphism search.
template <class F>
struct IsoResult {
  enum class Status { found, absent, inconclusive } status = Status::inconclusive;
  std::optional<Matrix<F>> map;
  std::string reason;

  bool found() const { return status == Status::found; }
  bool absent() const { return status == Status::absent; }
  explicit operator bool() const { return found(); }
};

inline constexpr std::uint64_t kSearchSeed = 0x5eedc0deULL;

/// Deterministic search for an invertible intertwiner m -> n. Candidate maps
/// are tried in a fixed order (basis elements, then pseudorandom integer
/// combinations from a fixed seed). "absent" is only reported with a proof.
template <class F>
IsoResult<F> is_isomorphic(const LeftModule<F>& m, const LeftModule<F>& n, std::size_t tries = 24) {
  using R = IsoResult<F>;
  require_same_algebra(m, n, "is_isomorphic");
  const F& f = m.field();
  if (m.dim() != n.dim())
    return R{R::Status::absent, std::nullopt,
             "dimensions differ (" + std::to_string(m.dim()) + " vs " + std::to_string(n.dim()) + ")"};
  if (m.dim() == 0) return R{R::Status::found, Matrix<F>(f, 0, 0), "zero modules"};
  HomSpace<F> h = hom_space(m, n);
  if (h.dim() == 0) return R{R::Status::absent, std::nullopt, "Hom(M, N) = 0"};
  auto accept = [&](const Matrix<F>& g) { return rank(g) == m.dim() && is_module_hom(m, n, g); };
  for (std::size_t b = 0; b < h.dim(); ++b)
    if (accept(h[b])) return R{R::Status::found, h[b], "basis element " + std::to_string(b)};

  std::mt19937_64 rng(kSearchSeed);
  std::uint64_t p = f.characteristic();
  long long bound = p == 0 ? 1000LL * static_cast<long long>(m.dim() + 1) : static_cast<long long>(p);
  std::uniform_int_distribution<long long> coef(p == 0 ? -bound : 0, bound - (p == 0 ? 0 : 1));
  for (std::size_t t = 0; t < tries; ++t) {
    Matrix<F> x(f, h.dim(), 1);
    for (std::size_t b = 0; b < h.dim(); ++b) x(b, 0) = f.from_int(coef(rng));
    Matrix<F> g = h.combination(x);
    if (accept(g)) return R{R::Status::found, g, "combination search"};
  }

  // no candidate worked: look for a proof of non-isomorphism
  std::size_t end_m = hom_space(m, m).dim(), end_n = hom_space(n, n).dim(), back = hom_space(n, m).dim();
  if (end_m != h.dim() || end_n != h.dim() || back != h.dim())
    return R{R::Status::absent, std::nullopt,
             "Hom dimension invariants differ: dim Hom(M,N)=" + std::to_string(h.dim()) +
                 ", End(M)=" + std::to_string(end_m) + ", End(N)=" + std::to_string(end_n) +
                 ", Hom(N,M)=" + std::to_string(back)};
  if (p != 0) {
    // exhaustive over F_p combinations when small
    double total = 1;
    for (std::size_t b = 0; b < h.dim(); ++b) total *= static_cast<double>(p);
    if (total <= 65536) {
      std::vector<std::uint64_t> digit(h.dim(), 0);
      for (std::uint64_t idx = 0; idx < static_cast<std::uint64_t>(total); ++idx) {
        std::uint64_t rest = idx;
        Matrix<F> x(f, h.dim(), 1);
        for (std::size_t b = 0; b < h.dim(); ++b) {
          x(b, 0) = f.from_int(static_cast<long long>(rest % p));
          rest /= p;
        }
        Matrix<F> g = h.combination(x);
        if (accept(g)) return R{R::Status::found, g, "exhaustive search"};
      }
      return R{R::Status::absent, std::nullopt, "exhaustive search over all of Hom(M,N)"};
    }
  }
  return R{R::Status::inconclusive, std::nullopt, "no invertible element found among the tried combinations"};
}

}  // namespace hcat
