#pragma once

#include <climits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hcat/hom_complex.hpp"

namespace hcat {

/// How each stage of a resolution covers the kernel it has to hit.
enum class CoverMode {
  full,       // one generator per basis vector of the kernel
  greedy,     // generators picked greedily among kernel basis vectors
  minimal,    // lifts of a basis of K / (U + rad(A) K); needs the trace radical
  automatic,  // minimal when available, else greedy
};

inline const char* to_string(CoverMode m) {
  switch (m) {
    case CoverMode::full:
      return "full";
    case CoverMode::greedy:
      return "greedy";
    case CoverMode::minimal:
      return "minimal";
    case CoverMode::automatic:
      return "automatic";
  }
  return "?";
}

/// A kernel met while building a resolution below the support of the target.
template <class F>
struct Syzygy {
  int step = 0;              // the stage n at which it was covered
  LeftModule<F> module;      // kernel as a module
  bool projective = false;   // certified by a splitting of its cover
};

/// Quasi-isomorphism P -> X from a complex of projective modules.
template <class F>
struct Resolution {
  Complex<F> target;
  Complex<F> resolving;
  ChainMap<F> augmentation;
  int window = 0;
  CoverMode mode = CoverMode::automatic;
  bool complete = false;  // quasi-isomorphism in every degree
  int valid_from = 0;     // H^i(augmentation) is an isomorphism for i >= valid_from
  std::vector<Syzygy<F>> syzygies;

  bool valid_in(int i) const { return complete || i >= valid_from; }
  int length() const { return resolving.empty() ? 0 : target.lo() - resolving.lo(); }
};

namespace detail {

template <class F>
CoverMode effective_mode(const Algebra<F>& a, CoverMode m) {
  if (m == CoverMode::automatic) return a.has_trace_radical() ? CoverMode::minimal : CoverMode::greedy;
  if (m == CoverMode::minimal && !a.has_trace_radical())
    throw Error("minimal covers need characteristic 0 or larger than dim A");
  return m;
}

/// Replaces pairs of generators g, h by g + h while U + A.gens keeps the
/// dimension `target`. Over a basic algebra this collapses generators living
/// in different idempotent components, so free covers get close to minimal.
template <class F>
Matrix<F> merge_generators(const F& f, const std::vector<Matrix<F>>& actions, const Matrix<F>& gens, const Matrix<F>& u,
                           std::size_t target) {
  if (gens.cols() < 2) return gens;
  std::size_t n = gens.rows();
  auto spans = [&](const std::vector<Matrix<F>>& g) {
    EchelonBasis<F> span(f, n);
    for (std::size_t c = 0; c < u.cols(); ++c) span.insert_column(u, c);
    for (const auto& v : g)
      for (const auto& act : actions) {
        span.insert_column(act * v, 0);
        if (span.dim() == target) return true;
      }
    return span.dim() == target;
  };
  std::vector<Matrix<F>> merged;
  for (std::size_t c = 0; c < gens.cols(); ++c) {
    Matrix<F> g = gens.col(c);
    bool placed = false;
    for (std::size_t j = 0; j < merged.size() && !placed; ++j) {
      std::vector<Matrix<F>> trial = merged;
      trial[j] = trial[j] + g;
      for (std::size_t r = c + 1; r < gens.cols(); ++r) trial.push_back(gens.col(r));
      if (spans(trial)) {
        merged[j] = merged[j] + g;
        placed = true;
      }
    }
    if (!placed) merged.push_back(g);
  }
  return hstack_all(f, n, merged);
}

/// Columns of `kernel` (a basis of an invariant subspace K of a module with
/// the given actions) that generate K modulo the span of u.
template <class F>
Matrix<F> choose_generators(const Algebra<F>& a, const std::vector<Matrix<F>>& actions, const Matrix<F>& kernel,
                            const Matrix<F>& u, CoverMode mode) {
  const F& f = a.field();
  std::size_t n = kernel.rows();
  if (mode == CoverMode::full) {
    if (u.cols() == 0) return kernel;
    // basis of K modulo U
    EchelonBasis<F> span(f, n);
    for (std::size_t c = 0; c < u.cols(); ++c) span.insert_column(u, c);
    std::vector<std::size_t> keep;
    for (std::size_t c = 0; c < kernel.cols(); ++c)
      if (span.insert_column(kernel, c)) keep.push_back(c);
    return kernel.select_columns(keep);
  }
  EchelonBasis<F> span(f, n);
  for (std::size_t c = 0; c < u.cols(); ++c) span.insert_column(u, c);
  if (mode == CoverMode::minimal) {
    const Matrix<F>& rad = a.trace_radical();
    for (std::size_t r = 0; r < rad.cols(); ++r) {
      Matrix<F> act(f, n, n);
      for (std::size_t i = 0; i < a.dim(); ++i) add_scaled(act, rad(i, r), actions[i]);
      Matrix<F> img = act * kernel;
      for (std::size_t c = 0; c < img.cols(); ++c) span.insert_column(img, c);
    }
  }
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < kernel.cols(); ++c) {
    if (span.contains_column(kernel, c)) continue;
    keep.push_back(c);
    if (mode == CoverMode::minimal) {
      span.insert_column(kernel, c);
    } else {
      Matrix<F> g = kernel.col(c);
      for (const auto& act : actions) span.insert_column(act * g, 0);
    }
  }
  return merge_generators(f, actions, kernel.select_columns(keep), u, kernel.cols());
}

/// The module map A^t -> M sending the unit of copy s to column s of g.
template <class F>
Matrix<F> map_from_free(const LeftModule<F>& m, const Matrix<F>& g) {
  const auto& a = m.algebra();
  std::size_t n = a.dim();
  Matrix<F> out(m.field(), m.dim(), g.cols() * n);
  for (std::size_t s = 0; s < g.cols(); ++s) {
    Matrix<F> v = g.col(s);
    for (std::size_t j = 0; j < n; ++j) out.set_block(0, s * n + j, m.action(j) * v);
  }
  return out;
}

}  // namespace detail

/// Projectivity of m, certified by a module splitting of a free cover.
template <class F>
std::optional<Matrix<F>> projective_splitting(const LeftModule<F>& m) {
  const F& f = m.field();
  if (m.dim() == 0) return Matrix<F>(f, 0, 0);
  Matrix<F> g = detail::choose_generators(m.algebra(), m.actions(), Matrix<F>::identity(f, m.dim()),
                                          Matrix<F>(f, m.dim(), 0),
                                          detail::effective_mode(m.algebra(), CoverMode::automatic));
  auto cover = free_module(m.algebra(), g.cols());
  Matrix<F> pi = detail::map_from_free(m, g);
  // the cover's generators keep the Hom system small
  auto side = plain_side(m);
  side.generators = g;
  auto h = hom_space_core(f, side, plain_side(cover));
  // a module map s with pi s = id on the generators is a splitting
  std::size_t t = g.cols();
  Matrix<F> sys(f, m.dim() * t, h.dim());
  for (std::size_t b = 0; b < h.dim(); ++b) {
    Matrix<F> c = pi * h[b] * g;
    for (std::size_t r = 0; r < m.dim(); ++r)
      for (std::size_t cc = 0; cc < t; ++cc) sys(r * t + cc, b) = c(r, cc);
  }
  Matrix<F> rhs(f, m.dim() * t, 1);
  for (std::size_t r = 0; r < m.dim(); ++r)
    for (std::size_t cc = 0; cc < t; ++cc) rhs(r * t + cc, 0) = g(r, cc);
  auto x = solve(sys, rhs);
  if (!x) return std::nullopt;
  return h.combination(*x);
}

template <class F>
bool is_projective(const LeftModule<F>& m) {
  return m.free_rank().has_value() || projective_splitting(m).has_value();
}

/// Resolution of a bounded complex by projective modules, built from the top
/// degree down. Stage n adds P^n so that the cone of P -> X becomes exact at
/// degree n; stages run down to lo(X) - w unless the construction closes
/// earlier (a zero or projective kernel below the support of X).
template <class F>
Resolution<F> k_projective_resolution(const Complex<F>& x, int w, CoverMode mode = CoverMode::automatic,
                                      bool stop_at_projective = true) {
  if (w < 0) throw Error("window must be >= 0");
  const Algebra<F>& a = x.algebra();
  const F& f = a.field();
  CoverMode eff = detail::effective_mode(a, mode);
  Resolution<F> res;
  res.target = x;
  res.window = w;
  res.mode = mode;
  if (x.empty()) {
    res.resolving = Complex<F>::zero(a);
    res.augmentation = ChainMap<F>::zero(res.resolving, x);
    res.complete = true;
    res.valid_from = INT_MIN;
    return res;
  }
  bool single = x.trimmed().lo() == x.trimmed().hi() && !x.trimmed().empty();
  if (single && (x.trimmed().module(x.trimmed().lo()).free_rank() ||
                 (stop_at_projective && mode != CoverMode::full && is_projective(x.trimmed().module(x.trimmed().lo()))))) {
    // a projective module resolves itself
    res.resolving = x.trimmed();
    res.augmentation = ChainMap<F>::trusted(res.resolving, x, {Matrix<F>::identity(f, res.resolving.dim(res.resolving.lo()))},
                                            res.resolving.lo());
    res.complete = true;
    res.valid_from = INT_MIN;
    return res;
  }
  int top = x.hi(), bottom = x.lo() - w;
  // built terms, indexed by degree n (stored top-down, reversed at the end)
  std::vector<LeftModule<F>> terms;     // P^n
  std::vector<Matrix<F>> dp;            // d_P^n : P^n -> P^(n+1)
  std::vector<Matrix<F>> eps;           // eps^n : P^n -> X^n
  auto term = [&](int n) -> const LeftModule<F>* {
    int k = top - n;
    if (k < 0 || k >= static_cast<int>(terms.size())) return nullptr;
    return &terms[static_cast<std::size_t>(k)];
  };
  auto pdim = [&](int n) { return term(n) ? term(n)->dim() : std::size_t{0}; };
  bool closed = false;
  int n = top;
  for (; n >= bottom; --n) {
    std::size_t p1 = pdim(n + 1), p2 = pdim(n + 2), x0 = x.dim(n), x1 = x.dim(n + 1);
    // C^n = P^(n+1) + X^n  ->  C^(n+1) = P^(n+2) + X^(n+1)
    Matrix<F> dc(f, p2 + x1, p1 + x0);
    if (p1) {
      dc.set_block(0, 0, negate(dp[static_cast<std::size_t>(top - n - 1)]).block(0, 0, p2, p1));
      dc.set_block(p2, 0, eps[static_cast<std::size_t>(top - n - 1)]);
    }
    dc.set_block(p2, p1, x.d(n));
    std::vector<Matrix<F>> cact;
    for (std::size_t i = 0; i < a.dim(); ++i) {
      Matrix<F> blk(f, p1 + x0, p1 + x0);
      if (p1) blk.set_block(0, 0, term(n + 1)->action(i));
      blk.set_block(p1, p1, x.module(n).action(i));
      cact.push_back(std::move(blk));
    }
    Matrix<F> kern = kernel_basis(dc);
    Matrix<F> u(f, p1 + x0, x.dim(n - 1));
    u.set_block(p1, 0, x.d(n - 1));
    if (n < x.lo() && kern.cols() == 0) {
      closed = true;
      break;
    }
    LeftModule<F> cn = LeftModule<F>::trusted(a, p1 + x0, cact);
    Matrix<F> psi;  // P^n -> C^n
    LeftModule<F> pn;
    bool projective_term = false;
    if (n < x.lo()) {
      auto syz = submodule(cn, kern);
      Syzygy<F> rec{n, syz.module, false};
      if (stop_at_projective && mode != CoverMode::full) {
        rec.projective = projective_splitting(syz.module).has_value();
        if (rec.projective) {
          pn = syz.module;
          psi = syz.inclusion;
          projective_term = true;
        }
      }
      res.syzygies.push_back(std::move(rec));
    }
    if (!projective_term) {
      Matrix<F> gens = detail::choose_generators(a, cact, kern, u, eff);
      pn = free_module(a, gens.cols());
      psi = detail::map_from_free(cn, gens);
    }
    // psi = [-d_P^n ; eps^n]
    dp.push_back(negate(psi.block(0, 0, p1, pn.dim())));
    eps.push_back(psi.block(p1, 0, x0, pn.dim()));
    terms.push_back(pn);
    if (projective_term) {
      closed = true;
      break;
    }
  }
  // assemble bottom-up
  int lowest = top - static_cast<int>(terms.size()) + 1;
  while (closed && lowest < top && terms[static_cast<std::size_t>(top - lowest)].dim() == 0) ++lowest;
  std::vector<LeftModule<F>> mods;
  std::vector<Matrix<F>> diffs, comps;
  for (int k = lowest; k <= top; ++k) {
    std::size_t idx = static_cast<std::size_t>(top - k);
    mods.push_back(terms[idx]);
    if (k < top) diffs.push_back(dp[idx]);
    comps.push_back(eps[idx]);
  }
  res.resolving = Complex<F>::trusted(a, lowest, std::move(mods), std::move(diffs));
  res.augmentation = ChainMap<F>::trusted(res.resolving, x, std::move(comps), lowest);
  res.complete = closed;
  res.valid_from = closed ? INT_MIN : bottom + 1;
  return res;
}

template <class F>
Resolution<F> projective_resolution(const LeftModule<F>& m, int w, CoverMode mode = CoverMode::automatic,
                                    bool stop_at_projective = true) {
  return k_projective_resolution(Complex<F>::single(m, 0), w, mode, stop_at_projective);
}

// ---------------------------------------------------------------------------
// Duality and injective resolutions.

/// D(N)^i = D(N^(-i)) with transposed differentials; over the opposite algebra.
template <class F>
Complex<F> dual_complex(const Complex<F>& n) {
  Algebra<F> op = opposite_algebra(n.algebra());
  if (n.empty()) return Complex<F>::zero(op);
  std::vector<LeftModule<F>> mods;
  std::vector<Matrix<F>> diffs;
  for (int i = -n.hi(); i <= -n.lo(); ++i) {
    mods.push_back(dual_module(n.module(-i)));
    if (i < -n.lo()) diffs.push_back(n.d(-i - 1).transpose());
  }
  return Complex<F>::trusted(op, -n.hi(), std::move(mods), std::move(diffs));
}

/// D(f)^i = (f^(-i))^T : D(N) -> D(M) for f : M -> N.
template <class F>
ChainMap<F> dual_chain_map(const ChainMap<F>& f) {
  Complex<F> s = dual_complex(f.target()), t = dual_complex(f.source());
  std::vector<Matrix<F>> comps;
  for (int i = s.lo(); i <= s.hi(); ++i) comps.push_back(f(-i).transpose());
  return ChainMap<F>::trusted(s, t, std::move(comps), s.lo());
}

/// Quasi-isomorphism N -> I into a complex of injective modules.
template <class F>
struct InjectiveResolution {
  Complex<F> target;
  Complex<F> resolving;
  ChainMap<F> coaugmentation;  // N -> I
  int window = 0;
  bool complete = false;
  int valid_to = 0;  // H^i(coaugmentation) is an isomorphism for i <= valid_to
  Resolution<F> dual;  // the projective resolution of D(N) it came from

  bool valid_in(int i) const { return complete || i <= valid_to; }
};

template <class F>
InjectiveResolution<F> injective_resolution(const Complex<F>& n, int w, CoverMode mode = CoverMode::automatic) {
  InjectiveResolution<F> out;
  out.target = n;
  out.window = w;
  out.dual = k_projective_resolution(dual_complex(n), w, mode);
  out.resolving = dual_complex(out.dual.resolving).map_modules(
      [&](const LeftModule<F>& m) { return m.over(n.algebra()); });
  std::vector<Matrix<F>> comps;
  for (int i = n.lo(); i <= n.hi(); ++i) comps.push_back(out.dual.augmentation(-i).transpose());
  out.coaugmentation = ChainMap<F>::trusted(n, out.resolving, std::move(comps), n.lo());
  out.complete = out.dual.complete;
  out.valid_to = out.complete ? INT_MAX : -out.dual.valid_from;
  return out;
}

template <class F>
InjectiveResolution<F> injective_resolution(const LeftModule<F>& m, int w, CoverMode mode = CoverMode::automatic) {
  return injective_resolution(Complex<F>::single(m, 0), w, mode);
}

/// Finite length within the window, or nothing (inconclusive).
struct DimensionBound {
  std::optional<int> value;
  int window = 0;
  std::string evidence;
  bool finite() const { return value.has_value(); }
};

/// Projective dimension of a bounded complex within the window: the
/// resolution closes (zero or projective kernel) at most w steps below the
/// bottom of the complex. For a module the value is its projective dimension.
template <class F>
DimensionBound projective_dimension_within(const Complex<F>& x, int w, CoverMode mode = CoverMode::automatic) {
  DimensionBound b;
  b.window = w;
  if (x.trimmed().empty()) {
    b.value = 0;
    b.evidence = "zero complex";
    return b;
  }
  auto xt = x.trimmed();
  if (xt.lo() == xt.hi() && is_projective(xt.module(xt.lo()))) {
    b.value = -xt.lo();
    b.evidence = "projective module";
    return b;
  }
  auto r = k_projective_resolution(xt, w, mode);
  if (!r.complete) {
    b.evidence = "resolution did not close within " + std::to_string(w) + " steps";
    return b;
  }
  // length below the complex: -lowest nonzero degree of P
  auto p = r.resolving.trimmed();
  b.value = p.empty() ? 0 : -p.lo();
  b.evidence = "resolution closes; lowest term in degree " + std::to_string(p.empty() ? 0 : p.lo());
  return b;
}

/// Injective dimension of a bounded complex: the top degree of a bounded
/// injective resolution (for a module, its injective dimension).
template <class F>
DimensionBound injective_dimension_within(const Complex<F>& n, int w, CoverMode mode = CoverMode::automatic) {
  auto b = projective_dimension_within(dual_complex(n), w, mode);
  if (b.finite()) b.evidence = "dual over the opposite algebra: " + b.evidence;
  return b;
}

template <class F>
DimensionBound injective_dimension_within(const LeftModule<F>& m, int w, CoverMode mode = CoverMode::automatic) {
  return injective_dimension_within(Complex<F>::single(m, 0), w, mode);
}

// ---------------------------------------------------------------------------
// Lifting along quasi-isomorphisms.

/// For P a bounded complex of projectives, q : Y -> Z a quasi-isomorphism and
/// f : P -> Z, finds a chain map l : P -> Y with q l homotopic to f. Solved as
/// one linear system in (l, h) with f - q l = d h + h d.
template <class F>
std::optional<ChainMap<F>> lift_chain_map(const ChainMap<F>& f, const ChainMap<F>& q) {
  const Complex<F>& p = f.source();
  const F& fld = p.field();
  HomComplex<F> hy(p, q.source(), Contract::plain), hz(p, q.target(), Contract::plain);
  std::size_t ny = hy.complex().dim(0), nh = hz.complex().dim(-1), nz = hz.complex().dim(0);
  // q_*: Hom(P, Y)^0 -> Hom(P, Z)^0
  Matrix<F> qs(fld, nz, ny);
  for (std::size_t b = 0; b < ny; ++b) {
    Matrix<F> e = Matrix<F>::unit_vector(fld, ny, b);
    std::vector<std::pair<int, Matrix<F>>> comps;
    for (int j = p.lo(); j <= p.hi(); ++j) comps.emplace_back(j, q(j) * hy.component(0, e, j));
    qs.set_block(0, b, hz.encode(0, comps));
  }
  Matrix<F> dy = hy.complex().d(0);  // Hom(P,Y)^0 -> Hom(P,Y)^1
  Matrix<F> dz = hz.complex().d(-1);
  Matrix<F> sys(fld, dy.rows() + nz, ny + nh);
  sys.set_block(0, 0, dy);
  sys.set_block(dy.rows(), 0, qs);
  sys.set_block(dy.rows(), ny, dz);
  Matrix<F> rhs(fld, dy.rows() + nz, 1);
  rhs.set_block(dy.rows(), 0, hz.from_chain_map(0, f));
  auto x = solve(sys, rhs);
  if (!x) return std::nullopt;
  return hy.as_chain_map(0, x->block(0, 0, ny, 1));
}

}  // namespace hcat
