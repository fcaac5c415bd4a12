#pragma once

#include <string>
#include <vector>

#include "hcat/algebra.hpp"
#include "hcat/module.hpp"

namespace hcat::catalog {

template <class F>
Algebra<F> ground(const F& f) {
  return Algebra<F>::ground(f);
}

/// k[x]/(x^n) with basis 1, x, ..., x^(n-1).
template <class F>
Algebra<F> truncated_polynomial(const F& f, std::size_t n, std::string name = "") {
  if (n == 0) throw Error("kxn needs n >= 1");
  std::vector<StructureConstant<F>> c;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; i + j < n; ++j) c.push_back({i, j, i + j, f.one()});
  std::vector<typename F::value_type> unit(n, f.zero());
  unit[0] = f.one();
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(i == 0 ? "1" : i == 1 ? "x" : "x^" + std::to_string(i));
  if (name.empty()) name = "kxn:" + std::to_string(n);
  return Algebra<F>::from_constants(f, n, c, unit, labels, name);
}

template <class F>
Algebra<F> dual_numbers(const F& f) {
  return truncated_polynomial(f, 2, "dualnumbers");
}

/// Upper triangular 2x2 matrices, basis e11, e12, e22.
template <class F>
Algebra<F> triangular2(const F& f) {
  auto one = f.one();
  std::vector<StructureConstant<F>> c{{0, 0, 0, one}, {0, 1, 1, one}, {1, 2, 1, one}, {2, 2, 2, one}};
  return Algebra<F>::from_constants(f, 3, c, {one, f.zero(), one}, {"e11", "e12", "e22"}, "triangular2");
}

/// Full 2x2 matrices, basis e11, e12, e21, e22 (E_ab at index 2a + b).
template <class F>
Algebra<F> mat2(const F& f) {
  std::vector<StructureConstant<F>> c;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t d = 0; d < 2; ++d) c.push_back({2 * a + b, 2 * b + d, 2 * a + d, f.one()});
  return Algebra<F>::from_constants(f, 4, c, {f.one(), f.zero(), f.zero(), f.one()}, {"e11", "e12", "e21", "e22"},
                                    "mat2");
}

inline std::vector<std::string> algebra_names() { return {"k", "dualnumbers", "triangular2", "mat2", "kxn:<n>"}; }

/// Looks up a builtin algebra by catalog name.
template <class F>
Algebra<F> algebra(const F& f, const std::string& name) {
  if (name == "k") return ground(f);
  if (name == "dualnumbers") return dual_numbers(f);
  if (name == "triangular2") return triangular2(f);
  if (name == "mat2") return mat2(f);
  if (name.rfind("kxn:", 0) == 0) {
    std::size_t n = 0;
    try {
      n = std::stoul(name.substr(4));
    } catch (const std::exception&) {
      throw Error("bad catalog entry '" + name + "'");
    }
    return truncated_polynomial(f, n);
  }
  throw Error("unknown catalog algebra '" + name + "'");
}

// ---------------------------------------------------------------------------
// Named modules.

/// One-dimensional module on which e_i acts by chi[i].
template <class F>
LeftModule<F> character_module(const Algebra<F>& a, const std::vector<long long>& chi, std::string name) {
  std::vector<Matrix<F>> acts;
  for (std::size_t i = 0; i < a.dim(); ++i) acts.push_back(Matrix<F>::from_ints(a.field(), {{chi.at(i)}}));
  return LeftModule<F>::make(a, 1, std::move(acts), std::move(name));
}

/// D(A_A): the dual of the right regular module, a left A-module.
template <class F>
LeftModule<F> dual_regular(const Algebra<F>& a) {
  return dual_module(regular_module(opposite_algebra(a))).over(a).renamed("dual");
}

/// A / rad(A), where rad is the trace-form radical.
template <class F>
LeftModule<F> top_module(const Algebra<F>& a) {
  return quotient_module(regular_module(a), a.trace_radical()).module.renamed("top");
}

/// A simple submodule, found by shrinking cyclic submodules.
template <class F>
LeftModule<F> some_simple(const LeftModule<F>& m) {
  if (m.dim() == 0) throw Error("zero module has no simple submodule");
  const F& f = m.field();
  Matrix<F> w = Matrix<F>::identity(f, m.dim());
  for (bool shrunk = true; shrunk;) {
    shrunk = false;
    for (std::size_t c = 0; c < w.cols() && !shrunk; ++c)
      for (std::size_t i = 0; i <= m.algebra().dim() && !shrunk; ++i) {
        Matrix<F> v = i == 0 ? w.col(c) : m.action(i - 1) * w.col(c);
        if (v.is_zero()) continue;
        Matrix<F> span = generated_span(m, v);
        if (span.cols() < w.cols()) {
          w = span;
          shrunk = true;
        }
      }
  }
  return submodule(m, w).module.renamed("simple");
}

template <class F>
std::vector<std::string> module_names(const Algebra<F>& a) {
  std::vector<std::string> out{"regular", "dual", "top", "simple"};
  if (a.name() == "triangular2") {
    out.push_back("simple1");
    out.push_back("simple2");
  }
  return out;
}

/// Looks up a named module over a catalog algebra.
template <class F>
LeftModule<F> module(const Algebra<F>& a, const std::string& name) {
  const std::string& an = a.name();
  if (name == "regular") return regular_module(a).renamed("regular");
  if (name == "dual") return dual_regular(a);
  if (name == "top") return top_module(a);
  if (an == "triangular2") {
    if (name == "simple" || name == "simple1") return character_module(a, {1, 0, 0}, "simple1");
    if (name == "simple2") return character_module(a, {0, 0, 1}, "simple2");
  }
  if (name == "simple") {
    if (an == "mat2") {
      std::vector<Matrix<F>> acts;
      for (std::size_t ab = 0; ab < 4; ++ab) {
        Matrix<F> e(a.field(), 2, 2);
        e(ab / 2, ab % 2) = a.field().one();
        acts.push_back(e);
      }
      return LeftModule<F>::make(a, 2, std::move(acts), "simple");
    }
    if (an == "k" || an == "dualnumbers" || an.rfind("kxn:", 0) == 0) {
      std::vector<long long> chi(a.dim(), 0);
      chi[0] = 1;
      return character_module(a, chi, "simple");
    }
    return some_simple(top_module(a));
  }
  throw Error("unknown module '" + name + "' over " + an);
}

/// Bimodule with both actions through a one-dimensional character.
template <class F>
LeftModule<F> inflated_character(const Algebra<F>& a, const std::vector<long long>& chi, std::string name) {
  Algebra<F> ae = enveloping(a);
  std::vector<Matrix<F>> acts;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t k = 0; k < a.dim(); ++k)
      acts.push_back(Matrix<F>::from_ints(a.field(), {{chi.at(i) * chi.at(k)}}));
  return LeftModule<F>::make(ae, 1, std::move(acts), std::move(name));
}

/// Named bimodules that need no derived computation: A, R = D(A), and the
/// simple characters inflated to bimodules (S, or S1/S2 for triangular2).
template <class F>
LeftModule<F> bimodule(const Algebra<F>& a, const std::string& name) {
  if (name == "A") return regular_bimodule(a);
  if (name == "R") return dual_bimodule(a);
  const std::string& an = a.name();
  if (an == "triangular2") {
    if (name == "S" || name == "S1") return inflated_character(a, {1, 0, 0}, "S1");
    if (name == "S2") return inflated_character(a, {0, 0, 1}, "S2");
  }
  if (name == "S" && (an == "k" || an == "dualnumbers" || an.rfind("kxn:", 0) == 0)) {
    std::vector<long long> chi(a.dim(), 0);
    chi[0] = 1;
    return inflated_character(a, chi, "S");
  }
  throw Error("unknown bimodule '" + name + "' over " + an);
}

}  // namespace hcat::catalog
