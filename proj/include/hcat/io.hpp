#pragma once

#include <algorithm>
#include <cctype>
#include <functional>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hcat/catalog.hpp"
#include "hcat/complex.hpp"

// Line-oriented text formats. Every format shares the lexical rules:
// '#' starts a comment, ';' separates statements on one line, tokens are
// separated by whitespace. Scalars are field literals ("-3/7", "5").

namespace hcat::io {

struct Statement {
  int line = 0;
  std::vector<std::string> tokens;
  std::string text;  // the statement with comments removed
};

inline std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

inline std::vector<Statement> statements(const std::string& text) {
  std::vector<Statement> out;
  std::istringstream in(text);
  std::string line;
  for (int no = 1; std::getline(in, line); ++no) {
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::size_t start = 0;
    while (start <= line.size()) {
      auto semi = line.find(';', start);
      std::string part = line.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
      auto toks = split_ws(part);
      if (!toks.empty()) out.push_back({no, std::move(toks), part});
      if (semi == std::string::npos) break;
      start = semi + 1;
    }
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline bool has_suffix(const std::string& s, const std::string& suf) {
  return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

/// "q" for the rationals, "f<p>" for F_p.
inline std::string field_tag(const Rationals&) { return "q"; }
inline std::string field_tag(const PrimeField& f) { return "f" + std::to_string(f.p); }

template <class F>
typename F::value_type scalar(const F& f, const std::string& tok, int line) {
  try {
    return f.parse(tok);
  } catch (const ParseError& e) {
    throw ParseError(e.what(), line);
  }
}

inline bool looks_numeric(const std::string& t) {
  if (t.empty()) return false;
  std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
  return i < t.size() && t[i] >= '0' && t[i] <= '9';
}

inline std::size_t count_arg(const Statement& s, std::size_t pos, const char* what) {
  if (s.tokens.size() <= pos) throw ParseError(std::string("missing ") + what, s.line);
  const auto& t = s.tokens[pos];
  if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw ParseError(std::string("expected a non-negative integer for ") + what + ", got '" + t + "'", s.line);
  return std::stoul(t);
}

inline void expect_arity(const Statement& s, std::size_t n) {
  if (s.tokens.size() != n)
    throw ParseError("'" + s.tokens[0] + "' takes " + std::to_string(n - 1) + " argument(s)", s.line);
}

// ---------------------------------------------------------------------------
// .alg: structure constants.
//
//   algebra triangular2
//   field q                 # optional; must agree with the requested field
//   dim 3
//   labels e11 e12 e22      # optional
//   unit 1 0 1
//   c e11 e11 e11 1         # e_i e_j = ... + v e_k; indices or labels
//
// Omitted constants are zero; a repeated (i, j, k) is an error.

template <class F>
struct AlgebraSpec {
  std::string name;
  std::optional<std::string> field;
  std::size_t dim = 0;
  std::vector<std::string> labels;
  std::vector<typename F::value_type> unit;
  std::vector<StructureConstant<F>> constants;

  Algebra<F> build(const F& f) const { return Algebra<F>::from_constants(f, dim, constants, unit, labels, name); }
};

namespace detail {

inline std::size_t basis_index(const std::vector<std::string>& labels, std::size_t dim, const std::string& tok,
                               int line) {
  auto it = std::find(labels.begin(), labels.end(), tok);
  if (it != labels.end()) return static_cast<std::size_t>(it - labels.begin());
  if (!tok.empty() && std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    std::size_t i = std::stoul(tok);
    if (i < dim) return i;
    throw ParseError("basis index " + tok + " out of range (dim " + std::to_string(dim) + ")", line);
  }
  throw ParseError("unknown basis element '" + tok + "'", line);
}

template <class F>
void check_field(const F& f, const std::string& tag, int line) {
  if (tag != field_tag(f))
    throw ParseError("file declares field '" + tag + "' but the computation runs over " + f.name(), line);
}

}  // namespace detail

template <class F>
AlgebraSpec<F> parse_structure_constants(const std::string& text, const F& f) {
  AlgebraSpec<F> spec;
  bool have_dim = false;
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
  for (const auto& s : statements(text)) {
    const auto& k = s.tokens[0];
    if (k == "algebra") {
      expect_arity(s, 2);
      spec.name = s.tokens[1];
    } else if (k == "field") {
      expect_arity(s, 2);
      spec.field = s.tokens[1];
      detail::check_field(f, s.tokens[1], s.line);
    } else if (k == "dim") {
      expect_arity(s, 2);
      if (have_dim) throw ParseError("dim given twice", s.line);
      spec.dim = count_arg(s, 1, "dim");
      if (spec.dim == 0) throw ParseError("dimension must be positive", s.line);
      have_dim = true;
    } else if (!have_dim) {
      throw ParseError("'" + k + "' before dim", s.line);
    } else if (k == "labels") {
      expect_arity(s, spec.dim + 1);
      spec.labels.assign(s.tokens.begin() + 1, s.tokens.end());
      std::set<std::string> u(spec.labels.begin(), spec.labels.end());
      if (u.size() != spec.labels.size()) throw ParseError("repeated label", s.line);
    } else if (k == "unit") {
      expect_arity(s, spec.dim + 1);
      spec.unit.clear();
      for (std::size_t i = 1; i < s.tokens.size(); ++i) spec.unit.push_back(scalar(f, s.tokens[i], s.line));
    } else if (k == "c") {
      expect_arity(s, 5);
      std::size_t i = detail::basis_index(spec.labels, spec.dim, s.tokens[1], s.line);
      std::size_t j = detail::basis_index(spec.labels, spec.dim, s.tokens[2], s.line);
      std::size_t kk = detail::basis_index(spec.labels, spec.dim, s.tokens[3], s.line);
      if (!seen.insert({i, j, kk}).second)
        throw ParseError("duplicate constant (" + std::to_string(i) + ", " + std::to_string(j) + ", " +
                             std::to_string(kk) + ")",
                         s.line);
      auto v = scalar(f, s.tokens[4], s.line);
      if (!f.is_zero(v)) spec.constants.push_back({i, j, kk, v});
    } else {
      throw ParseError("unknown statement '" + k + "'", s.line);
    }
  }
  if (!have_dim) throw ParseError("missing dim", 0);
  if (spec.unit.empty()) throw ParseError("missing unit", 0);
  return spec;
}

template <class F>
std::string emit_structure_constants(const Algebra<F>& a) {
  const F& f = a.field();
  std::ostringstream out;
  if (!a.name().empty()) out << "algebra " << a.name() << "\n";
  out << "field " << field_tag(f) << "\n";
  out << "dim " << a.dim() << "\n";
  out << "labels";
  for (const auto& l : a.labels()) out << " " << l;
  out << "\nunit";
  for (std::size_t i = 0; i < a.dim(); ++i) out << " " << f.to_string(a.unit()(i, 0));
  out << "\n";
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      for (std::size_t k = 0; k < a.dim(); ++k)
        if (!f.is_zero(a.constant(i, j, k)))
          out << "c " << a.labels()[i] << " " << a.labels()[j] << " " << a.labels()[k] << " "
              << f.to_string(a.constant(i, j, k)) << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// .quiver: path algebra modulo relations.
//
//   quiver A2
//   vertex 1 2
//   arrow a: 1 -> 2
//   relations: x.x, a.b - 2 c      # comma separated; may repeat
//   cap 20
//
// Paths compose left to right: a.b is a followed by b, and the product of
// paths p, q is p.q when p ends where q starts, zero otherwise. e_v is the
// trivial path at v. Relations must be combinations of parallel paths.

struct QuiverArrow {
  std::string name, source, target;
};

template <class F>
struct QuiverRelation {
  int line = 0;
  std::vector<std::pair<typename F::value_type, std::vector<std::string>>> terms;  // coefficient, word
};

template <class F>
struct QuiverSpec {
  std::string name;
  std::vector<std::string> vertices;
  std::vector<QuiverArrow> arrows;
  std::vector<QuiverRelation<F>> relations;
  std::size_t cap = 64;
};

namespace detail {

template <class F>
QuiverRelation<F> parse_relation(const F& f, const std::string& src, int line) {
  QuiverRelation<F> r;
  r.line = line;
  std::size_t p = 0;
  auto skip = [&] {
    while (p < src.size() && std::isspace(static_cast<unsigned char>(src[p]))) ++p;
  };
  auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; };
  bool first = true;
  while (true) {
    skip();
    if (p >= src.size()) break;
    bool neg = false;
    if (src[p] == '+' || src[p] == '-') {
      neg = src[p] == '-';
      ++p;
      skip();
    } else if (!first) {
      throw ParseError("expected '+' or '-' in relation", line);
    }
    first = false;
    auto coef = f.one();
    if (p < src.size() && std::isdigit(static_cast<unsigned char>(src[p]))) {
      std::size_t q = p;
      while (q < src.size() && (std::isdigit(static_cast<unsigned char>(src[q])) || src[q] == '/')) ++q;
      coef = scalar(f, src.substr(p, q - p), line);
      p = q;
      skip();
      if (p < src.size() && src[p] == '*') {
        ++p;
        skip();
      }
    }
    std::vector<std::string> word;
    while (true) {
      std::size_t q = p;
      while (q < src.size() && ident_char(src[q])) ++q;
      if (q == p) throw ParseError("expected a path in relation near '" + src.substr(p) + "'", line);
      word.push_back(src.substr(p, q - p));
      p = q;
      if (p < src.size() && src[p] == '.') {
        ++p;
        continue;
      }
      break;
    }
    r.terms.push_back({neg ? f.neg(coef) : coef, std::move(word)});
  }
  if (r.terms.empty()) throw ParseError("empty relation", line);
  return r;
}

}  // namespace detail

template <class F>
QuiverSpec<F> parse_quiver(const std::string& text, const F& f) {
  QuiverSpec<F> q;
  std::set<std::string> names;
  for (const auto& s : statements(text)) {
    const auto& k = s.tokens[0];
    if (k == "quiver") {
      expect_arity(s, 2);
      q.name = s.tokens[1];
    } else if (k == "field") {
      expect_arity(s, 2);
      detail::check_field(f, s.tokens[1], s.line);
    } else if (k == "vertex" || k == "vertices") {
      if (s.tokens.size() < 2) throw ParseError("vertex needs at least one name", s.line);
      for (std::size_t i = 1; i < s.tokens.size(); ++i) {
        if (std::find(q.vertices.begin(), q.vertices.end(), s.tokens[i]) != q.vertices.end())
          throw ParseError("vertex '" + s.tokens[i] + "' declared twice", s.line);
        q.vertices.push_back(s.tokens[i]);
      }
    } else if (k == "arrow") {
      // arrow a: u -> v, with or without spaces around ':' and '->'
      std::string rest = s.text.substr(s.text.find("arrow") + 5);
      auto colon = rest.find(':'), to = rest.find("->");
      if (colon == std::string::npos || to == std::string::npos || to < colon)
        throw ParseError("expected 'arrow NAME: SOURCE -> TARGET'", s.line);
      auto nm = split_ws(rest.substr(0, colon)), sv = split_ws(rest.substr(colon + 1, to - colon - 1)),
           tv = split_ws(rest.substr(to + 2));
      if (nm.size() != 1 || sv.size() != 1 || tv.size() != 1)
        throw ParseError("expected 'arrow NAME: SOURCE -> TARGET'", s.line);
      for (const auto& v : {sv[0], tv[0]})
        if (std::find(q.vertices.begin(), q.vertices.end(), v) == q.vertices.end())
          throw ParseError("unknown vertex '" + v + "'", s.line);
      if (!names.insert(nm[0]).second) throw ParseError("arrow '" + nm[0] + "' declared twice", s.line);
      if (nm[0].rfind("e_", 0) == 0) throw ParseError("arrow names starting with 'e_' are reserved", s.line);
      q.arrows.push_back({nm[0], sv[0], tv[0]});
    } else if (k == "relations:" || k == "relations" || k.rfind("relations:", 0) == 0) {
      std::string rest = s.text.substr(s.text.find("relations") + 9);
      auto b = rest.find_first_not_of(" \t");
      if (b != std::string::npos && rest[b] == ':') rest = rest.substr(b + 1);
      std::size_t start = 0;
      while (true) {
        auto comma = rest.find(',', start);
        std::string part = rest.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!split_ws(part).empty()) q.relations.push_back(detail::parse_relation(f, part, s.line));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
    } else if (k == "cap") {
      expect_arity(s, 2);
      q.cap = count_arg(s, 1, "cap");
    } else {
      throw ParseError("unknown statement '" + k + "'", s.line);
    }
  }
  if (q.vertices.empty()) throw ParseError("quiver has no vertices", 0);
  return q;
}

namespace detail {

struct Path {
  std::size_t source, target;
  std::vector<std::size_t> arrows;
};

}  // namespace detail

/// kQ / (I + J^L) for the first L at which paths of length L - 1 vanish
/// modulo the relations. Errors if the dimension passes the cap first.
template <class F>
Algebra<F> quiver_algebra(const QuiverSpec<F>& q, const F& f, std::size_t path_limit = 4096) {
  using detail::Path;
  std::map<std::string, std::size_t> vid, aid;
  for (std::size_t i = 0; i < q.vertices.size(); ++i) vid[q.vertices[i]] = i;
  for (std::size_t i = 0; i < q.arrows.size(); ++i) aid[q.arrows[i].name] = i;
  std::vector<std::size_t> asrc, atgt;
  for (const auto& a : q.arrows) {
    asrc.push_back(vid.at(a.source));
    atgt.push_back(vid.at(a.target));
  }

  // relations as (source, target, terms over arrow sequences)
  struct Rel {
    std::size_t s, t;
    std::vector<std::pair<typename F::value_type, Path>> terms;
  };
  std::vector<Rel> rels;
  for (const auto& r : q.relations) {
    Rel rel{};
    bool first = true;
    for (const auto& [c, word] : r.terms) {
      Path p{};
      bool started = false;
      for (const auto& w : word) {
        if (auto it = aid.find(w); it != aid.end()) {
          std::size_t a = it->second;
          if (started && p.target != asrc[a])
            throw ParseError("relation composes '" + w + "' after a path ending elsewhere", r.line);
          if (!started) p.source = asrc[a];
          p.arrows.push_back(a);
          p.target = atgt[a];
          started = true;
        } else if (w.rfind("e_", 0) == 0 && vid.count(w.substr(2))) {
          std::size_t v = vid.at(w.substr(2));
          if (started && p.target != v) throw ParseError("relation composes with a mismatched idempotent " + w, r.line);
          if (!started) p.source = p.target = v;
          started = true;
        } else {
          throw ParseError("unknown arrow '" + w + "' in relation", r.line);
        }
      }
      if (first) {
        rel.s = p.source;
        rel.t = p.target;
        first = false;
      } else if (p.source != rel.s || p.target != rel.t) {
        throw ParseError("relation mixes paths with different endpoints", r.line);
      }
      rel.terms.push_back({c, p});
    }
    rels.push_back(std::move(rel));
  }

  for (std::size_t len = 1;; ++len) {
    // paths of length < len, ordered by length
    std::vector<Path> paths;
    for (std::size_t v = 0; v < q.vertices.size(); ++v) paths.push_back({v, v, {}});
    std::size_t layer_begin = 0;
    for (std::size_t l = 1; l < len; ++l) {
      std::size_t layer_end = paths.size();
      for (std::size_t i = layer_begin; i < layer_end; ++i)
        for (std::size_t a = 0; a < q.arrows.size(); ++a)
          if (asrc[a] == paths[i].target) {
            Path p = paths[i];
            p.arrows.push_back(a);
            p.target = atgt[a];
            paths.push_back(std::move(p));
            if (paths.size() > path_limit)
              throw Error("quiver: more than " + std::to_string(path_limit) + " paths below length " +
                          std::to_string(len) + " before the relations close; dimension cap " +
                          std::to_string(q.cap) + " cannot be certified");
          }
      layer_begin = layer_end;
    }
    std::map<std::vector<std::size_t>, std::size_t> index;  // arrows -> path, for paths of positive length
    std::vector<std::size_t> trivial(q.vertices.size());
    for (std::size_t i = 0; i < paths.size(); ++i) {
      if (paths[i].arrows.empty())
        trivial[paths[i].source] = i;
      else
        index[paths[i].arrows] = i;
    }
    std::size_t np = paths.size();
    // columns are reversed so that row reduction eliminates long paths first
    auto col = [np](std::size_t i) { return np - 1 - i; };
    auto concat = [&](const Path& a, const Path& b) -> std::optional<std::size_t> {
      if (a.target != b.source) return std::nullopt;
      if (a.arrows.size() + b.arrows.size() >= len) return std::nullopt;
      if (a.arrows.empty() && b.arrows.empty()) return trivial[a.source];
      std::vector<std::size_t> w = a.arrows;
      w.insert(w.end(), b.arrows.begin(), b.arrows.end());
      return index.at(w);
    };
    // the two-sided ideal: relations closed under multiplication by arrows
    using V = std::vector<typename F::value_type>;
    EchelonBasis<F> ideal(f, np);
    std::vector<V> queue;
    auto offer = [&](V v) {
      V copy = v;
      if (ideal.insert(std::move(v))) queue.push_back(std::move(copy));
    };
    for (const auto& r : rels) {
      V v(np, f.zero());
      for (const auto& [c, w] : r.terms) {
        auto pw = concat(paths[trivial[r.s]], w);
        if (pw) v[col(*pw)] = f.add(v[col(*pw)], c);
      }
      offer(std::move(v));
    }
    std::vector<Path> arrow_paths;
    for (std::size_t a = 0; a < q.arrows.size(); ++a) arrow_paths.push_back({asrc[a], atgt[a], {a}});
    while (!queue.empty()) {
      V v = std::move(queue.back());
      queue.pop_back();
      for (const auto& ap : arrow_paths)
        for (int side = 0; side < 2; ++side) {
          V w(np, f.zero());
          bool any = false;
          for (std::size_t c = 0; c < np; ++c) {
            if (f.is_zero(v[c])) continue;
            const Path& p = paths[np - 1 - c];
            auto prod = side == 0 ? concat(ap, p) : concat(p, ap);
            if (!prod) continue;
            w[col(*prod)] = f.add(w[col(*prod)], v[c]);
            any = true;
          }
          if (any) offer(std::move(w));
        }
    }
    // reduction against the echelon basis clears every pivot, so the
    // surviving coordinates are the non-pivot columns
    std::vector<bool> pivot(np, false);
    for (auto p : ideal.pivots()) pivot[p] = true;
    std::size_t d = np - ideal.dim();
    auto reduced = [&](std::size_t path) {
      V v(np, f.zero());
      v[col(path)] = f.one();
      ideal.reduce(v);
      return v;
    };
    // stable once every path of length len - 1 vanishes
    bool stable = len > 1;
    for (std::size_t i = layer_begin; i < np && stable; ++i) {
      auto v = reduced(i);
      if (!std::all_of(v.begin(), v.end(), [&](const auto& x) { return f.is_zero(x); })) stable = false;
    }
    if (!stable) {
      if (d > q.cap)
        throw Error("quiver: dimension exceeds cap " + std::to_string(q.cap) + " (relations are not admissible?)");
      continue;
    }
    if (d > q.cap) throw Error("quiver: dimension " + std::to_string(d) + " exceeds cap " + std::to_string(q.cap));
    std::vector<std::size_t> basis;  // surviving paths in ascending path order
    for (std::size_t i = 0; i < np; ++i)
      if (!pivot[col(i)]) basis.push_back(i);
    auto coords = [&](std::size_t path) {
      auto v = reduced(path);
      V out(d, f.zero());
      for (std::size_t b = 0; b < d; ++b) out[b] = v[col(basis[b])];
      return out;
    };
    std::vector<std::string> labels;
    for (auto i : basis) {
      if (paths[i].arrows.empty()) {
        labels.push_back("e_" + q.vertices[paths[i].source]);
      } else {
        std::string l;
        for (auto a : paths[i].arrows) l += (l.empty() ? "" : ".") + q.arrows[a].name;
        labels.push_back(l);
      }
    }
    std::vector<StructureConstant<F>> consts;
    for (std::size_t x = 0; x < d; ++x)
      for (std::size_t y = 0; y < d; ++y) {
        auto xy = concat(paths[basis[x]], paths[basis[y]]);
        if (!xy) continue;
        auto c = coords(*xy);
        for (std::size_t z = 0; z < d; ++z)
          if (!f.is_zero(c[z])) consts.push_back({x, y, z, c[z]});
      }
    std::vector<typename F::value_type> unit(d, f.zero());
    for (std::size_t v = 0; v < q.vertices.size(); ++v) {
      auto c = coords(trivial[v]);
      for (std::size_t z = 0; z < d; ++z) unit[z] = f.add(unit[z], c[z]);
    }
    return Algebra<F>::from_constants(f, d, consts, unit, labels, q.name.empty() ? "quiver" : q.name);
  }
}

// ---------------------------------------------------------------------------
// Identifying two presentations of one algebra.

/// A basis permutation sigma (a's e_i -> b's e_sigma(i)) that carries the
/// structure constants and unit of a onto those of b, if one exists.
template <class F>
std::optional<std::vector<std::size_t>> basis_permutation(const Algebra<F>& a, const Algebra<F>& b) {
  const F& f = a.field();
  std::size_t n = a.dim();
  if (b.dim() != n || !(a.field() == b.field())) return std::nullopt;
  std::vector<std::size_t> sigma(n);
  std::vector<bool> used(n, false);
  // every triple among the first m indices that involves the newest one
  auto consistent = [&](std::size_t m) {
    std::size_t i = m - 1;
    if (!f.equal(a.unit()(i, 0), b.unit()(sigma[i], 0))) return false;
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t y = 0; y < m; ++y)
        for (std::size_t z = 0; z < m; ++z) {
          if (x != i && y != i && z != i) continue;
          if (!f.equal(a.constant(x, y, z), b.constant(sigma[x], sigma[y], sigma[z]))) return false;
        }
    return true;
  };
  std::function<bool(std::size_t)> go = [&](std::size_t m) {
    if (m == n) return true;
    for (std::size_t c = 0; c < n; ++c) {
      if (used[c]) continue;
      sigma[m] = c;
      used[c] = true;
      if (consistent(m + 1) && go(m + 1)) return true;
      used[c] = false;
    }
    return false;
  };
  if (!go(0)) return std::nullopt;
  return sigma;
}

/// The b-module n seen over a through the algebra map phi: a -> b, given as
/// the matrix whose column i is phi(e_i) in b's basis.
template <class F>
LeftModule<F> restrict_along(const LeftModule<F>& n, const Algebra<F>& a, const Matrix<F>& phi) {
  std::vector<Matrix<F>> acts;
  for (std::size_t i = 0; i < a.dim(); ++i) acts.push_back(n.action_of(phi.col(i)));
  return LeftModule<F>::make(a, n.dim(), std::move(acts), n.name());
}

template <class F>
Matrix<F> permutation_matrix(const F& f, const std::vector<std::size_t>& sigma) {
  Matrix<F> p(f, sigma.size(), sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) p(sigma[i], i) = f.one();
  return p;
}

/// Certificate that two presentations agree: the identification phi and an
/// intertwiner from a's regular module to b's regular module pulled back
/// along phi.
template <class F>
struct PresentationCertificate {
  std::vector<std::size_t> sigma;
  Matrix<F> phi;
  LeftModule<F> source, target;  // regular(a), restrict_along(regular(b), phi)
  Matrix<F> iso;
};

template <class F>
std::optional<PresentationCertificate<F>> identify_presentations(const Algebra<F>& a, const Algebra<F>& b) {
  auto sigma = basis_permutation(a, b);
  if (!sigma) return std::nullopt;
  PresentationCertificate<F> c;
  c.sigma = *sigma;
  c.phi = permutation_matrix(a.field(), *sigma);
  c.source = regular_module(a);
  c.target = restrict_along(regular_module(b), a, c.phi);
  auto iso = is_isomorphic(c.source, c.target);
  if (!iso.found()) return std::nullopt;
  c.iso = *iso.map;
  return c;
}

// ---------------------------------------------------------------------------
// .mod: modules and bimodules.
//
//   module simple1            # or: bimodule R
//   dim 1
//   action e11                # a matrix follows, one row per statement
//     1
//   action e12 zero           # shorthand: zero | identity
//   action e22 zero
//
// A bimodule lists 'left <label>' for the action of A and 'right <label>'
// for right multiplication by the basis element; unspecified actions are
// errors, except that the unit may be omitted.

namespace detail {

template <class F>
struct ModuleBody {
  bool bimodule = false;
  std::string name;
  std::optional<std::size_t> dim;
  std::map<std::pair<int, std::size_t>, Matrix<F>> acts;  // (side, index); side 0 plain/left, 1 right
};

template <class F>
LeftModule<F> body_to_module(const ModuleBody<F>& b, const Algebra<F>& a, int line) {
  const F& f = a.field();
  if (!b.dim) throw ParseError("module without dim", line);
  std::size_t d = *b.dim;
  auto get = [&](int side, std::size_t i) {
    auto it = b.acts.find({side, i});
    if (it != b.acts.end()) return it->second;
    // the unit acts as the identity
    Matrix<F> e(f, a.dim(), 1);
    e(i, 0) = f.one();
    if (e == a.unit()) return Matrix<F>::identity(f, d);
    throw ParseError(std::string("missing ") + (b.bimodule ? (side ? "right " : "left ") : "") + "action of '" +
                         a.labels()[i] + "'",
                     line);
  };
  if (!b.bimodule) {
    std::vector<Matrix<F>> acts;
    for (std::size_t i = 0; i < a.dim(); ++i) acts.push_back(get(0, i));
    try {
      return LeftModule<F>::make(a, d, std::move(acts), b.name);
    } catch (const InvariantViolation& e) {
      throw ParseError(std::string("not a module: ") + e.what(), line);
    }
  }
  std::vector<Matrix<F>> lx, ry;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    lx.push_back(get(0, i));
    ry.push_back(get(1, i));
  }
  try {
    return from_marginals(enveloping(a), lx, ry, b.name);
  } catch (const InvariantViolation& e) {
    throw ParseError(std::string("not a bimodule: ") + e.what(), line);
  }
}

/// Consumes module statements from s[pos...] until a statement whose keyword
/// is in `stop`. Returns the index of the first unconsumed statement.
template <class F>
std::size_t parse_module_body(const std::vector<Statement>& s, std::size_t pos, const Algebra<F>& a, ModuleBody<F>& b,
                              const std::set<std::string>& stop) {
  const F& f = a.field();
  Matrix<F>* current = nullptr;
  std::size_t rows = 0;
  int current_line = 0;
  auto finish = [&] {
    if (current && rows != current->rows())
      throw ParseError("matrix has " + std::to_string(rows) + " rows, expected " + std::to_string(current->rows()),
                       current_line);
    current = nullptr;
  };
  for (; pos < s.size(); ++pos) {
    const auto& st = s[pos];
    const auto& k = st.tokens[0];
    if (stop.count(k)) break;
    if (looks_numeric(k)) {
      if (!current) throw ParseError("matrix row outside an action", st.line);
      if (rows >= current->rows()) throw ParseError("too many matrix rows", st.line);
      if (st.tokens.size() != current->cols())
        throw ParseError("row has " + std::to_string(st.tokens.size()) + " entries, expected " +
                             std::to_string(current->cols()),
                         st.line);
      for (std::size_t c = 0; c < st.tokens.size(); ++c) (*current)(rows, c) = scalar(f, st.tokens[c], st.line);
      ++rows;
      continue;
    }
    finish();
    if (k == "dim") {
      expect_arity(st, 2);
      if (b.dim) throw ParseError("dim given twice", st.line);
      b.dim = count_arg(st, 1, "dim");
    } else if (k == "action" || k == "left" || k == "right") {
      if (!b.dim) throw ParseError("'" + k + "' before dim", st.line);
      if (k == "action" && b.bimodule) throw ParseError("bimodules use 'left' and 'right'", st.line);
      if (k != "action" && !b.bimodule) throw ParseError("'" + k + "' needs a bimodule header", st.line);
      if (st.tokens.size() < 2 || st.tokens.size() > 3) throw ParseError("expected '" + k + " LABEL [zero|identity]'", st.line);
      int side = k == "right" ? 1 : 0;
      std::size_t i = basis_index(a.labels(), a.dim(), st.tokens[1], st.line);
      if (b.acts.count({side, i})) throw ParseError("action of '" + st.tokens[1] + "' given twice", st.line);
      auto& m = b.acts[{side, i}] = Matrix<F>(f, *b.dim, *b.dim);
      if (st.tokens.size() == 3) {
        if (st.tokens[2] == "identity")
          m = Matrix<F>::identity(f, *b.dim);
        else if (st.tokens[2] != "zero")
          throw ParseError("expected 'zero' or 'identity', got '" + st.tokens[2] + "'", st.line);
      } else {
        current = &m;
        rows = 0;
        current_line = st.line;
      }
    } else {
      throw ParseError("unknown statement '" + k + "'", st.line);
    }
  }
  finish();
  return pos;
}

template <class F>
Matrix<F> parse_rows(const std::vector<Statement>& s, std::size_t& pos, const F& f, std::size_t r, std::size_t c,
                     int line) {
  Matrix<F> m(f, r, c);
  std::size_t rows = 0;
  for (; pos < s.size() && looks_numeric(s[pos].tokens[0]); ++pos, ++rows) {
    const auto& st = s[pos];
    if (rows >= r) throw ParseError("too many matrix rows", st.line);
    if (st.tokens.size() != c)
      throw ParseError("row has " + std::to_string(st.tokens.size()) + " entries, expected " + std::to_string(c),
                       st.line);
    for (std::size_t j = 0; j < c; ++j) m(rows, j) = scalar(f, st.tokens[j], st.line);
  }
  if (rows != r && r * c != 0)
    throw ParseError("matrix has " + std::to_string(rows) + " rows, expected " + std::to_string(r), line);
  return m;
}

}  // namespace detail

/// Parses a .mod text over a (bimodules come back over enveloping(a)).
template <class F>
LeftModule<F> parse_module(const std::string& text, const Algebra<F>& a) {
  auto s = statements(text);
  if (s.empty()) throw ParseError("empty module file", 0);
  detail::ModuleBody<F> b;
  const auto& h = s[0];
  if (h.tokens[0] != "module" && h.tokens[0] != "bimodule")
    throw ParseError("expected 'module NAME' or 'bimodule NAME'", h.line);
  b.bimodule = h.tokens[0] == "bimodule";
  if (h.tokens.size() > 1) b.name = h.tokens[1];
  std::size_t end = detail::parse_module_body(s, 1, a, b, {});
  if (end != s.size()) throw ParseError("trailing statements", s[end].line);
  return detail::body_to_module(b, a, h.line);
}

namespace detail {

template <class F>
void emit_matrix(std::ostringstream& out, const Matrix<F>& m, const std::string& indent) {
  const F& f = m.field();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out << indent;
    for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? " " : "") << f.to_string(m(r, c));
    out << "\n";
  }
}

template <class F>
void emit_action(std::ostringstream& out, const std::string& kw, const std::string& label, const Matrix<F>& m,
                 const std::string& indent) {
  out << indent << kw << " " << label;
  if (m.is_zero())
    out << " zero\n";
  else if (m == Matrix<F>::identity(m.field(), m.rows()))
    out << " identity\n";
  else {
    out << "\n";
    emit_matrix(out, m, indent + "  ");
  }
}

template <class F>
bool is_bimodule_over(const LeftModule<F>& m, const Algebra<F>& base) {
  const auto* fac = m.algebra().factors();
  return fac && fac->first == base && fac->second == opposite_algebra(base);
}

template <class F>
void emit_module_body(std::ostringstream& out, const LeftModule<F>& m, const Algebra<F>& base, const std::string& indent) {
  out << indent << "dim " << m.dim() << "\n";
  if (is_bimodule_over(m, base)) {
    auto lx = first_factor_actions(m), ry = second_factor_actions(m);
    for (std::size_t i = 0; i < base.dim(); ++i) emit_action(out, "left", base.labels()[i], lx[i], indent);
    for (std::size_t i = 0; i < base.dim(); ++i) emit_action(out, "right", base.labels()[i], ry[i], indent);
  } else {
    for (std::size_t i = 0; i < base.dim(); ++i) emit_action(out, "action", base.labels()[i], m.action(i), indent);
  }
}

}  // namespace detail

/// Emits m as a .mod text over base; bimodules over enveloping(base) use
/// the left/right form.
template <class F>
std::string emit_module(const LeftModule<F>& m, const Algebra<F>& base) {
  std::ostringstream out;
  bool bi = detail::is_bimodule_over(m, base);
  if (!bi && !(m.algebra() == base)) throw AlgebraMismatch("emit_module: module is neither over A nor over A^e");
  out << (bi ? "bimodule" : "module") << " " << (m.name().empty() ? "M" : m.name()) << "\n";
  detail::emit_module_body(out, m, base, "");
  return out.str();
}

// ---------------------------------------------------------------------------
// .cx: bounded complexes.
//
//   complex C                  # or: bicomplex C, for complexes of bimodules
//   term -1                    # the module body follows
//     dim 2
//     action e11 identity
//     ...
//   term 0 catalog simple1     # a catalog module (bimodule for bicomplex)
//   differential -1            # d^-1 : C^-1 -> C^0, dim C^0 rows
//     1 0
//
// Degrees not listed are zero; a missing differential is zero.

template <class F>
Complex<F> parse_complex(const std::string& text, const Algebra<F>& a) {
  const F& f = a.field();
  auto s = statements(text);
  if (s.empty()) throw ParseError("empty complex file", 0);
  const auto& h = s[0];
  if (h.tokens[0] != "complex" && h.tokens[0] != "bicomplex")
    throw ParseError("expected 'complex NAME' or 'bicomplex NAME'", h.line);
  bool bi = h.tokens[0] == "bicomplex";
  Algebra<F> over = bi ? enveloping(a) : a;
  auto degree = [](const Statement& st) {
    if (st.tokens.size() < 2) throw ParseError("missing degree", st.line);
    try {
      std::size_t used = 0;
      int d = std::stoi(st.tokens[1], &used);
      if (used != st.tokens[1].size()) throw std::invalid_argument("");
      return d;
    } catch (const std::exception&) {
      throw ParseError("bad degree '" + st.tokens[1] + "'", st.line);
    }
  };
  std::map<int, LeftModule<F>> terms;
  std::map<int, std::pair<std::size_t, int>> diffs;  // degree -> (statement index, line)
  const std::set<std::string> stop{"term", "differential"};
  std::size_t pos = 1;
  while (pos < s.size()) {
    const auto& st = s[pos];
    if (st.tokens[0] == "term") {
      int deg = degree(st);
      if (terms.count(deg)) throw ParseError("term " + std::to_string(deg) + " given twice", st.line);
      if (st.tokens.size() == 4 && st.tokens[2] == "catalog") {
        terms.emplace(deg, bi ? catalog::bimodule(a, st.tokens[3]) : catalog::module(a, st.tokens[3]));
        ++pos;
      } else if (st.tokens.size() == 2) {
        detail::ModuleBody<F> b;
        b.bimodule = bi;
        pos = detail::parse_module_body(s, pos + 1, a, b, stop);
        terms.emplace(deg, detail::body_to_module(b, a, st.line));
      } else {
        throw ParseError("expected 'term DEGREE' or 'term DEGREE catalog NAME'", st.line);
      }
    } else if (st.tokens[0] == "differential") {
      expect_arity(st, 2);
      int deg = degree(st);
      if (diffs.count(deg)) throw ParseError("differential " + std::to_string(deg) + " given twice", st.line);
      diffs[deg] = {pos + 1, st.line};
      ++pos;
      while (pos < s.size() && looks_numeric(s[pos].tokens[0])) ++pos;
    } else {
      throw ParseError("unknown statement '" + st.tokens[0] + "'", st.line);
    }
  }
  if (terms.empty()) return Complex<F>::zero(over).with_name(h.tokens.size() > 1 ? h.tokens[1] : "");
  int lo = terms.begin()->first, hi = terms.rbegin()->first;
  std::vector<LeftModule<F>> mods;
  for (int i = lo; i <= hi; ++i) mods.push_back(terms.count(i) ? terms.at(i) : zero_module(over));
  auto dimof = [&](int i) { return i < lo || i > hi ? std::size_t{0} : mods[static_cast<std::size_t>(i - lo)].dim(); };
  std::vector<Matrix<F>> ds;
  for (int i = lo; i < hi; ++i) ds.push_back(Matrix<F>(f, dimof(i + 1), dimof(i)));
  for (const auto& [deg, where] : diffs) {
    std::size_t p = where.first;
    auto m = detail::parse_rows(s, p, f, dimof(deg + 1), dimof(deg), where.second);
    if (deg < lo || deg >= hi) {
      if (!m.is_zero()) throw ParseError("nonzero differential out of the term range", where.second);
      continue;
    }
    ds[static_cast<std::size_t>(deg - lo)] = m;
  }
  try {
    return Complex<F>::make(over, lo, std::move(mods), std::move(ds)).with_name(h.tokens.size() > 1 ? h.tokens[1] : "");
  } catch (const Error& e) {
    throw ParseError(e.what(), h.line);
  }
}

template <class F>
std::string emit_complex(const Complex<F>& c, const Algebra<F>& base) {
  std::ostringstream out;
  const auto* fac = c.algebra().factors();
  bool bi = fac && fac->first == base && fac->second == opposite_algebra(base);
  out << (bi ? "bicomplex" : "complex") << " " << (c.name().empty() ? "C" : c.name()) << "\n";
  if (c.empty()) return out.str();
  for (int i = c.lo(); i <= c.hi(); ++i) {
    out << "term " << i << "\n";
    detail::emit_module_body(out, c.module(i), base, "  ");
  }
  for (int i = c.lo(); i < c.hi(); ++i) {
    if (c.d(i).is_zero()) continue;
    out << "differential " << i << "\n";
    detail::emit_matrix(out, c.d(i), "  ");
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Resolving command-line references: a catalog name or a file path.

template <class F>
Algebra<F> load_algebra(const std::string& ref, const F& f) {
  if (has_suffix(ref, ".alg")) return parse_structure_constants(read_file(ref), f).build(f);
  if (has_suffix(ref, ".quiver")) return quiver_algebra(parse_quiver(read_file(ref), f), f);
  return catalog::algebra(f, ref);
}

/// "NAME", "NAME[k]" (shifted by k) or a .mod/.cx path, as a complex over a
/// (or over enveloping(a) when bimodule is set).
template <class F>
Complex<F> load_complex(const std::string& ref, const Algebra<F>& a, bool bimodule) {
  std::string base = ref;
  int k = 0;
  if (auto b = ref.rfind('['); b != std::string::npos && ref.back() == ']' && b > 0) {
    base = ref.substr(0, b);
    std::string num = ref.substr(b + 1, ref.size() - b - 2);
    try {
      std::size_t used = 0;
      k = std::stoi(num, &used);
      if (used != num.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw ParseError("bad shift in '" + ref + "'", 0);
    }
  }
  Complex<F> c;
  if (has_suffix(base, ".cx")) {
    c = parse_complex(read_file(base), a);
  } else if (has_suffix(base, ".mod")) {
    c = Complex<F>::single(parse_module(read_file(base), a));
  } else {
    c = Complex<F>::single(bimodule ? catalog::bimodule(a, base) : catalog::module(a, base)).with_name(base);
  }
  Algebra<F> want = bimodule ? enveloping(a) : a;
  if (!(c.algebra() == want))
    throw ParseError("'" + base + "' is " + (bimodule ? "not a bimodule" : "a bimodule, expected a module"), 0);
  return k == 0 ? c : shift(c, k).with_name(ref);
}

}  // namespace hcat::io
