#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "hcat/derived.hpp"
#include "hcat/io.hpp"
#include "hcat/verifiers.hpp"

// JSON reports. Scalars are strings ("-3/7", "4") so no reader coerces them
// to floating point. Algebras are stored once, in a table keyed by name, and
// referenced from modules. Every certificate carries enough data to be
// re-checked without the original job.
//
// schema "hcat-report/1":
//   {schema, command, args[], field, window, cover_mode, determinism,
//    status, exit_code, results{}, window_statement?, verifier?,
//    certificates{complexes[], module_isos[], chain_maps[]}, algebras{}}

namespace hcat::report {

using json = nlohmann::json;

inline constexpr const char* kSchema = "hcat-report/1";

template <class F>
json matrix_to_json(const Matrix<F>& m) {
  const F& f = m.field();
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(f.to_string(m(r, c)));
    rows.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

template <class F>
Matrix<F> matrix_from_json(const json& j, const F& f) {
  std::size_t r = j.at("rows").get<std::size_t>(), c = j.at("cols").get<std::size_t>();
  const auto& e = j.at("entries");
  if (e.size() != r) throw ParseError("matrix: row count", 0);
  Matrix<F> m(f, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (e[i].size() != c) throw ParseError("matrix: column count", 0);
    for (std::size_t k = 0; k < c; ++k) m(i, k) = f.parse(e[i][k].get<std::string>());
  }
  return m;
}

template <class F>
json algebra_to_json(const Algebra<F>& a) {
  const F& f = a.field();
  json consts = json::array();
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      for (std::size_t k = 0; k < a.dim(); ++k)
        if (!f.is_zero(a.constant(i, j, k))) consts.push_back({i, j, k, f.to_string(a.constant(i, j, k))});
  json unit = json::array();
  for (std::size_t i = 0; i < a.dim(); ++i) unit.push_back(f.to_string(a.unit()(i, 0)));
  return {{"name", a.name()}, {"dim", a.dim()}, {"labels", a.labels()}, {"unit", unit}, {"constants", consts}};
}

template <class F>
Algebra<F> algebra_from_json(const json& j, const F& f) {
  std::size_t n = j.at("dim").get<std::size_t>();
  std::vector<StructureConstant<F>> consts;
  for (const auto& c : j.at("constants"))
    consts.push_back({c.at(0).get<std::size_t>(), c.at(1).get<std::size_t>(), c.at(2).get<std::size_t>(),
                      f.parse(c.at(3).get<std::string>())});
  std::vector<typename F::value_type> unit;
  for (const auto& u : j.at("unit")) unit.push_back(f.parse(u.get<std::string>()));
  return Algebra<F>::from_constants(f, n, consts, unit, j.at("labels").get<std::vector<std::string>>(),
                                    j.at("name").get<std::string>());
}

/// Algebras referenced by a report, deduplicated by structure.
template <class F>
class AlgebraTable {
 public:
  std::string key(const Algebra<F>& a) {
    for (const auto& [k, b] : entries_)
      if (b == a) return k;
    std::string k = a.name().empty() ? "algebra" : a.name();
    for (int n = 2; names_.count(k); ++n) k = a.name() + "#" + std::to_string(n);
    names_.insert(k);
    entries_.push_back({k, a});
    return k;
  }
  json to_json() const {
    json j = json::object();
    for (const auto& [k, a] : entries_) j[k] = algebra_to_json(a);
    return j;
  }

 private:
  std::vector<std::pair<std::string, Algebra<F>>> entries_;
  std::set<std::string> names_;
};

template <class F>
json module_to_json(const LeftModule<F>& m, AlgebraTable<F>& t) {
  json acts = json::array();
  for (const auto& a : m.actions()) acts.push_back(matrix_to_json(a));
  return {{"algebra", t.key(m.algebra())}, {"name", m.name()}, {"dim", m.dim()}, {"actions", acts}};
}

template <class F>
json complex_to_json(const Complex<F>& c, AlgebraTable<F>& t) {
  json terms = json::array(), diffs = json::array();
  auto ct = c.trimmed();
  for (int i = ct.lo(); !ct.empty() && i <= ct.hi(); ++i) terms.push_back(module_to_json(ct.module(i), t));
  for (int i = ct.lo(); !ct.empty() && i < ct.hi(); ++i) diffs.push_back(matrix_to_json(ct.d(i)));
  return {{"algebra", t.key(c.algebra())},
          {"name", c.name()},
          {"lo", ct.empty() ? 0 : ct.lo()},
          {"terms", terms},
          {"differentials", diffs}};
}

inline int exit_code(Verdict v) { return v == Verdict::pass ? 0 : v == Verdict::fail ? 1 : 2; }

template <class F>
class Builder {
 public:
  Builder(std::string command, std::vector<std::string> args, const F& f, int window, CoverMode mode) {
    j_["schema"] = kSchema;
    j_["command"] = std::move(command);
    j_["args"] = std::move(args);
    j_["field"] = io::field_tag(f);
    j_["window"] = window;
    j_["cover_mode"] = to_string(mode);
    j_["determinism"] = "no randomness except isomorphism searches, which use the fixed seed " +
                        std::to_string(kSearchSeed);
    j_["results"] = json::object();
    j_["certificates"] = {{"complexes", json::array()}, {"module_isos", json::array()}, {"chain_maps", json::array()}};
  }

  json& results() { return j_["results"]; }
  json& root() { return j_; }

  void window_statement(const std::string& s) { j_["window_statement"] = s; }

  /// A complex with its cohomology dimensions on [lo, hi], re-checkable.
  void complex(const std::string& label, const Complex<F>& c, int lo, int hi) {
    json e{{"label", label}, {"complex", complex_to_json(c, table_)}};
    if (lo <= hi) {
      json dims = json::array();
      for (int i = lo; i <= hi; ++i) dims.push_back(cohomology(c, i, false).dim());
      e["cohomology"] = {{"lo", lo}, {"dims", dims}};
    }
    j_["certificates"]["complexes"].push_back(std::move(e));
  }

  void module_iso(const std::string& label, const LeftModule<F>& s, const LeftModule<F>& t, const Matrix<F>& m) {
    j_["certificates"]["module_isos"].push_back({{"label", label},
                                                 {"source", module_to_json(s, table_)},
                                                 {"target", module_to_json(t, table_)},
                                                 {"map", matrix_to_json(m)}});
  }

  void chain_map(const std::string& label, const ChainMap<F>& phi, bool quasi_iso) {
    json comps = json::array();
    int lo = std::min(phi.source().empty() ? 0 : phi.source().lo(), phi.target().empty() ? 0 : phi.target().lo());
    int hi = std::max(phi.source().empty() ? -1 : phi.source().hi(), phi.target().empty() ? -1 : phi.target().hi());
    for (int i = lo; i <= hi; ++i) comps.push_back(matrix_to_json(phi(i)));
    j_["certificates"]["chain_maps"].push_back({{"label", label},
                                                {"source", complex_to_json(phi.source(), table_)},
                                                {"target", complex_to_json(phi.target(), table_)},
                                                {"lo", lo},
                                                {"components", comps},
                                                {"quasi_iso", quasi_iso}});
  }

  void iso(const std::string& label, const DerivedIso<F>& d) {
    if (d.module_map && d.hx && d.hy) module_iso(label, *d.hx, *d.hy, *d.module_map);
    if (d.chain_map) chain_map(label, *d.chain_map, true);
  }

  void verifier(const VerifierReport<F>& rep) {
    json conds = json::array();
    for (const auto& c : rep.conditions)
      conds.push_back({{"id", c.id},
                       {"description", c.description},
                       {"verdict", hcat::to_string(c.verdict)},
                       {"detail", c.detail},
                       {"witness", c.witness}});
    json facts = json::object();
    for (const auto& [k, v] : rep.facts) facts[k] = v;
    j_["verifier"] = {{"subject", rep.subject}, {"window", rep.window}, {"conditions", conds}, {"facts", facts},
                      {"overall", hcat::to_string(rep.overall())}};
    for (const auto& m : rep.module_isos) module_iso(m.label, m.source, m.target, m.map);
    for (const auto& c : rep.chain_maps) chain_map(c.label, c.map, c.quasi_iso);
  }

  json finish(const std::string& status, int code) {
    j_["status"] = status;
    j_["exit_code"] = code;
    j_["algebras"] = table_.to_json();
    return j_;
  }

 private:
  json j_;
  AlgebraTable<F> table_;
};

// ---------------------------------------------------------------------------
// Re-validation.

struct Check {
  std::string what;
  bool ok = false;
  std::string detail;
};

template <class F>
class Loader {
 public:
  Loader(const json& algebras, const F& f) : js_(algebras), f_(f) {}

  const Algebra<F>& algebra(const std::string& key) {
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(key, algebra_from_json(js_.at(key), f_)).first->second;
  }
  LeftModule<F> module(const json& j) {
    const auto& a = algebra(j.at("algebra").get<std::string>());
    std::vector<Matrix<F>> acts;
    for (const auto& m : j.at("actions")) acts.push_back(matrix_from_json(m, f_));
    return LeftModule<F>::make(a, j.at("dim").get<std::size_t>(), std::move(acts), j.value("name", ""));
  }
  Complex<F> complex(const json& j) {
    const auto& a = algebra(j.at("algebra").get<std::string>());
    std::vector<LeftModule<F>> mods;
    for (const auto& m : j.at("terms")) mods.push_back(module(m));
    std::vector<Matrix<F>> ds;
    for (const auto& d : j.at("differentials")) ds.push_back(matrix_from_json(d, f_));
    if (mods.empty()) return Complex<F>::zero(a);
    return Complex<F>::make(a, j.at("lo").get<int>(), std::move(mods), std::move(ds));
  }

 private:
  const json& js_;
  F f_;
  std::map<std::string, Algebra<F>> cache_;
};

template <class F>
std::vector<Check> check_certificates(const json& r, const F& f) {
  std::vector<Check> out;
  Loader<F> load(r.at("algebras"), f);
  auto guard = [&](const std::string& what, auto&& fn) {
    Check c{what, false, ""};
    try {
      fn(c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail = e.what();
    }
    out.push_back(std::move(c));
  };
  for (const auto& [key, _] : r.at("algebras").items())
    guard("algebra " + key + ": associative and unital", [&](Check& c) {
      load.algebra(key);
      c.ok = true;
    });
  const auto& certs = r.at("certificates");
  for (const auto& e : certs.at("complexes"))
    guard("complex " + e.at("label").get<std::string>() + ": d^2 = 0, module axioms, intertwining", [&](Check& c) {
      auto cx = load.complex(e.at("complex"));
      c.ok = true;
      if (e.contains("cohomology")) {
        int lo = e["cohomology"].at("lo").get<int>();
        auto dims = e["cohomology"].at("dims").get<std::vector<std::size_t>>();
        for (std::size_t k = 0; k < dims.size(); ++k) {
          auto d = cohomology(cx, lo + static_cast<int>(k), false).dim();
          if (d != dims[k]) {
            c.ok = false;
            c.detail = "claimed dim H^" + std::to_string(lo + static_cast<int>(k)) + " = " + std::to_string(dims[k]) +
                       ", found " + std::to_string(d);
          }
        }
      }
    });
  for (const auto& e : certs.at("module_isos"))
    guard("module iso " + e.at("label").get<std::string>() + ": intertwining and invertible", [&](Check& c) {
      auto s = load.module(e.at("source")), t = load.module(e.at("target"));
      auto m = matrix_from_json(e.at("map"), f);
      if (!(s.algebra() == t.algebra())) {
        c.detail = "source and target over different algebras";
      } else if (m.rows() != t.dim() || m.cols() != s.dim()) {
        c.detail = "map has the wrong shape";
      } else if (!is_module_hom(s, t, m)) {
        c.detail = "map does not intertwine the actions";
      } else if (!is_invertible(m)) {
        c.detail = "map is not invertible";
      } else {
        c.ok = true;
      }
    });
  for (const auto& e : certs.at("chain_maps"))
    guard("chain map " + e.at("label").get<std::string>() + ": commutes with d, module maps", [&](Check& c) {
      auto s = load.complex(e.at("source")), t = load.complex(e.at("target"));
      std::vector<Matrix<F>> comps;
      for (const auto& m : e.at("components")) comps.push_back(matrix_from_json(m, f));
      auto phi = ChainMap<F>::make(s, t, std::move(comps), e.at("lo").get<int>());
      c.ok = true;
      if (e.value("quasi_iso", false) && !is_quasi_iso(phi)) {
        c.ok = false;
        c.detail = "claimed quasi-isomorphism has a non-acyclic cone";
      }
    });
  return out;
}

/// Schema check plus certificate re-validation; dispatches on the field.
inline std::vector<Check> check_report(const json& r) {
  if (!r.is_object() || r.value("schema", "") != kSchema)
    throw ParseError(std::string("not a report with schema ") + kSchema, 0);
  for (const char* k : {"command", "field", "window", "status", "results", "certificates", "algebras"})
    if (!r.contains(k)) throw ParseError(std::string("report lacks '") + k + "'", 0);
  std::string field = r.at("field").get<std::string>();
  if (field == "q") return check_certificates(r, Rationals{});
  if (field.size() > 1 && field[0] == 'f') return check_certificates(r, PrimeField{std::stoull(field.substr(1))});
  throw ParseError("unknown field '" + field + "'", 0);
}

}  // namespace hcat::report
