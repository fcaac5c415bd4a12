// hcat: command-line front end. One job per invocation; see README.md.

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hcat/hcat.hpp"
#include "hcat/report.hpp"

namespace {

using hcat::report::json;

struct Options {
  std::string command;
  std::vector<std::string> args;
  std::string field = "q";
  int window = 0;  // 0: default (4, widened by ext/hochschild to reach the degree)
  std::string mode = "auto";
  std::string route = "both";
  bool bimodule = false;
  std::string out;
};

/// An input problem (bad arguments, unknown names, malformed files).
struct InputError : hcat::Error {
  explicit InputError(const std::string& what) : hcat::Error(what) {}
};

hcat::CoverMode parse_mode(const std::string& s) {
  if (s == "auto") return hcat::CoverMode::automatic;
  if (s == "full") return hcat::CoverMode::full;
  if (s == "greedy") return hcat::CoverMode::greedy;
  if (s == "minimal") return hcat::CoverMode::minimal;
  throw InputError("unknown mode '" + s + "' (auto, full, greedy, minimal)");
}

int parse_int(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw InputError(std::string(what) + ": expected an integer, got '" + s + "'");
}

std::string join_dims(const std::vector<std::size_t>& d, int lo) {
  std::string s;
  for (std::size_t i = 0; i < d.size(); ++i)
    s += (i ? " " : "") + std::string("H^") + std::to_string(lo + static_cast<int>(i)) + "=" + std::to_string(d[i]);
  return s.empty() ? "zero" : s;
}

template <class F>
class Job {
 public:
  using C = hcat::Complex<F>;
  using D = hcat::DerivedComplex<F>;

  Job(const Options& o, const F& f)
      : o_(o), f_(f), mode_(parse_mode(o.mode)), window_(o.window ? o.window : 4),
        rep_(o.command, o.args, f, window_, mode_) {}

  /// Runs the command; returns the exit code and fills the report.
  int run() {
    static const std::map<std::string, int (Job::*)()> table{
        {"catalog", &Job::catalog},       {"cohomology", &Job::cohomology_cmd},
        {"ext", &Job::ext_cmd},           {"derived-hom", &Job::derived_hom_cmd},
        {"cone", &Job::cone_cmd},         {"triangle", &Job::triangle_cmd},
        {"resolve", &Job::resolve_cmd},   {"rhom", &Job::rhom_cmd},
        {"ltensor", &Job::ltensor_cmd},   {"verify-dualizing", &Job::dualizing_cmd},
        {"verify-tilting", &Job::tilting_cmd}, {"dpic-mul", &Job::dpic_cmd},
        {"square", &Job::square_cmd},     {"rigid", &Job::rigid_cmd},
        {"hochschild", &Job::hochschild_cmd}, {"regularity", &Job::regularity_cmd},
    };
    auto it = table.find(o_.command);
    if (it == table.end()) throw InputError("unknown command '" + o_.command + "'");
    if (window_ < 1) throw InputError("window must be positive");
    return (this->*(it->second))();
  }

  json finish(const std::string& status, int code) { return rep_.finish(status, code); }
  hcat::report::Builder<F>& builder() { return rep_; }

 private:
  const Options& o_;
  F f_;
  hcat::CoverMode mode_;
  int window_;
  hcat::report::Builder<F> rep_;
  int w() const { return window_; }

  void widen_for(int degree) {
    if (o_.window != 0 || degree + 1 <= window_) return;
    window_ = degree + 1;
    rep_.root()["window"] = window_;
  }

  void arity(std::size_t lo, std::size_t hi, const char* usage) {
    if (o_.args.size() < lo || o_.args.size() > hi) throw InputError(std::string("usage: hcat ") + usage);
  }
  hcat::Algebra<F> algebra(std::size_t k) {
    auto a = hcat::io::load_algebra(o_.args.at(k), f_);
    rep_.results()["algebra"] = a.name().empty() ? o_.args.at(k) : a.name();
    return a;
  }
  C subject(const hcat::Algebra<F>& a, std::size_t k, bool bimodule) {
    return hcat::io::load_complex(o_.args.at(k), a, bimodule);
  }
  hcat::LeftModule<F> single_module(const hcat::Algebra<F>& a, std::size_t k, bool bimodule) {
    auto c = subject(a, k, bimodule).trimmed();
    if (c.empty()) return hcat::zero_module(bimodule ? hcat::enveloping(a) : a);
    if (c.lo() != 0 || c.hi() != 0) throw InputError("'" + o_.args.at(k) + "' must be a module in degree 0");
    return c.module(0);
  }

  void say(const std::string& line) { std::cout << line << "\n"; }

  /// Cohomology dims over the certified part of the support.
  std::pair<int, std::vector<std::size_t>> dims(const D& x) {
    auto [lo, hi] = x.checked_range();
    std::vector<std::size_t> out;
    for (int i = lo; i <= hi; ++i) out.push_back(hcat::cohomology(x.complex, i, false).dim());
    return {lo, out};
  }
  void put_dims(const std::string& key, const D& x) {
    auto [lo, d] = dims(x);
    rep_.results()[key] = {{"lo", lo}, {"dims", d}, {"window_statement", x.window_statement()}};
    rep_.complex(key, x.complex, lo, lo + static_cast<int>(d.size()) - 1);
    say(key + ": " + join_dims(d, lo) + " (" + x.window_statement() + ")");
  }

  int verifier(const hcat::VerifierReport<F>& v) {
    rep_.verifier(v);
    for (const auto& c : v.conditions)
      say("[" + std::string(hcat::to_string(c.verdict)) + "] " + c.id + ": " + c.description +
          (c.verdict == hcat::Verdict::pass ? (c.detail.empty() ? "" : " (" + c.detail + ")")
                                            : (c.witness.empty() ? "" : " -- " + c.witness)));
    for (const auto& [k, val] : v.facts) say("  " + k + " = " + val);
    auto overall = v.overall();
    say(std::string("overall: ") + hcat::to_string(overall));
    rep_.window_statement("verdicts use window " + std::to_string(v.window));
    return hcat::report::exit_code(overall);
  }

  // -------------------------------------------------------------------------

  int catalog() {
    arity(0, 1, "catalog [ALG]");
    if (o_.args.empty()) {
      rep_.results()["algebras"] = hcat::catalog::algebra_names();
      for (const auto& n : hcat::catalog::algebra_names()) say(n);
      return 0;
    }
    auto a = algebra(0);
    std::vector<std::string> bims{"A", "R", "S"};
    if (a.name() == "triangular2") bims = {"A", "R", "S1", "S2"};
    rep_.results()["dim"] = a.dim();
    rep_.results()["labels"] = a.labels();
    rep_.results()["modules"] = hcat::catalog::module_names(a);
    rep_.results()["bimodules"] = bims;
    std::string labels;
    for (const auto& l : a.labels()) labels += " " + l;
    say(a.name() + ": dim " + std::to_string(a.dim()) + ", basis" + labels);
    std::string mods, bs;
    for (const auto& m : hcat::catalog::module_names(a)) mods += " " + m;
    for (const auto& b : bims) bs += " " + b;
    say("modules:" + mods);
    say("bimodules:" + bs);
    return 0;
  }

  int cohomology_cmd() {
    arity(2, 2, "cohomology ALG X [--bimodule]");
    auto a = algebra(0);
    put_dims("cohomology", hcat::exact(subject(a, 1, o_.bimodule)));
    return 0;
  }

  int ext_cmd() {
    arity(4, 4, "ext ALG M N i");
    auto a = algebra(0);
    auto m = single_module(a, 1, o_.bimodule), n = single_module(a, 2, o_.bimodule);
    int i = parse_int(o_.args[3], "degree");
    widen_for(i);
    std::size_t d = hcat::ext(m, n, i, w(), mode_);
    rep_.results()["degree"] = i;
    rep_.results()["dim"] = d;
    rep_.results()["routes"] = "projective and injective agree";
    rep_.window_statement("degree " + std::to_string(i) + " is certified by window " + std::to_string(w()));
    say("dim Ext^" + std::to_string(i) + "(" + o_.args[1] + ", " + o_.args[2] + ") = " + std::to_string(d));
    return 0;
  }

  int resolve_cmd() {
    arity(2, 2, "resolve ALG X [--bimodule]");
    auto a = algebra(0);
    auto x = subject(a, 1, o_.bimodule).trimmed();
    auto r = hcat::k_projective_resolution(x, w(), mode_);
    auto p = r.resolving.trimmed();
    std::vector<std::size_t> d;
    for (int i = p.empty() ? 0 : p.lo(); !p.empty() && i <= p.hi(); ++i) d.push_back(p.dim(i));
    rep_.results()["resolving"] = {{"lo", p.empty() ? 0 : p.lo()}, {"term_dims", d}};
    rep_.results()["complete"] = r.complete;
    rep_.results()["valid_from"] = r.valid_from;
    rep_.results()["mode"] = hcat::to_string(r.mode);
    bool proj = !x.empty() && x.lo() == x.hi() && hcat::is_projective(x.module(x.lo()));
    if (r.complete) rep_.results()["projective_dimension"] = proj ? 0 : r.length();
    rep_.chain_map("augmentation P -> X", r.augmentation, r.complete);
    std::string terms;
    for (std::size_t k = 0; k < d.size(); ++k)
      terms += (k ? " " : "") + std::string("P^") + std::to_string(p.lo() + static_cast<int>(k)) + ":" +
               std::to_string(d[k]);
    say("resolving terms: " + (terms.empty() ? std::string("zero") : terms));
    if (r.complete) {
      say("complete; projective dimension " + std::to_string(proj ? 0 : r.length()));
      rep_.window_statement("complete resolution");
    } else {
      say("truncated at window " + std::to_string(w()) + "; quasi-isomorphism from degree " +
          std::to_string(r.valid_from));
      rep_.window_statement("augmentation is a quasi-isomorphism in degrees >= " + std::to_string(r.valid_from));
    }
    return 0;
  }

  int rhom_cmd() {
    arity(3, 3, "rhom ALG X Y [--route projective|injective|both] [--bimodule]");
    auto a = algebra(0);
    auto x = subject(a, 1, o_.bimodule), y = subject(a, 2, o_.bimodule);
    if (o_.route != "projective" && o_.route != "injective" && o_.route != "both")
      throw InputError("unknown route '" + o_.route + "'");
    std::optional<D> p, i;
    if (o_.route != "injective") p = hcat::rhom(x, y, w(), hcat::Route::projective, hcat::Contract::plain, mode_);
    if (o_.route != "projective") i = hcat::rhom(x, y, w(), hcat::Route::injective, hcat::Contract::plain, mode_);
    if (p) put_dims("projective", *p);
    if (i) put_dims("injective", *i);
    if (p && i) {
      int lo = std::max(p->checked_range().first, i->checked_range().first);
      int hi = std::min(std::max(p->checked_range().second, i->checked_range().second), std::min(p->valid_hi, i->valid_hi));
      for (int k = lo; k <= hi; ++k) {
        if (!p->valid_in(k) || !i->valid_in(k)) continue;
        auto a1 = hcat::cohomology(p->complex, k, false).dim(), b1 = hcat::cohomology(i->complex, k, false).dim();
        if (a1 != b1) {
          rep_.results()["routes_agree"] = false;
          say("routes disagree in degree " + std::to_string(k));
          return 1;
        }
      }
      rep_.results()["routes_agree"] = true;
      say("routes agree");
    }
    rep_.window_statement((p ? *p : *i).window_statement());
    return 0;
  }

  int derived_hom_cmd() {
    arity(3, 3, "derived-hom ALG X Y [--bimodule]");
    auto a = algebra(0);
    auto x = subject(a, 1, o_.bimodule), y = subject(a, 2, o_.bimodule);
    auto h = hcat::derived_hom(x, y, w(), mode_);
    rep_.results()["dim"] = h.dim;
    rep_.results()["certified"] = h.certified;
    for (std::size_t b = 0; b < h.basis.size(); ++b) rep_.chain_map("basis " + std::to_string(b), h.basis[b], false);
    say("dim Hom_D(" + o_.args[1] + ", " + o_.args[2] + ") = " + std::to_string(h.dim));
    if (!h.certified) {
      rep_.window_statement("degree 0 is not certified by window " + std::to_string(w()));
      say("not certified within window " + std::to_string(w()));
      return 2;
    }
    rep_.window_statement("degree 0 certified by window " + std::to_string(w()));
    return 0;
  }

  int cone_cmd() {
    arity(3, 4, "cone ALG X Y [k]  (cone of the k-th basis morphism of Hom_D(X, Y), a chain map P_X -> Y)");
    auto a = algebra(0);
    auto x = subject(a, 1, o_.bimodule), y = subject(a, 2, o_.bimodule);
    auto h = hcat::derived_hom(x, y, w(), mode_);
    std::size_t k = o_.args.size() > 3 ? static_cast<std::size_t>(parse_int(o_.args[3], "index")) : 0;
    if (!h.certified) {
      rep_.window_statement("degree 0 is not certified by window " + std::to_string(w()));
      say("Hom_D(X, Y) not certified within window " + std::to_string(w()));
      return 2;
    }
    hcat::ChainMap<F> phi = h.dim == 0 ? hcat::ChainMap<F>::zero(h.resolution.resolving, y.trimmed()) : h.basis.at(0);
    if (h.dim > 0) {
      if (k >= h.dim) throw InputError("index " + std::to_string(k) + " out of range (dim " + std::to_string(h.dim) + ")");
      phi = h.basis[k];
    }
    auto cn = hcat::cone(phi);
    rep_.results()["hom_dim"] = h.dim;
    rep_.results()["morphism"] = h.dim == 0 ? "zero" : "basis " + std::to_string(k);
    rep_.chain_map("morphism", phi, false);
    D c{cn.complex, h.resolution.complete ? hcat::kNegInf : h.resolution.valid_from, hcat::kPosInf, w()};
    put_dims("cone", c);
    rep_.window_statement(c.window_statement());
    return 0;
  }

  /// rad X -> X -> X / rad X, degreewise (differentials preserve radicals).
  std::pair<hcat::ChainMap<F>, hcat::ChainMap<F>> radical_sequence(const C& x) {
    const auto& a = x.algebra();
    if (!a.has_trace_radical()) throw InputError("triangle: radical needs characteristic 0 or > dim A");
    const auto& rad = a.trace_radical();
    std::vector<hcat::LeftModule<F>> lm, nm;
    std::vector<hcat::Matrix<F>> inc, proj, sec;
    for (int i = x.lo(); i <= x.hi(); ++i) {
      const auto& m = x.module(i);
      std::vector<hcat::Matrix<F>> parts;
      for (std::size_t c = 0; c < rad.cols(); ++c) parts.push_back(m.action_of(rad.col(c)));
      auto g = hcat::hstack_all(f_, m.dim(), parts);
      auto span = g.cols() ? hcat::generated_span(m, g) : hcat::Matrix<F>(f_, m.dim(), 0);
      auto sub = hcat::submodule(m, span);
      auto quo = hcat::quotient_module(m, sub.inclusion);
      lm.push_back(sub.module);
      nm.push_back(quo.module);
      inc.push_back(sub.inclusion);
      proj.push_back(quo.projection);
      sec.push_back(quo.section);
    }
    std::vector<hcat::Matrix<F>> dl, dn;
    for (int i = x.lo(); i < x.hi(); ++i) {
      auto k = static_cast<std::size_t>(i - x.lo());
      if (inc[k + 1].cols()) {
        hcat::SubspaceCoords<F> sc(inc[k + 1]);
        dl.push_back(sc.coords(x.d(i) * inc[k]));
      } else {
        dl.push_back(hcat::Matrix<F>(f_, 0, inc[k].cols()));
      }
      dn.push_back(proj[k + 1] * x.d(i) * sec[k]);
    }
    auto l = C::make(a, x.lo(), lm, dl), n = C::make(a, x.lo(), nm, dn);
    return {hcat::ChainMap<F>::make(l, x, inc, x.lo()), hcat::ChainMap<F>::make(x, n, proj, x.lo())};
  }

  int triangle_cmd() {
    arity(2, 2, "triangle ALG X [--bimodule]  (radical sequence rad X -> X -> X/rad X)");
    auto a = algebra(0);
    auto x = subject(a, 1, o_.bimodule).trimmed();
    if (x.empty()) throw InputError("triangle: zero complex");
    auto [alpha, beta] = radical_sequence(x);
    auto t = hcat::ses_to_triangle(alpha, beta, w(), mode_);
    int lo = x.lo() - 1, hi = x.hi() + 1;
    auto les = hcat::check_long_exact_sequence(t, lo, hi);
    auto null = hcat::is_null_homotopic(t.gamma);
    bool gamma_zero_on_h = true;
    for (int q = lo; q <= hi; ++q)
      if (t.resolution.valid_in(q) && !hcat::induced_map(t.gamma, q).is_zero()) gamma_zero_on_h = false;
    rep_.results()["les_exact"] = les.exact;
    if (!les.exact) rep_.results()["les_failure"] = les.failure;
    rep_.results()["gamma_null_homotopic"] = null.has_value();
    rep_.results()["gamma_zero_on_cohomology"] = gamma_zero_on_h;
    rep_.results()["sub_dims"] = t.l().total_dim();
    rep_.results()["quotient_dims"] = t.n().total_dim();
    rep_.chain_map("alpha", t.alpha, false);
    rep_.chain_map("beta", t.beta, false);
    rep_.chain_map("comparison cone -> N", t.comparison, true);
    rep_.chain_map("gamma", t.gamma, false);
    say("rad: total dim " + std::to_string(t.l().total_dim()) + ", top: total dim " + std::to_string(t.n().total_dim()));
    say(std::string("long exact sequence: ") + (les.exact ? "exact" : "NOT exact (" + les.failure + ")"));
    say(std::string("gamma: ") + (null ? "null-homotopic" : "not null-homotopic") +
        (gamma_zero_on_h ? ", zero on cohomology" : ", nonzero on cohomology"));
    rep_.window_statement(t.resolution.complete ? "complete resolution of N"
                                                : "resolution of N valid from degree " +
                                                      std::to_string(t.resolution.valid_from));
    return les.exact ? 0 : 1;
  }

  int ltensor_cmd() {
    arity(3, 3, "ltensor ALG X Y  (bimodule complexes)");
    auto a = algebra(0);
    auto x = subject(a, 1, true), y = subject(a, 2, true);
    put_dims("ltensor", hcat::ltensor(x, y, w(), hcat::TensorSide::left, mode_));
    return 0;
  }

  int dualizing_cmd() {
    arity(2, 2, "verify-dualizing ALG R");
    auto a = algebra(0);
    return verifier(hcat::verify_dualizing(subject(a, 1, true).with_name(o_.args[1]), w(), mode_));
  }

  int tilting_cmd() {
    arity(2, 3, "verify-tilting ALG T [TV]  (TV defaults to RHom_A(T, A))");
    auto a = algebra(0);
    auto t = hcat::exact(subject(a, 1, true));
    D tv = o_.args.size() > 2 ? hcat::exact(subject(a, 2, true)) : hcat::quasi_inverse(t, w(), mode_);
    rep_.results()["inverse"] = o_.args.size() > 2 ? o_.args[2] : "quasi-inverse";
    if (o_.args.size() == 2) rep_.complex("TV", tv.complex, 1, 0);
    return verifier(hcat::verify_tilting(t, tv, w(), mode_));
  }

  int dpic_cmd() {
    if (o_.args.size() < 2) throw InputError("usage: hcat dpic-mul ALG T1 [T2 ...]");
    auto a = algebra(0);
    D prod = hcat::exact(subject(a, 1, true));
    for (std::size_t k = 2; k < o_.args.size(); ++k) prod = hcat::dpic_mul(prod, hcat::exact(subject(a, k, true)), w(), mode_);
    put_dims("product", prod);
    auto [lo, d] = dims(prod);
    std::optional<int> degree;
    int nonzero = 0;
    for (std::size_t k = 0; k < d.size(); ++k)
      if (d[k]) {
        ++nonzero;
        degree = lo + static_cast<int>(k);
      }
    if (nonzero == 1 && prod.covers_support()) {
      int s = -*degree;
      auto target = hcat::exact(hcat::shift(C::single(hcat::regular_bimodule(a)), s));
      auto iso = hcat::derived_isomorphic(prod, target, w(), mode_);
      if (iso.found()) {
        std::string msg = "isomorphic to A[" + std::to_string(s) + "]";
        rep_.results()["identification"] = msg;
        rep_.iso(msg, iso);
        say(msg);
        return 0;
      }
      rep_.results()["identification"] = "concentrated in degree " + std::to_string(*degree) + ", not A[" +
                                          std::to_string(s) + "]";
      say("concentrated in degree " + std::to_string(*degree) + ", not isomorphic to a shift of A");
      return 0;
    }
    if (!prod.covers_support()) {
      say("product not certified on its whole support");
      return 2;
    }
    rep_.results()["identification"] = nonzero == 0 ? "zero" : "not concentrated in one degree";
    say(nonzero == 0 ? "zero" : "not concentrated in one degree");
    return 0;
  }

  int square_cmd() {
    arity(2, 2, "square ALG M  (bimodule complex)");
    auto a = algebra(0);
    put_dims("square", hcat::square(subject(a, 1, true), w(), mode_));
    return 0;
  }

  int rigid_cmd() {
    arity(2, 2, "rigid ALG M  (bimodule complex)");
    auto a = algebra(0);
    return verifier(hcat::is_rigid(subject(a, 1, true).with_name(o_.args[1]), w(), mode_));
  }

  int hochschild_cmd() {
    arity(2, 3, "hochschild ALG [M] i  (M defaults to A)");
    auto a = algebra(0);
    auto m = o_.args.size() == 3 ? single_module(a, 1, true) : hcat::regular_bimodule(a);
    int i = parse_int(o_.args.back(), "degree");
    widen_for(i);
    std::size_t d = hcat::hochschild(a, m, i, w(), mode_);
    rep_.results()["degree"] = i;
    rep_.results()["dim"] = d;
    rep_.window_statement("degree " + std::to_string(i) + " is certified by window " + std::to_string(w()));
    say("dim HH^" + std::to_string(i) + " = " + std::to_string(d));
    return 0;
  }

  int regularity_cmd() {
    arity(1, 1, "regularity ALG");
    auto a = algebra(0);
    return verifier(hcat::regularity_probe(a, w(), mode_));
  }
};

void write_report(const Options& o, const json& j) {
  if (o.out.empty()) return;
  std::ofstream out(o.out);
  if (!out) throw InputError("cannot write '" + o.out + "'");
  out << j.dump(2) << "\n";
}

template <class F>
int run_with(const Options& o, const F& f) {
  std::optional<Job<F>> job;
  int code = 3;
  std::string status = "input-error";
  std::string error;
  try {
    job.emplace(o, f);
    code = job->run();
    status = code == 0 ? "ok" : code == 1 ? "fail" : "inconclusive";
  } catch (const hcat::WindowShortfall& e) {
    code = 2;
    status = "inconclusive";
    error = e.what();
  } catch (const std::exception& e) {
    code = 3;
    status = "input-error";
    error = e.what();
  }
  if (!error.empty()) std::cerr << "hcat: " << error << "\n";
  if (job) {
    if (!error.empty()) job->builder().root()["error"] = error;
    write_report(o, job->finish(status, code));
  }
  return code;
}

int check_report_cmd(const Options& o) {
  if (o.args.size() != 1) throw InputError("usage: hcat check-report REPORT.json");
  std::ifstream in(o.args[0]);
  if (!in) throw InputError("cannot read '" + o.args[0] + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const std::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  auto checks = hcat::report::check_report(j);
  bool all = true;
  for (const auto& c : checks) {
    std::cout << (c.ok ? "[ok] " : "[FAILED] ") << c.what << (c.detail.empty() ? "" : " -- " + c.detail) << "\n";
    all = all && c.ok;
  }
  std::cout << checks.size() << " checks, " << (all ? "all passed" : "some failed") << "\n";
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"hcat: exact homological computations over finite-dimensional algebras"};
  app.add_option("command", o.command,
                 "catalog, cohomology, ext, derived-hom, cone, triangle, resolve, rhom, ltensor, verify-dualizing, "
                 "verify-tilting, dpic-mul, square, rigid, hochschild, regularity, check-report")
      ->required();
  app.add_option("args", o.args, "command arguments");
  app.add_option("--field", o.field, "q or f<p>")->capture_default_str();
  app.add_option("--window", o.window, "resolution window")->capture_default_str();
  app.add_option("--mode", o.mode, "cover mode: auto, full, greedy, minimal")->capture_default_str();
  app.add_option("--route", o.route, "rhom route: projective, injective, both")->capture_default_str();
  app.add_flag("--bimodule", o.bimodule, "read subjects as bimodules");
  app.add_option("--out", o.out, "write the JSON report here");
  app.positionals_at_end(false);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }
  try {
    if (o.command == "check-report") return check_report_cmd(o);
    if (o.field == "q") return run_with(o, hcat::Rationals{});
    if (o.field.size() > 1 && o.field[0] == 'f') {
      std::uint64_t p = 0;
      try {
        p = std::stoull(o.field.substr(1));
      } catch (const std::exception&) {
        throw InputError("bad field '" + o.field + "'");
      }
      return run_with(o, hcat::PrimeField{p});
    }
    throw InputError("bad field '" + o.field + "' (q or f<p>)");
  } catch (const std::exception& e) {
    std::cerr << "hcat: " << e.what() << "\n";
    return 3;
  }
}
