#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace hcat;
using namespace hcat::testing;
using Q = Rationals;
using MQ = Matrix<Q>;
using CQ = Complex<Q>;

namespace {

Q q;

std::vector<std::size_t> dims_of(const DerivedComplex<Q>& x, int lo, int hi) {
  std::vector<std::size_t> out;
  for (int i = lo; i <= hi; ++i) out.push_back(certified_dim(x, i));
  return out;
}

TEST(RHom, FreeSourceGivesTarget) {
  std::mt19937 rng(3);
  for (const char* alg : {"triangular2", "dualnumbers", "mat2"}) {
    auto a = catalog::algebra(q, alg);
    for (int t = 0; t < 3; ++t) {
      auto n = random_module(a, rng);
      for (auto route : {Route::projective, Route::injective}) {
        auto r = rhom(CQ::single(regular_module(a)), CQ::single(n), 3, route);
        EXPECT_EQ(certified_dim(r, 0), n.dim()) << alg;
        for (int i = 1; i <= 2; ++i) EXPECT_EQ(certified_dim(r, i), 0u) << alg << " " << to_string(route);
      }
    }
  }
}

TEST(Ext, DualNumbersSimpleIsPeriodic) {
  auto lam = catalog::dual_numbers(q);
  auto k = catalog::module(lam, "simple");
  for (int i = 0; i <= 8; ++i) EXPECT_EQ(ext(k, k, i, 10, CoverMode::minimal), 1u) << "degree " << i;
  EXPECT_THROW(ext(k, k, 5, 5), WindowShortfall);
}

TEST(Ext, DegreeZeroIsHom) {
  std::mt19937 rng(5);
  for (const char* alg : {"triangular2", "dualnumbers", "kxn:3"}) {
    auto a = catalog::algebra(q, alg);
    for (int t = 0; t < 4; ++t) {
      auto m = random_module(a, rng), n = random_module(a, rng);
      EXPECT_EQ(ext(m, n, 0, 2), hom_space_direct(m, n).size()) << alg;
      EXPECT_EQ(ext(free_module(a, 2), n, 1, 2), 0u);
    }
  }
}

TEST(Ext, TriangularGlobalDimensionOne) {
  auto a = catalog::triangular2(q);
  auto s1 = catalog::module(a, "simple1"), s2 = catalog::module(a, "simple2");
  // one arrow between the two vertices: exactly one degree-1 class, in one direction
  std::size_t e12 = ext(s1, s2, 1, 3), e21 = ext(s2, s1, 1, 3);
  EXPECT_EQ(e12 + e21, 1u);
  for (const auto& m : {s1, s2})
    for (const auto& n : {s1, s2}) EXPECT_EQ(ext(m, n, 2, 3), 0u);
}

template <class F>
void route_agreement(const F& f, const char* alg, unsigned seed, int trials, int& count) {
  auto a = catalog::algebra(f, alg);
  std::mt19937 rng(seed);
  int w = 4;
  for (int t = 0; t < trials; ++t) {
    auto m = random_module(a, rng), n = random_module(a, rng);
    auto p = rhom(Complex<F>::single(m), Complex<F>::single(n), w, Route::projective);
    auto i = rhom(Complex<F>::single(m), Complex<F>::single(n), w, Route::injective);
    for (int d = 0; d < w; ++d) EXPECT_EQ(certified_dim(p, d), certified_dim(i, d)) << alg << " trial " << t << " degree " << d;
    ++count;
  }
}

TEST(RHom, ProjectiveAndInjectiveRoutesAgree) {
  int count = 0;
  route_agreement(q, "dualnumbers", 101, 15, count);
  route_agreement(q, "triangular2", 102, 15, count);
  route_agreement(q, "kxn:3", 103, 10, count);
  route_agreement(PrimeField{3}, "triangular2", 104, 6, count);
  route_agreement(PrimeField{2}, "dualnumbers", 105, 6, count);
  EXPECT_GE(count, 50);
}

TEST(RHom, ComplexArgumentsAgreeAcrossRoutes) {
  std::mt19937 rng(17);
  auto a = catalog::triangular2(q);
  for (int t = 0; t < 6; ++t) {
    auto m = random_complex(a, rng, 0, 2), n = random_complex(a, rng, 0, 2);
    auto p = rhom(m, n, 3, Route::projective), i = rhom(m, n, 3, Route::injective);
    int top = std::min({p.valid_hi, i.valid_hi, 4});
    for (int d = -3; d <= top; ++d) EXPECT_EQ(certified_dim(p, d), certified_dim(i, d)) << "trial " << t;
  }
}

TEST(LTensor, TorOverDualNumbers) {
  auto lam = catalog::dual_numbers(q);
  auto kr = as_right_bimodule(catalog::character_module(opposite_algebra(lam), {1, 0}, "k"));
  auto kl = as_left_bimodule(catalog::character_module(lam, {1, 0}, "k"));
  int w = 6;
  for (auto side : {TensorSide::left, TensorSide::right}) {
    auto t = ltensor(CQ::single(kr), CQ::single(kl), w, side, CoverMode::minimal);
    for (int i = -(w - 1); i <= 0; ++i) EXPECT_EQ(certified_dim(t, i), 1u) << "degree " << i;
    EXPECT_THROW(certified_dim(t, -w - 3), WindowShortfall);
  }
}

TEST(LTensor, RegularBimoduleIsUnit) {
  std::mt19937 rng(23);
  auto a = catalog::triangular2(q);
  for (int t = 0; t < 4; ++t) {
    auto n = random_module(a, rng);
    auto nn = as_left_bimodule(n);
    auto x = ltensor(CQ::single(regular_bimodule(a)), CQ::single(nn), 3);
    EXPECT_EQ(certified_dim(x, 0), n.dim());
    EXPECT_EQ(certified_dim(x, -1), 0u);
    auto h0 = cohomology(x.complex, 0);
    EXPECT_TRUE(is_isomorphic(drop_trivial_factors(h0.module), n).found());
  }
}

TEST(LTensor, SidesAgree) {
  std::mt19937 rng(29);
  auto a = catalog::dual_numbers(q);
  auto aop = opposite_algebra(a);
  for (int t = 0; t < 5; ++t) {
    auto m = as_right_bimodule(random_module(aop, rng)), n = as_left_bimodule(random_module(a, rng));
    auto l = ltensor(CQ::single(m), CQ::single(n), 4, TensorSide::left);
    auto r = ltensor(CQ::single(m), CQ::single(n), 4, TensorSide::right);
    for (int i = -3; i <= 0; ++i) EXPECT_EQ(certified_dim(l, i), certified_dim(r, i));
  }
}

TEST(DerivedHom, ChainMapBasisIsIndependent) {
  auto a = catalog::triangular2(q);
  auto s1 = CQ::single(catalog::module(a, "simple1")), s2 = CQ::single(catalog::module(a, "simple2"));
  for (const auto& [m, n] : {std::pair{s1, shift(s2, 1)}, std::pair{s2, shift(s1, 1)}, std::pair{s1, s1}}) {
    auto h = derived_hom(m, n, 3);
    EXPECT_TRUE(h.certified);
    for (const auto& phi : h.basis) {
      EXPECT_FALSE(phi.validate().has_value());
      EXPECT_FALSE(is_null_homotopic(phi).has_value());
    }
  }
}

// --- triangles

template <class F>
void triangle_suite(const F& f, const char* alg, unsigned seed, int trials, int& count) {
  auto a = catalog::algebra(f, alg);
  std::mt19937 rng(seed);
  for (int t = 0; t < trials; ++t) {
    auto m = random_complex(a, rng, -1, 1 + rng() % 2);
    auto s = random_ses(m, rng);
    auto tri = ses_to_triangle(s.alpha, s.beta, 3);
    EXPECT_TRUE(is_quasi_iso(tri.comparison)) << alg << " trial " << t;
    auto les = check_long_exact_sequence(tri, m.lo() - 1, m.hi() + 1);
    EXPECT_TRUE(les.exact) << alg << " trial " << t << ": " << les.failure;
    ++count;
  }
}

TEST(Triangle, LongExactSequenceOnRandomSes) {
  int count = 0;
  triangle_suite(q, "triangular2", 201, 20, count);
  triangle_suite(q, "dualnumbers", 202, 20, count);
  triangle_suite(PrimeField{5}, "kxn:3", 203, 6, count);
  triangle_suite(PrimeField{2}, "triangular2", 204, 6, count);
  EXPECT_GE(count, 50);
}

TEST(Triangle, SplitSequenceHasNullHomotopicConnectingMap) {
  std::mt19937 rng(211);
  for (const char* alg : {"triangular2", "dualnumbers"}) {
    auto a = catalog::algebra(q, alg);
    for (int t = 0; t < 4; ++t) {
      auto l = random_complex(a, rng, 0, 2), n = random_complex(a, rng, 0, 2);
      auto m = direct_sum(l, n);
      std::vector<MQ> inc, proj;
      for (int i = 0; i <= 1; ++i) {
        inc.push_back(vstack(MQ::identity(q, l.dim(i)), MQ(q, n.dim(i), l.dim(i))));
        proj.push_back(hstack(MQ(q, n.dim(i), l.dim(i)), MQ::identity(q, n.dim(i))));
      }
      auto alpha = ChainMap<Q>::make(l, m, inc, 0), beta = ChainMap<Q>::make(m, n, proj, 0);
      auto tri = ses_to_triangle(alpha, beta, 3);
      EXPECT_TRUE(is_null_homotopic(tri.gamma).has_value()) << alg;
    }
  }
}

TEST(Triangle, DualNumbersNonSplitSequence) {
  auto lam = catalog::dual_numbers(q);
  auto k = CQ::single(catalog::module(lam, "simple"));
  auto reg = CQ::single(regular_module(lam));
  // k -> Lambda sends 1 to x, Lambda -> k is the augmentation
  MQ inc(q, 2, 1), proj(q, 1, 2);
  inc(1, 0) = q.one();
  proj(0, 0) = q.one();
  auto tri = ses_to_triangle(ChainMap<Q>::make(k, reg, {inc}, 0), ChainMap<Q>::make(reg, k, {proj}, 0), 4);
  EXPECT_FALSE(is_null_homotopic(tri.gamma).has_value());
  auto p = tri.resolution.resolving;
  for (int i = p.lo(); i <= p.hi(); ++i) {
    auto hs = cohomology(p, i, false);
    auto ht = cohomology(tri.gamma.target(), i, false);
    if (hs.dim() && ht.dim()) {
      EXPECT_TRUE(induced_map(tri.gamma, i, hs, ht).is_zero()) << "degree " << i;
    }
  }
  EXPECT_TRUE(check_long_exact_sequence(tri, -1, 1).exact);
}

// --- Hochschild cohomology

TEST(Hochschild, LowDegreesMatchDerivationOracle) {
  for (const char* alg : {"dualnumbers", "triangular2", "mat2", "kxn:3", "k"}) {
    auto a = catalog::algebra(q, alg);
    auto [hh1, hh0] = derivation_oracle(a, regular_bimodule(a));
    EXPECT_EQ(hochschild(a, regular_bimodule(a), 0, 3), hh0) << alg;
    EXPECT_EQ(hochschild(a, regular_bimodule(a), 1, 3), hh1) << alg;
    EXPECT_EQ(hh0, center(a).cols()) << alg;
  }
}

TEST(Hochschild, DualNumbersOverRationals) {
  auto lam = catalog::dual_numbers(q);
  auto m = regular_bimodule(lam);
  EXPECT_EQ(hochschild(lam, m, 0, 4), 2u);
  EXPECT_EQ(hochschild(lam, m, 1, 4), 1u);
  EXPECT_EQ(hochschild(lam, m, 2, 4), 1u);
}

TEST(Hochschild, DualNumbersInCharacteristicTwo) {
  PrimeField f2{2};
  auto lam = catalog::dual_numbers(f2);
  auto m = regular_bimodule(lam);
  auto [hh1, hh0] = derivation_oracle(lam, m);
  EXPECT_EQ(hh1, 2u);
  for (int i = 0; i <= 3; ++i) EXPECT_EQ(hochschild(lam, m, i, 5), 2u) << "degree " << i;
}

TEST(Hochschild, SeparableAlgebraVanishes) {
  auto a = catalog::mat2(q);
  std::mt19937 rng(31);
  auto ae = enveloping(a);
  for (int i = 1; i <= 2; ++i) EXPECT_EQ(hochschild(a, regular_bimodule(a), i, 3), 0u);
  auto m = random_module(ae, rng, 1);
  for (int i = 1; i <= 2; ++i) EXPECT_EQ(hochschild(a, m, i, 3), 0u);
  EXPECT_EQ(hochschild(a, m, 0, 3), derivation_oracle(a, m).second);
}

TEST(Hochschild, RandomBimodulesInDegreeOne) {
  std::mt19937 rng(37);
  for (const char* alg : {"dualnumbers", "triangular2"}) {
    auto a = catalog::algebra(q, alg);
    auto ae = enveloping(a);
    for (int t = 0; t < 4; ++t) {
      auto m = random_module(ae, rng, 1);
      auto [hh1, hh0] = derivation_oracle(a, m);
      EXPECT_EQ(hochschild(a, m, 0, 3), hh0) << alg;
      EXPECT_EQ(hochschild(a, m, 1, 3), hh1) << alg;
    }
  }
}

// --- the square and rigidity

TEST(Square, GroundFieldIsRigid) {
  auto k = catalog::ground(q);
  auto sq = square(CQ::single(regular_bimodule(k)), 2);
  EXPECT_EQ(certified_dim(sq, 0), 1u);
  EXPECT_EQ(certified_dim(sq, 1), 0u);
  auto rep = is_rigid(CQ::single(regular_bimodule(k)), 2);
  EXPECT_EQ(rep.overall(), Verdict::pass);
}

TEST(Square, MatrixAlgebraRegularBimodule) {
  auto a = catalog::mat2(q);
  auto sq = square(CQ::single(regular_bimodule(a)), 2);
  EXPECT_EQ(certified_dim(sq, 0), a.dim());
  EXPECT_EQ(certified_dim(sq, 1), 0u);
  auto rep = is_rigid(CQ::single(regular_bimodule(a)), 2);
  EXPECT_EQ(rep.overall(), Verdict::pass);
  EXPECT_FALSE(rep.module_isos.empty() && rep.chain_maps.empty());
}

TEST(Square, GroundFieldSquaredFailsByDimension) {
  // over k the square of k^2 is k^2 (x) k^2, four-dimensional
  auto k = catalog::ground(q);
  auto k2 = free_module(enveloping(k), 2);
  auto sq = square(CQ::single(k2), 2);
  EXPECT_EQ(certified_dim(sq, 0), 4u);
  auto rep = is_rigid(CQ::single(k2), 2);
  EXPECT_EQ(rep.overall(), Verdict::fail);
  auto c = rep.find("rho");
  ASSERT_NE(c, nullptr);
  EXPECT_NE(c->witness.find("dimensions differ"), std::string::npos) << c->witness;
}

TEST(Square, DualNumbersRegularBimoduleIsRigid) {
  auto lam = catalog::dual_numbers(q);
  auto rep = is_rigid(CQ::single(regular_bimodule(lam)), 3);
  EXPECT_NE(rep.overall(), Verdict::fail);
}

// --- dualizing complexes

TEST(Dualizing, TriangularDualBimodule) {
  auto a = catalog::triangular2(q);
  auto rep = verify_dualizing(catalog::bimodule(a, "R"), 4);
  EXPECT_EQ(rep.overall(), Verdict::pass);
  for (const char* id : {"i", "ii", "iii.A", "iii.Aop"}) {
    ASSERT_NE(rep.find(id), nullptr);
    EXPECT_EQ(rep.find(id)->verdict, Verdict::pass) << id << ": " << rep.find(id)->detail;
  }
}

TEST(Dualizing, SelfInjectiveRegularBimodule) {
  auto lam = catalog::dual_numbers(q);
  EXPECT_EQ(verify_dualizing(regular_bimodule(lam), 4).overall(), Verdict::pass);
  auto m2 = catalog::mat2(q);
  EXPECT_EQ(verify_dualizing(regular_bimodule(m2), 3).overall(), Verdict::pass);
}

TEST(Dualizing, InflatedSimpleFailsReflexivity) {
  auto a = catalog::triangular2(q);
  auto rep = verify_dualizing(catalog::bimodule(a, "S"), 4);
  EXPECT_EQ(rep.overall(), Verdict::fail);
  auto c = rep.find("iii.A");
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(c->verdict, Verdict::fail);
  EXPECT_FALSE(c->witness.empty());
}

TEST(Dualizing, RegularBimoduleOfTriangularIsNotDualizingOnlyIfInjdimFails) {
  // A itself: finite global dimension, so A is dualizing as well
  auto a = catalog::triangular2(q);
  EXPECT_EQ(verify_dualizing(regular_bimodule(a), 4).overall(), Verdict::pass);
}

TEST(Duality, ModulesAreReflexive) {
  auto a = catalog::triangular2(q);
  auto r = CQ::single(catalog::bimodule(a, "R"));
  for (const char* name : {"simple1", "simple2", "regular", "dual"}) {
    auto rep = duality_check(catalog::module(a, name), r, 4);
    EXPECT_EQ(rep.overall(), Verdict::pass) << name << ": " << rep.find("reflexive")->detail;
  }
  auto lam = catalog::dual_numbers(q);
  auto rep = duality_check(catalog::module(lam, "simple"), CQ::single(regular_bimodule(lam)), 4);
  EXPECT_EQ(rep.overall(), Verdict::pass) << rep.find("reflexive")->detail;
}

// --- tilting and the derived Picard group

TEST(Tilting, RegularAndShifts) {
  auto a = catalog::triangular2(q);
  auto reg = CQ::single(regular_bimodule(a));
  EXPECT_EQ(verify_tilting(exact(reg), exact(reg), 3).overall(), Verdict::pass);
  EXPECT_EQ(verify_tilting(exact(shift(reg, 1)), exact(shift(reg, -1)), 3).overall(), Verdict::pass);
  // A[1] against A[1] is not inverse
  EXPECT_EQ(verify_tilting(exact(shift(reg, 1)), exact(shift(reg, 1)), 3).overall(), Verdict::fail);
}

TEST(Tilting, DualBimoduleAndQuasiInverse) {
  auto a = catalog::triangular2(q);
  auto r = exact(CQ::single(catalog::bimodule(a, "R")));
  auto rv = quasi_inverse(r, 4);
  EXPECT_TRUE(rv.is_exact()) << rv.window_statement();
  EXPECT_EQ(verify_tilting(r, rv, 4).overall(), Verdict::pass);
}

TEST(Tilting, InflatedSimpleIsNotTilting) {
  auto a = catalog::triangular2(q);
  auto s = exact(CQ::single(catalog::bimodule(a, "S")));
  auto sv = quasi_inverse(s, 4);
  EXPECT_EQ(verify_tilting(s, sv, 4).overall(), Verdict::fail);
}

TEST(Picard, CubeOfDualBimoduleIsShift) {
  auto a = catalog::triangular2(q);
  auto r = exact(CQ::single(catalog::bimodule(a, "R")));
  auto r3 = dpic_mul(dpic_mul(r, r, 4), r, 4);
  EXPECT_TRUE(r3.is_exact());
  EXPECT_EQ(dims_of(r3, -2, 1), (std::vector<std::size_t>{0, 3, 0, 0}));
  auto iso = derived_isomorphic(r3, exact(shift(CQ::single(regular_bimodule(a)), 1)), 4);
  EXPECT_TRUE(iso.found()) << iso.reason;
  ASSERT_TRUE(iso.degree.has_value());
  EXPECT_EQ(*iso.degree, -1);
}

TEST(Picard, UnitAndAssociativity) {
  auto a = catalog::triangular2(q);
  auto reg = exact(CQ::single(regular_bimodule(a)));
  auto r = exact(CQ::single(catalog::bimodule(a, "R")));
  auto s = exact(shift(CQ::single(regular_bimodule(a)), 1));
  EXPECT_TRUE(derived_isomorphic(dpic_mul(reg, r, 3), r, 3).found());
  EXPECT_TRUE(derived_isomorphic(dpic_mul(r, reg, 3), r, 3).found());
  auto left = dpic_mul(dpic_mul(r, s, 3), r, 3);
  auto right = dpic_mul(r, dpic_mul(s, r, 3), 3);
  auto iso = derived_isomorphic(left, right, 3);
  EXPECT_TRUE(iso.found()) << iso.reason;
}

TEST(Picard, SquareOfDualBimoduleIsNotConcentrated) {
  auto a = catalog::triangular2(q);
  auto r = exact(CQ::single(catalog::bimodule(a, "R")));
  auto r2 = dpic_mul(r, r, 4);
  EXPECT_EQ(dims_of(r2, -1, 0), (std::vector<std::size_t>{1, 1}));
  auto self = derived_isomorphic(r2, r2, 4);
  EXPECT_TRUE(self.found()) << self.reason;
  EXPECT_FALSE(self.degree.has_value());
  EXPECT_TRUE(self.chain_map.has_value());
  EXPECT_TRUE(derived_isomorphic(r2, r, 4).absent());
}

TEST(DerivedIso, NonFormalComplexAgainstItsResolution) {
  std::mt19937 rng(43);
  auto a = catalog::triangular2(q);
  for (int t = 0; t < 4; ++t) {
    auto x = random_complex(a, rng, 0, 3);
    auto p = k_projective_resolution(x, 3);
    if (!p.complete) continue;
    auto iso = derived_isomorphic(exact(x), exact(p.resolving), 3);
    EXPECT_TRUE(iso.found()) << iso.reason;
  }
}

TEST(DerivedIso, WindowShortfallIsInconclusive) {
  auto lam = catalog::dual_numbers(q);
  auto k = CQ::single(catalog::module(lam, "simple"));
  auto x = rhom(k, k, 3);
  auto iso = derived_isomorphic(x, x, 3);
  EXPECT_EQ(iso.status, DerivedIso<Q>::Status::inconclusive);
}

// --- regularity

TEST(Regularity, CatalogAlgebras) {
  auto check = [](const char* alg, std::optional<int> d) {
    auto rep = regularity_probe(catalog::algebra(q, alg), 4);
    std::string got;
    for (const auto& [k, v] : rep.facts)
      if (k == "d") got = v;
    EXPECT_EQ(got, d ? std::to_string(*d) : std::string("none")) << alg;
    EXPECT_EQ(rep.overall(), d ? Verdict::pass : Verdict::inconclusive) << alg;
  };
  check("mat2", 0);
  check("k", 0);
  check("triangular2", 1);
  check("dualnumbers", std::nullopt);
  check("kxn:3", std::nullopt);
}

}  // namespace
