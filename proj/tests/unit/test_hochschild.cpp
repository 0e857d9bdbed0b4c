#include <gtest/gtest.h>

#include "hochschild_oracle.hpp"
#include "rrdq/error.hpp"
#include "rrdq/random.hpp"
#include "rrdq/rees.hpp"

using namespace rrdq;
using namespace rrdq::hochschild;

namespace {

Exponent mono(std::initializer_list<int> e) { return Exponent(e); }
TScalar one() { return scalar(Rational(1)); }

std::vector<AlgebraPtr> test_algebras() {
  return {poly_algebra(Generators{"a", "b", "c"}), weyl_algebra(1, false), weyl_algebra(2, false)};
}

}  // namespace

TEST(DiffB, DegreeOneIsCommutator) {
  AlgebraPtr w = weyl_algebra(1, false);
  Chain c(w, 1);
  c.add({mono({1, 0}), mono({0, 1})}, one());
  // x (x) xi -> x*xi - xi*x = -t, a scalar in degree 0.
  Chain expect(w, 0);
  expect.add({mono({0, 0})}, scalar(Rational(-1), 1));
  EXPECT_TRUE(agree(diff_b(c), expect)) << diff_b(c);
}

TEST(DiffB, WeylDegreeTwoExample) {
  AlgebraPtr w = weyl_algebra(1, false);
  Chain c(w, 2);
  c.add({mono({0, 0}), mono({1, 0}), mono({0, 1})}, one());
  // x (x) xi - 1 (x) (x*xi) + xi (x) x; the scalar part of x*xi is dropped.
  Chain expect(w, 1);
  expect.add({mono({1, 0}), mono({0, 1})}, one());
  expect.add({mono({0, 1}), mono({1, 0})}, one());
  expect.add({mono({0, 0}), mono({1, 1})}, scalar(Rational(-1)));
  EXPECT_TRUE(agree(diff_b(c), expect)) << diff_b(c);
}

TEST(DiffB, DegreeZeroGivesZero) {
  AlgebraPtr w = weyl_algebra(1, false);
  Chain c(w, 0);
  c.add({mono({1, 1})}, one());
  EXPECT_TRUE(diff_b(c).is_zero());
}

TEST(DiffBigB, Examples) {
  AlgebraPtr p = poly_algebra(Generators{"a", "b"});
  Chain c0(p, 0);
  c0.add({mono({1, 0})}, one());
  Chain e0(p, 1);
  e0.add({mono({0, 0}), mono({1, 0})}, one());
  EXPECT_TRUE(agree(diff_B(c0), e0));

  Chain c1(p, 1);
  c1.add({mono({1, 0}), mono({0, 1})}, one());
  Chain e1(p, 2);
  e1.add({mono({0, 0}), mono({1, 0}), mono({0, 1})}, one());
  e1.add({mono({0, 0}), mono({0, 1}), mono({1, 0})}, scalar(Rational(-1)));
  EXPECT_TRUE(agree(diff_B(c1), e1));

  Chain c2(p, 1);
  c2.add({mono({0, 0}), mono({0, 1})}, one());
  EXPECT_TRUE(diff_B(c2).is_zero());
}

TEST(HochschildProperties, DifferentialsSquareToZeroAndAnticommute) {
  Rng rng(51);
  for (const auto& alg : test_algebras()) {
    for (int k = 0; k < 40; ++k) {
      const int deg = static_cast<int>(rng.uniform(0, 3));
      Chain c = random_chain(rng, alg, deg, 3, 2, alg->commutative() ? 0 : 1);
      EXPECT_TRUE(diff_b(diff_b(c)).is_zero()) << alg->name() << ": " << c;
      EXPECT_TRUE(diff_B(diff_B(c)).is_zero()) << alg->name() << ": " << c;
      if (deg >= 1) EXPECT_TRUE((diff_b(diff_B(c)) + diff_B(diff_b(c))).is_zero()) << c;
    }
  }
}

TEST(HochschildProperties, NormalizationConsistency) {
  Rng rng(52);
  for (const auto& alg : test_algebras()) {
    for (int k = 0; k < 30; ++k) {
      const int deg = static_cast<int>(rng.uniform(1, 3));
      Chain raw(alg, deg, false);
      const Chain src = random_chain(rng, alg, deg, 3, 2);
      for (const auto& [w, c] : src.terms()) {
        Word v = w;
        // Plant units in random slots so some words are degenerate.
        if (rng.coin()) v[rng.uniform(1, deg)] = alg->unit();
        raw.add(v, c);
      }
      EXPECT_TRUE(agree(diff_b(raw).normalize(), diff_b(raw.normalize())));
      EXPECT_TRUE(agree(diff_B(raw).normalize(), diff_B(raw.normalize())));
    }
  }
}

TEST(HochschildProperties, BoundaryMatchesElementLevelOracle) {
  Rng rng(53);
  AlgebraPtr w = weyl_algebra(1, false);
  const weyl::DarbouxLayout layout = weyl::DarbouxLayout::standard(1);
  auto mul = [&](const TSeries& a, const TSeries& b) { return weyl::star_product(a, b, layout); };
  for (int k = 0; k < 30; ++k) {
    std::vector<oracle::ElementWord> words;
    for (int n = 0; n < 2; ++n) {
      oracle::ElementWord ew{rng.rational(), {}};
      for (int s = 0; s < 3; ++s)
        ew.slots.push_back(random_tseries(rng, weyl::darboux_gens(1), 2, 2, 1, kExact));
      words.push_back(ew);
    }
    Chain c = oracle::expand(w, words);
    EXPECT_TRUE(agree(diff_b(c), oracle::expand(w, oracle::boundary(words, mul))));
  }
}

TEST(CyclicComplex, SquaresToZeroInWindow) {
  Rng rng(54);
  for (const auto& alg : test_algebras()) {
    for (int k = 0; k < 10; ++k) {
      const int n = static_cast<int>(rng.uniform(0, 2));
      UChain c(alg, n, 0, 2);
      for (int u = 0; u <= 2; ++u) c.set_component(u, random_chain(rng, alg, n + 2 * u, 2, 2));
      UChain dd = diff_cyclic(diff_cyclic(c));
      EXPECT_TRUE(dd.is_zero());
      EXPECT_EQ(dd.hi(), 2);
    }
  }
}

TEST(CyclicComplex, DegreeZeroExample) {
  AlgebraPtr p = poly_algebra(Generators{"a"});
  Chain a0(p, 0);
  a0.add({mono({2})}, one());
  UChain c = u_include(a0, 1);
  UChain d = diff_cyclic(c);
  Chain expect(p, 1);
  expect.add({mono({0}), mono({2})}, one());
  EXPECT_TRUE(agree(d.component(1), expect));
  EXPECT_EQ(d.lo(), 1);
}

TEST(CyclicComplex, ShortExactSequence) {
  Rng rng(55);
  AlgebraPtr w = weyl_algebra(1, false);
  for (int k = 0; k < 10; ++k) {
    UChain c(w, 2, 0, 2);
    for (int u = 0; u <= 2; ++u) c.set_component(u, random_chain(rng, w, 2 + 2 * u, 2, 2));
    // The quotient carries b alone.
    EXPECT_TRUE(agree(u_project(diff_cyclic(c)), diff_b(u_project(c))));
    // u is a chain map, injective, and its image is the kernel of the projection.
    UChain uc = u_shift(c);
    EXPECT_TRUE(agree(diff_cyclic(uc), u_shift(diff_cyclic(c))));
    EXPECT_FALSE(uc.is_zero());
    EXPECT_TRUE(u_project(uc).is_zero());
    EXPECT_EQ(uc.lo(), 1);
  }
}

TEST(AltChain, Examples) {
  AlgebraPtr dop = diffop_algebra(1);
  Element x{{mono({1, 0}), one()}}, d{{mono({0, 1}), one()}}, unit{{mono({0, 0}), one()}};
  Chain c = alt_chain(dop, unit, {x, d});
  Chain expect(dop, 2);
  expect.add({mono({0, 0}), mono({1, 0}), mono({0, 1})}, one());
  expect.add({mono({0, 0}), mono({0, 1}), mono({1, 0})}, scalar(Rational(-1)));
  EXPECT_TRUE(agree(c, expect));
  EXPECT_TRUE(alt_chain(dop, unit, {x, x}).is_zero());
  EXPECT_EQ(phi_E(2).terms().size(), 24u);
  const Chain phi2 = phi_E(2);
  for (const auto& [w, coef] : phi2.terms())
    EXPECT_TRUE(coef == scalar(Rational(1)) || coef == scalar(Rational(-1))) << coef;
  EXPECT_EQ(phi_E(1).terms().size(), 2u);
}

TEST(TraceDensity, PhiIsACycle) {
  for (int d = 1; d <= 2; ++d) {
    EXPECT_TRUE(diff_b(phi_E(d)).is_zero()) << d;
    EXPECT_TRUE(diff_b(phi_E_rees(d)).is_zero()) << d;
    EXPECT_TRUE(diff_b(phi_A(d)).is_zero()) << d;
  }
}

TEST(TraceDensity, CycleOracleOnOperators) {
  for (int d = 1; d <= 2; ++d) {
    const Generators g = rees::diffop_gens(d);
    std::vector<TSeries> slots;
    for (int i = 0; i < 2 * d; ++i) slots.push_back(TSeries::term(Poly::variable(g, i)));
    auto words = oracle::alt_words(TSeries::term(Poly::constant(g, Rational(1))), slots);
    auto mul = [d](const TSeries& a, const TSeries& b) { return rees::diffop_series_mul(a, b, d); };
    AlgebraPtr alg = diffop_algebra(d);
    EXPECT_TRUE(agree(oracle::expand(alg, words), phi_E(d)));
    EXPECT_TRUE(oracle::expand(alg, oracle::boundary(words, mul)).is_zero());
  }
}

TEST(TraceDensity, CycleOracleOnWeyl) {
  for (int d = 1; d <= 2; ++d) {
    const Generators g = weyl::darboux_gens(d);
    std::vector<TSeries> slots;
    for (int i = 0; i < d; ++i) slots.push_back(TSeries::term(Poly::variable(g, i)));
    for (int i = 0; i < d; ++i) slots.push_back(TSeries::term(Poly::variable(g, d + i), -1));
    auto words = oracle::alt_words(TSeries::term(Poly::constant(g, Rational(1))), slots);
    const auto layout = weyl::DarbouxLayout::standard(d);
    auto mul = [&](const TSeries& a, const TSeries& b) { return weyl::star_product(a, b, layout); };
    AlgebraPtr alg = weyl_algebra(d, true);
    EXPECT_TRUE(agree(oracle::expand(alg, words), phi_A(d)));
    EXPECT_TRUE(oracle::expand(alg, oracle::boundary(words, mul)).is_zero());
  }
}

TEST(TraceDensity, PhiAIsScaledAltOfGenerators) {
  for (int d = 1; d <= 2; ++d) {
    AlgebraPtr alg = weyl_algebra(d, true);
    std::vector<Element> slots;
    for (int i = 0; i < 2 * d; ++i) {
      Exponent e(2 * d, 0);
      e[i] = 1;
      slots.push_back({{e, one()}});
    }
    Chain plain = alt_chain(alg, element_scalar(*alg, one()), slots);
    EXPECT_TRUE(agree(phi_A(d), plain.scaled(scalar(Rational(1), -d))));
  }
}

TEST(TraceDensity, LinearSymplecticChangeKeepsCycle) {
  // (x, xi) -> (xi, -x)
  weyl::RationalMatrix m{{Rational(0), Rational(-1)}, {Rational(1), Rational(0)}};
  Morphism h = weyl_linear_morphism(1, true, m);
  Chain img = induced_chain_map(h, phi_A(1));
  EXPECT_FALSE(img.is_zero());
  EXPECT_TRUE(diff_b(img).is_zero());
}

TEST(TraceDensity, NonSymplecticChangeIsRejected) {
  weyl::RationalMatrix m{{Rational(2), Rational(0)}, {Rational(0), Rational(1)}};
  EXPECT_THROW(induced_chain_map(weyl_linear_morphism(1, true, m), phi_A(1)), Error);
}

TEST(ChainMaps, ReesToWeylSendsPhiEToPhiA) {
  for (int d = 1; d <= 2; ++d) {
    Chain rees_phi = induced_chain_map(iota_inverse_morphism(d), phi_E(d));
    EXPECT_TRUE(agree(rees_phi, phi_E_rees(d)));
    Chain img = induced_chain_map(rees_to_weyl_morphism(d, true), rees_phi);
    EXPECT_TRUE(agree(img, phi_A(d))) << img;
  }
}

TEST(ChainMaps, IdentityIsIdentity) {
  Rng rng(56);
  AlgebraPtr w = weyl_algebra(2, false);
  Chain c = random_chain(rng, w, 2, 4, 2, 1);
  EXPECT_TRUE(agree(induced_chain_map(identity_morphism(w), c), c));
}

TEST(ChainMaps, CommuteWithDifferentials) {
  Rng rng(57);
  const int d = 1;
  AlgebraPtr r = rees_algebra(d, false);
  std::vector<Morphism> maps{sigma_morphism(d), iota_morphism(d), rees_to_weyl_morphism(d, false)};
  for (const auto& h : maps)
    for (int k = 0; k < 15; ++k) {
      Chain c = random_chain(rng, r, static_cast<int>(rng.uniform(1, 2)), 3, 2, 1);
      EXPECT_TRUE(agree(induced_chain_map(h, diff_b(c)), diff_b(induced_chain_map(h, c)))) << h.name;
      EXPECT_TRUE(agree(induced_chain_map(h, diff_B(c)), diff_B(induced_chain_map(h, c)))) << h.name;
    }
}

TEST(ChainMaps, SourceMismatchIsError) {
  EXPECT_THROW(induced_chain_map(sigma_morphism(1), phi_A(1)), Error);
}

TEST(Chain, WindowsAndLaurentGuard) {
  AlgebraPtr w = weyl_algebra(1, false);
  Chain c(w, 0);
  EXPECT_THROW(c.add({mono({1, 0})}, scalar(Rational(1), -1)), Error);
  c.add({mono({1, 0})}, TScalar::term(Rational(1), 0, 2));
  EXPECT_EQ(c.trunc(), 2);
  c.add({mono({1, 0})}, scalar(Rational(5), 3));
  EXPECT_EQ(c.terms().begin()->second.coeffs().size(), 1u);
}
