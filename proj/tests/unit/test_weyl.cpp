#include <gtest/gtest.h>

#include "moyal_oracle.hpp"
#include "rrdq/error.hpp"
#include "rrdq/random.hpp"
#include "rrdq/weyl.hpp"

using namespace rrdq;
using namespace rrdq::weyl;

namespace {

WeylElement P(int d, const Poly& p, int t = 0) { return WeylElement::from_poly(d, p, t); }

Poly var(int d, const char* name) { return Poly::variable(darboux_gens(d), name); }
Poly cst(int d, long n, long den = 1) { return Poly::constant(darboux_gens(d), Rational(n, den)); }

WeylElement from_terms(int d, std::initializer_list<std::pair<int, Poly>> terms) {
  TSeries s = make_tseries(darboux_gens(d), std::min(0, terms.begin()->first));
  for (const auto& [e, p] : terms) s = s.with_lower(std::min(s.lower(), e)), s.add_term(e, p);
  return {d, s};
}

RationalMatrix random_matrix(Rng& rng, int n, bool symmetric) {
  RationalMatrix m(n, std::vector<Rational>(n, Rational(0)));
  for (int i = 0; i < n; ++i)
    for (int j = symmetric ? i : 0; j < n; ++j) {
      m[i][j] = Rational(rng.uniform(-3, 3));
      if (symmetric) m[j][i] = m[i][j];
    }
  return m;
}

RationalMatrix mat_mul(const RationalMatrix& a, const RationalMatrix& b) {
  const std::size_t n = a.size();
  RationalMatrix c(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

RationalMatrix mat_sub(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix c = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) c[i][j] -= b[i][j];
  return c;
}

}  // namespace

TEST(MoyalStar, Examples) {
  const int d = 1;
  Poly x = var(d, "x1"), xi = var(d, "xi1");
  EXPECT_EQ(moyal_star(P(d, x), P(d, xi)), from_terms(d, {{0, x * xi}, {1, cst(d, -1, 2)}}));
  Poly f = x * x * xi + cst(d, 3);
  EXPECT_EQ(moyal_star(WeylElement::constant(d, Rational(1)), P(d, f)), P(d, f));
  EXPECT_EQ(moyal_star(P(d, x * x), P(d, xi * xi)),
            from_terms(d, {{0, x * x * xi * xi}, {1, cst(d, -2) * x * xi}, {2, cst(d, 1, 2)}}));
}

TEST(MoyalStar, DimensionMismatchIsError) {
  EXPECT_THROW(moyal_star(WeylElement::x(1, 1), WeylElement::x(2, 1)), Error);
}

TEST(MoyalStar, AgreesWithLiteralExponential) {
  Rng rng(21);
  for (int k = 0; k < 60; ++k) {
    const int d = static_cast<int>(rng.uniform(1, 2));
    const Generators g = darboux_gens(d);
    TSeries f = random_tseries(rng, g, 4, 4, 1, kExact);
    TSeries h = random_tseries(rng, g, 4, 4, 1, kExact);
    WeylElement got = moyal_star({d, f}, {d, h});
    EXPECT_EQ(got.value(), oracle::moyal(f, h, d)) << f << " * " << h;
  }
}

TEST(MoyalStar, Associative) {
  Rng rng(22);
  for (int k = 0; k < 30; ++k) {
    const int d = static_cast<int>(rng.uniform(1, 2));
    const Generators g = darboux_gens(d);
    WeylElement a{d, random_tseries(rng, g, 3, 3, 1, 6)};
    WeylElement b{d, random_tseries(rng, g, 3, 3, 1, 6)};
    WeylElement c{d, random_tseries(rng, g, 3, 3, 1, 6)};
    EXPECT_TRUE(agree(moyal_star(moyal_star(a, b), c), moyal_star(a, moyal_star(b, c))));
  }
}

TEST(MoyalStar, UnitAndCenter) {
  Rng rng(23);
  const Generators g = darboux_gens(2);
  for (int k = 0; k < 20; ++k) {
    WeylElement f{2, random_tseries(rng, g, 4, 4, 2, 5)};
    WeylElement one = WeylElement::constant(2, Rational(1));
    WeylElement t = WeylElement::t_power(2, 1);
    EXPECT_EQ(moyal_star(one, f), f);
    EXPECT_EQ(moyal_star(f, one), f);
    EXPECT_EQ(moyal_star(t, f), moyal_star(f, t));
    EXPECT_TRUE(agree(moyal_star(t, f), f.shifted(1)));
  }
}

TEST(MoyalStar, RespectsGradedWeight) {
  Rng rng(24);
  const Generators g = darboux_gens(2);
  for (int k = 0; k < 40; ++k) {
    Exponent ea(4), eb(4);
    for (auto& v : ea) v = static_cast<int>(rng.uniform(0, 2));
    for (auto& v : eb) v = static_cast<int>(rng.uniform(0, 2));
    const int ta = static_cast<int>(rng.uniform(0, 1)), tb = static_cast<int>(rng.uniform(0, 1));
    WeylElement a = P(2, Poly::monomial(g, ea), ta), b = P(2, Poly::monomial(g, eb), tb);
    const int w = graded_weight(ea, ta) + graded_weight(eb, tb);
    const WeylElement ab = moyal_star(a, b);
    for (const auto& [e, c] : ab.value().coeffs())
      for (const auto& [m, r] : c.terms()) EXPECT_EQ(graded_weight(m, e), w);
  }
}

TEST(StarCommutator, CanonicalRelations) {
  for (int d = 1; d <= 3; ++d)
    for (int i = 1; i <= d; ++i)
      for (int j = 1; j <= d; ++j) {
        WeylElement c = star_commutator(WeylElement::x(d, i), WeylElement::xi(d, j));
        WeylElement expect = i == j ? WeylElement::t_power(d, 1).scaled(Rational(-1))
                                    : WeylElement::zero(d);
        EXPECT_TRUE(agree(c, expect));
        EXPECT_TRUE(star_commutator(WeylElement::x(d, i), WeylElement::x(d, j)).value().is_zero());
        EXPECT_TRUE(star_commutator(WeylElement::xi(d, i), WeylElement::xi(d, j)).value().is_zero());
      }
}

TEST(StarCommutator, CentralT) {
  Rng rng(25);
  WeylElement f{1, random_tseries(rng, darboux_gens(1), 4, 4, 2, 6)};
  EXPECT_TRUE(star_commutator(WeylElement::t_power(1, 1), f).value().is_zero());
}

TEST(StarCommutator, GainsOneOrder) {
  WeylElement a = WeylElement::x(1, 1, 3), b = WeylElement::xi(1, 1, 3);
  EXPECT_EQ(moyal_star(a, b).trunc(), 3);
  EXPECT_EQ(star_commutator(a, b).trunc(), 4);
}

TEST(MutatedKernel, BreaksRelationsAndAssociativity) {
  StarOptions bad{true};
  WeylElement c = star_commutator(WeylElement::x(1, 1), WeylElement::xi(1, 1), bad);
  EXPECT_FALSE(agree(c, WeylElement::t_power(1, 1).scaled(Rational(-1))));
  Rng rng(30);
  int broken = 0;
  for (int k = 0; k < 20; ++k) {
    const Generators g = darboux_gens(1);
    WeylElement a{1, random_tseries(rng, g, 4, 3, 0, 6)};
    WeylElement b{1, random_tseries(rng, g, 4, 3, 0, 6)};
    WeylElement e{1, random_tseries(rng, g, 4, 3, 0, 6)};
    if (!agree(moyal_star(moyal_star(a, b, bad), e, bad), moyal_star(a, moyal_star(b, e, bad), bad)))
      ++broken;
  }
  EXPECT_GT(broken, 0);
}

TEST(Poisson, Examples) {
  const int d = 1;
  Poly x = var(d, "x1"), xi = var(d, "xi1");
  EXPECT_EQ(poisson(x, xi, d), cst(d, -1));
  Poly f = x * x * xi + xi;
  EXPECT_TRUE(poisson(f, f, d).is_zero());
  EXPECT_EQ(poisson(x * x, xi, d), cst(d, -2) * x);
}

TEST(Poisson, JacobiAndLeibniz) {
  Rng rng(26);
  const Generators g = darboux_gens(2);
  for (int k = 0; k < 30; ++k) {
    Poly f = random_poly(rng, g, 3, 3), h = random_poly(rng, g, 3, 3), e = random_poly(rng, g, 3, 3);
    Poly jac = poisson(f, poisson(h, e, 2), 2) + poisson(h, poisson(e, f, 2), 2) +
               poisson(e, poisson(f, h, 2), 2);
    EXPECT_TRUE(jac.is_zero());
    EXPECT_EQ(poisson(f, h * e, 2), poisson(f, h, 2) * e + h * poisson(f, e, 2));
  }
}

TEST(LieBracket, Examples) {
  const int d = 1;
  Poly x = var(d, "x1"), xi = var(d, "xi1");
  LieElement a(P(d, x * x, -1)), b(P(d, xi * xi, -1));
  LieElement ab = lie_bracket(a, b);
  EXPECT_EQ(ab.value(), P(d, cst(d, -4) * x * xi, -1));

  LieElement c(WeylElement::t_power(d, -1));
  EXPECT_TRUE(lie_bracket(c, b).value().value().is_zero());

  LieElement h(P(d, x * xi, -1)), e(P(d, x, -1));
  EXPECT_EQ(lie_bracket(h, e).value(), P(d, x, -1));
}

TEST(LieBracket, RejectsDeepPoles) {
  EXPECT_THROW(LieElement(WeylElement::t_power(1, -2)), Error);
}

TEST(LieBracket, CentralExtension) {
  Rng rng(27);
  const Generators g = darboux_gens(2);
  for (int k = 0; k < 20; ++k) {
    TSeries cs = make_tseries(g, -1);
    cs.add_term(-1, Poly::constant(g, rng.rational()));
    cs.add_term(1, Poly::constant(g, rng.rational()));
    LieElement c(WeylElement(2, cs));
    LieElement x(WeylElement(2, random_tseries(rng, g, 3, 3, 2, kExact).shifted(-1)));
    EXPECT_TRUE(lie_bracket(c, x).value().value().is_zero());
  }
}

TEST(SpEmbed, Examples) {
  RationalMatrix q(2, std::vector<Rational>(2, Rational(0)));
  q[0][1] = q[1][0] = Rational(1, 2);
  Poly x = var(1, "x1"), xi = var(1, "xi1");
  EXPECT_EQ(sp_embed(q, 1).value(), P(1, x * xi, -1));
  RationalMatrix zero(2, std::vector<Rational>(2, Rational(0)));
  EXPECT_TRUE(sp_embed(zero, 1).value().value().is_zero());
  q[0][1] = Rational(1);
  EXPECT_THROW(sp_embed(q, 1), Error);
}

TEST(SpEmbed, BracketMatchesMatrixBracket) {
  // X_q = 2 Pi q with Pi(x_i, xi_i) = -1 and Pi(xi_i, x_i) = 1 represents
  // ad of the quadratic element on linear functions; brackets of quadratic
  // elements then correspond to q3 = 2 (q1 Pi q2 - q2 Pi q1).
  Rng rng(28);
  const int d = 2;
  RationalMatrix pi(4, std::vector<Rational>(4, Rational(0)));
  for (int i = 0; i < d; ++i) {
    pi[i][d + i] = Rational(-1);
    pi[d + i][i] = Rational(1);
  }
  for (int k = 0; k < 30; ++k) {
    RationalMatrix q1 = random_matrix(rng, 4, true), q2 = random_matrix(rng, 4, true);
    RationalMatrix q3 = mat_sub(mat_mul(mat_mul(q1, pi), q2), mat_mul(mat_mul(q2, pi), q1));
    for (auto& row : q3)
      for (auto& v : row) v *= Rational(2);
    EXPECT_EQ(lie_bracket(sp_embed(q1, d), sp_embed(q2, d)).value(), sp_embed(q3, d).value());
  }
}

TEST(GlEmbed, Examples) {
  Poly x = var(1, "x1"), xi = var(1, "xi1");
  RationalMatrix one{{Rational(1)}};
  EXPECT_EQ(gl_embed(one).value(), from_terms(1, {{-1, x * xi}, {0, cst(1, -1, 2)}}));
  RationalMatrix zero{{Rational(0)}};
  EXPECT_TRUE(gl_embed(zero).value().value().is_zero());
}

TEST(GlEmbed, LieMorphismAndStandardEmbedding) {
  Rng rng(29);
  for (int k = 0; k < 30; ++k) {
    RationalMatrix a = random_matrix(rng, 2, false), b = random_matrix(rng, 2, false);
    RationalMatrix ab = mat_sub(mat_mul(a, b), mat_mul(b, a));
    EXPECT_EQ(lie_bracket(gl_embed(a), gl_embed(b)).value(), gl_embed(ab).value());
    EXPECT_EQ(lie_bracket(gl_embed_standard(a), gl_embed_standard(b)).value(),
              lie_bracket(gl_embed(a), gl_embed(b)).value());
    WeylElement diff = gl_embed(a).value() - gl_embed_standard(a).value();
    for (const auto& [e, c] : diff.value().coeffs()) EXPECT_TRUE(c.is_constant());
  }
}

TEST(GradedWeight, Examples) {
  const Generators g = darboux_gens(1);
  EXPECT_EQ(graded_weight(TSeries::term(Poly::monomial(g, {1, 1}))), 2);
  EXPECT_EQ(graded_weight(TSeries::term(Poly::constant(g, Rational(1)), 1)), 2);
  EXPECT_EQ(graded_weight(TSeries::term(Poly::monomial(g, {2, 0}), -1)), 0);
  TSeries two = TSeries::term(Poly::monomial(g, {1, 0})) + TSeries::term(Poly::monomial(g, {0, 1}));
  EXPECT_THROW(graded_weight(two), Error);
}
