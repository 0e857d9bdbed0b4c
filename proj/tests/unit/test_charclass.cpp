#include <gtest/gtest.h>

#include "rrdq/charclass.hpp"
#include "rrdq/error.hpp"
#include "rrdq/random.hpp"
#include "series_oracle.hpp"

using namespace rrdq;
using namespace rrdq::charclass;

namespace {

Poly cpoly(int d, std::initializer_list<std::pair<Exponent, Rational>> terms) {
  Poly p(chern_gens(d));
  for (const auto& [e, c] : terms) p.add_term(e, c);
  return p;
}

}  // namespace

TEST(RootSeries, MatchBernoulliOracle) {
  EXPECT_EQ(todd_root_series(12), oracle::todd_root(12));
  EXPECT_EQ(a_hat_root_series(12), oracle::a_hat_root(12));
}

TEST(AHat, Examples) {
  ChernRootSeries a1 = a_hat(1, 2);
  EXPECT_EQ(a1.component(0), Poly::constant(root_gens(1), Rational(1)));
  EXPECT_EQ(a1.terms(), Poly::constant(root_gens(1), Rational(1)) +
                            Poly::monomial(root_gens(1), {2}, Rational(-1, 24)));
  ChernClassExpr a2 = to_chern_basis(a_hat(2, 2));
  // 1 - (c1^2 - 2 c2)/24
  EXPECT_EQ(a2.terms(), cpoly(2, {{{0, 0}, Rational(1)}, {{2, 0}, Rational(-1, 24)},
                                  {{0, 1}, Rational(1, 12)}}));
}

TEST(Todd, Examples) {
  for (int d = 2; d <= 3; ++d) {
    ChernClassExpr t = to_chern_basis(todd(d, 3));
    Exponent c1(d, 0), c1sq(d, 0), c2(d, 0), c1c2(d, 0), zero(d, 0);
    c1[0] = 1;
    c1sq[0] = 2;
    c2[1] = 1;
    c1c2[0] = 1;
    c1c2[1] = 1;
    EXPECT_EQ(t.terms().coeff(zero), Rational(1));
    EXPECT_EQ(t.terms().coeff(c1), Rational(1, 2));
    EXPECT_EQ(t.terms().coeff(c1sq), Rational(1, 12));
    EXPECT_EQ(t.terms().coeff(c2), Rational(1, 12));
    EXPECT_EQ(t.terms().coeff(c1c2), Rational(1, 24));
  }
  EXPECT_EQ(todd(1, 1).terms(), Poly::constant(root_gens(1), Rational(1)) +
                                    Poly::monomial(root_gens(1), {1}, Rational(1, 2)));
}

TEST(ExpClass, Examples) {
  ChernClassExpr zero(2, 2, Poly(chern_gens(2)));
  EXPECT_EQ(exp_class(zero, 2).terms(), Poly::constant(root_gens(2), Rational(1)));
  ChernClassExpr e = to_chern_basis(exp_class(half_first_chern(2, 2), 2));
  EXPECT_EQ(e.terms(), cpoly(2, {{{0, 0}, Rational(1)}, {{1, 0}, Rational(1, 2)},
                                 {{2, 0}, Rational(1, 8)}}));
  ChernClassExpr theta(2, 4, cpoly(2, {{{1, 0}, Rational(1, 3)}, {{0, 1}, Rational(2)}}));
  ChernClassExpr minus(2, 4, theta.terms().scaled(Rational(-1)));
  EXPECT_EQ((exp_class(theta, 4) * exp_class(minus, 4)).terms(),
            Poly::constant(root_gens(2), Rational(1)));
  ChernClassExpr bad(1, 2, cpoly(1, {{{0}, Rational(1)}}));
  EXPECT_THROW(exp_class(bad, 2), Error);
}

TEST(ToChernBasis, Examples) {
  const Generators r = root_gens(2);
  auto x = [&](int i) { return Poly::variable(r, static_cast<std::size_t>(i)); };
  EXPECT_EQ(to_chern_basis(ChernRootSeries(2, 4, x(0) + x(1))).terms(), cpoly(2, {{{1, 0}, Rational(1)}}));
  EXPECT_EQ(to_chern_basis(ChernRootSeries(2, 4, x(0) * x(1))).terms(), cpoly(2, {{{0, 1}, Rational(1)}}));
  EXPECT_EQ(to_chern_basis(ChernRootSeries(2, 4, x(0) * x(0) + x(1) * x(1))).terms(),
            cpoly(2, {{{2, 0}, Rational(1)}, {{0, 1}, Rational(-2)}}));
  EXPECT_THROW(to_chern_basis(ChernRootSeries(2, 4, x(0))), Error);
}

TEST(ToChernBasis, RoundTripOnRandomSymmetricPolynomials) {
  Rng rng(71);
  for (int k = 0; k < 40; ++k) {
    const int d = static_cast<int>(rng.uniform(1, 3));
    // Random polynomial in c, mapped to roots by the oracle's e_k.
    Poly c = random_poly(rng, chern_gens(d), 4, 4);
    std::vector<Poly> images;
    for (int i = 1; i <= d; ++i) images.push_back(oracle::elementary(i, root_gens(d)));
    ChernClassExpr expr(d, 6, c);
    ChernRootSeries roots(d, 6, expr.terms().substitute(images));
    EXPECT_EQ(to_chern_basis(roots), expr);
    EXPECT_EQ(to_root_basis(expr), roots);
  }
}

TEST(Multiplicativity, FactorsOverRoots) {
  for (int d = 1; d <= 3; ++d) {
    EXPECT_EQ(a_hat(d, 6).terms(), oracle::product_over_roots(oracle::a_hat_root(6), d, 6));
    EXPECT_EQ(todd(d, 6).terms(), oracle::product_over_roots(oracle::todd_root(6), d, 6));
    EXPECT_EQ(a_hat(d, 6).terms().constant_term(), Rational(1));
    EXPECT_EQ(todd(d, 6).terms().constant_term(), Rational(1));
  }
}

TEST(RRIdentity, HoldsForSmallDimensions) {
  for (int d = 1; d <= 3; ++d)
    for (int D = 0; D <= (d == 3 ? 6 : 8); ++D) EXPECT_TRUE(rr_identity_check(d, D).equal) << d << " " << D;
}

TEST(RRIdentity, OracleProductAgrees) {
  // The per-root identity through the independent oracle series.
  auto lhs = oracle::product_over_roots(oracle::a_hat_root(8), 1, 8) *
             oracle::product_over_roots(oracle::half_exp_root(8), 1, 8);
  Poly l(root_gens(1));
  for (const auto& [e, c] : lhs.terms())
    if (e[0] <= 8) l.add_term(e, c);
  EXPECT_EQ(l, oracle::product_over_roots(oracle::todd_root(8), 1, 8));
}

TEST(RRIdentity, FailsWithoutTheta) {
  ChernClassExpr zero(1, 2, Poly(chern_gens(1)));
  IdentityReport rep = rr_identity_check(1, 2, zero);
  EXPECT_FALSE(rep.equal);
  bool degree_two_found = false;
  for (const auto& dsc : rep.discrepancies)
    if (dsc.basis == "chern" && dsc.degree == 2) {
      degree_two_found = true;
      EXPECT_EQ(dsc.lhs, Rational(0));
      EXPECT_EQ(dsc.rhs, Rational(1, 2));
    }
  EXPECT_TRUE(degree_two_found);
}
