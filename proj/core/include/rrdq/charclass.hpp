#pragma once

#include <string>
#include <vector>

#include "rrdq/poly.hpp"

namespace rrdq::charclass {

/// Degrees are algebraic: a Chern root x_i has degree 1 and c_i has degree i.
/// The cohomological degree is twice that.

/// Coefficients s_0..s_D of a one-variable power series.
using RootCoefficients = std::vector<Rational>;

/// x / (1 - e^{-x}).
RootCoefficients todd_root_series(int D);
/// x / (e^{x/2} - e^{-x/2}).
RootCoefficients a_hat_root_series(int D);
/// Exact multiplicative inverse of a series with nonzero constant term.
RootCoefficients invert_series(const RootCoefficients& s);

/// x1..xd.
Generators root_gens(int d);
/// c1..cd.
Generators chern_gens(int d);

/// Symmetric polynomial in the Chern roots, truncated at total degree D.
class ChernRootSeries {
 public:
  ChernRootSeries(int dim, int max_degree, Poly terms);

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] int max_degree() const { return max_degree_; }
  [[nodiscard]] const Poly& terms() const { return terms_; }
  /// Homogeneous component of algebraic degree k.
  [[nodiscard]] Poly component(int k) const;

  friend ChernRootSeries operator*(const ChernRootSeries& a, const ChernRootSeries& b);
  friend bool operator==(const ChernRootSeries& a, const ChernRootSeries& b) {
    return a.dim_ == b.dim_ && a.max_degree_ == b.max_degree_ && a.terms_ == b.terms_;
  }

 private:
  int dim_;
  int max_degree_;
  Poly terms_;
};

/// Polynomial in c1..cd with deg c_i = i, truncated at degree D.
class ChernClassExpr {
 public:
  ChernClassExpr(int dim, int max_degree, Poly terms);

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] int max_degree() const { return max_degree_; }
  [[nodiscard]] const Poly& terms() const { return terms_; }
  [[nodiscard]] Poly component(int k) const;

  friend bool operator==(const ChernClassExpr& a, const ChernClassExpr& b) {
    return a.dim_ == b.dim_ && a.max_degree_ == b.max_degree_ && a.terms_ == b.terms_;
  }

 private:
  int dim_;
  int max_degree_;
  Poly terms_;
};

/// Weighted degree of a c-monomial.
int chern_degree(const Exponent& e);

/// Keeps terms of degree <= D; `weighted` selects the c-grading.
Poly truncate_degree(const Poly& p, int D, bool weighted);

/// prod_i s(x_i) truncated at degree D.
ChernRootSeries multiplicative_series(const RootCoefficients& s, int d, int D);

ChernRootSeries a_hat(int d, int D);
ChernRootSeries todd(int d, int D);
/// sum_k theta^k / k!, truncated at D and rewritten in roots. theta must have
/// no degree-0 part.
ChernRootSeries exp_class(const ChernClassExpr& theta, int D);

/// Throws rrdq::Error on a non-symmetric input.
ChernClassExpr to_chern_basis(const ChernRootSeries& s);
/// c_i -> e_i(x1..xd).
ChernRootSeries to_root_basis(const ChernClassExpr& c);

/// c1 / 2.
ChernClassExpr half_first_chern(int d, int D);

struct Discrepancy {
  std::string basis;  // "roots" or "chern"
  Exponent monomial;
  int degree;  // cohomological
  Rational lhs;
  Rational rhs;
};

struct IdentityReport {
  bool equal = true;
  std::vector<Discrepancy> discrepancies;
};

/// Compares a_hat(d, D) * exp_class(theta, D) with todd(d, D) coefficient by
/// coefficient in the root basis and in the c-basis.
IdentityReport rr_identity_check(int d, int D, const ChernClassExpr& theta);
IdentityReport rr_identity_check(int d, int D);

}  // namespace rrdq::charclass
