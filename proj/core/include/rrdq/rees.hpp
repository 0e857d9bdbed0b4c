#pragma once

#include "rrdq/poly.hpp"
#include "rrdq/tseries.hpp"
#include "rrdq/weyl.hpp"

namespace rrdq::rees {

/// x1..xd, d1..dd: the storage ring of normal-ordered differential operators.
/// The monomial x^a d^b stands for x^a (d/dx)^b with every x to the left.
Generators diffop_gens(int d);

/// Polynomial differential operator on Q^d in normal order.
class DiffOp {
 public:
  explicit DiffOp(int dim);
  DiffOp(int dim, Poly normal_ordered);

  static DiffOp x(int dim, int i);         // 1-based
  static DiffOp partial(int dim, int i);   // 1-based
  static DiffOp constant(int dim, const Rational& c);

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] const Poly& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.is_zero(); }
  /// Highest total derivative degree; -1 for zero.
  [[nodiscard]] int order() const;
  /// Terms of derivative degree exactly k.
  [[nodiscard]] DiffOp order_part(int k) const;

  friend DiffOp operator+(const DiffOp& a, const DiffOp& b);
  friend DiffOp operator-(const DiffOp& a, const DiffOp& b);
  friend bool operator==(const DiffOp& a, const DiffOp& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }
  [[nodiscard]] std::string to_string() const { return terms_.to_string(); }

 private:
  int dim_;
  Poly terms_;
};

/// Normal-ordered product via the Leibniz rule
///   d^b x^c = sum_k C(b,k) c!/(c-k)! x^(c-k) d^(b-k).
DiffOp diffop_mul(const DiffOp& a, const DiffOp& b);

/// Derivative degree of a single storage monomial.
int diff_degree(const Exponent& e, int dim);

/// Product of t-series with operator coefficients (t central).
TSeries diffop_series_mul(const TSeries& a, const TSeries& b, int dim);

/// Element sum_p a_p t^p of the Rees ring of the order filtration, with
/// order(a_p) <= p for every p.
class ReesElement {
 public:
  ReesElement(int dim, TSeries graded);

  static ReesElement zero(int dim);

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] const TSeries& graded() const { return graded_; }
  [[nodiscard]] bool is_zero() const { return graded_.is_zero(); }

  friend ReesElement operator+(const ReesElement& a, const ReesElement& b);
  friend bool operator==(const ReesElement& a, const ReesElement& b) {
    return a.dim_ == b.dim_ && a.graded_ == b.graded_;
  }

 private:
  int dim_;
  TSeries graded_;
};

ReesElement rees_mul(const ReesElement& a, const ReesElement& b);

/// a t^p; throws when order(a) > p.
ReesElement rees_embed(const DiffOp& a, int p);

/// Principal symbol at t = 0: the order-p part of a_p with d_i -> xi_i.
Poly rees_sigma(const ReesElement& r);

/// Inclusion into E[t, 1/t], i.e. the same series without the order bound.
TSeries rees_iota(const ReesElement& r);

/// Inverse of rees_iota on its image; throws when some a_p has order > p.
ReesElement rees_iota_inverse(int dim, const TSeries& localized);

/// x_i -> x_i, t d_i -> xi_i, t -> t; the normal-ordered monomial
/// x^a (t d)^b goes to x^a * xi^b.
weyl::WeylElement rees_to_weyl(const ReesElement& r, const weyl::StarOptions& opts = {});

/// The same assignment on E[t, 1/t] (d_i -> xi_i / t), landing in the
/// localized Weyl algebra.
weyl::WeylElement localized_to_weyl(int dim, const TSeries& localized,
                                    const weyl::StarOptions& opts = {});

}  // namespace rrdq::rees
