#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "rrdq/poly.hpp"
#include "rrdq/tseries.hpp"
#include "rrdq/weyl.hpp"

namespace rrdq::hochschild {

/// Linear combination of basis monomials with ground-ring coefficients.
/// An algebra element is always handled in this expanded form.
using Element = std::map<Exponent, TScalar>;

/// An algebra that is free over the ground ring k = Q((t)) on a monomial
/// basis indexed by exponent vectors; the zero exponent is the unit. Every
/// handle is stateless, so one instance can be shared freely.
class Algebra {
 public:
  virtual ~Algebra() = default;

  /// "poly", "weyl", "weyl-loc", "rees", "rees-loc" or "diffop".
  [[nodiscard]] virtual std::string name() const = 0;
  /// Generators indexing basis exponents.
  [[nodiscard]] virtual const Generators& basis_gens() const = 0;
  /// Generators of the t-series form of an element (see to_series).
  [[nodiscard]] virtual const Generators& series_gens() const { return basis_gens(); }
  [[nodiscard]] virtual bool commutative() const = 0;
  /// Whether coefficients may carry negative powers of t.
  [[nodiscard]] virtual bool laurent() const = 0;
  /// Weyl dimension d, or 0 for the commutative handle.
  [[nodiscard]] virtual int dim() const = 0;

  /// Product of two basis monomials.
  [[nodiscard]] virtual Element multiply(const Exponent& a, const Exponent& b) const = 0;

  /// Conversion from the t-series form used in JSON and by the other modules.
  [[nodiscard]] virtual Element from_series(const TSeries& s) const;
  [[nodiscard]] virtual TSeries to_series(const Element& e) const;

  [[nodiscard]] Exponent unit() const { return Exponent(basis_gens().size(), 0); }
  [[nodiscard]] bool is_unit(const Exponent& e) const;
  [[nodiscard]] Element multiply(const Element& a, const Element& b) const;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Commutative polynomial ring on the given generators.
AlgebraPtr poly_algebra(const Generators& gens);
/// Weyl algebra Q[x, xi] with the Moyal product; localized allows t^-1.
AlgebraPtr weyl_algebra(int dim, bool localized, const weyl::StarOptions& opts = {});
/// Rees ring of polynomial differential operators on the basis
/// x^a (t d)^b; series form is sum_p a_p t^p over x1..xd, d1..dd.
AlgebraPtr rees_algebra(int dim, bool localized);
/// Differential operators over Q((t)) on the basis x^a d^b.
AlgebraPtr diffop_algebra(int dim);
/// Handle by JSON discriminator.
AlgebraPtr algebra_by_name(const std::string& name, int dim, const Generators& poly_gens = {});

Element element_scalar(const Algebra& alg, const TScalar& c);
Element element_add(const Element& a, const Element& b);
Element element_scaled(const Element& a, const TScalar& c);

/// Word a_0 (x) ... (x) a_p of basis monomials.
using Word = std::vector<Exponent>;

/// Hochschild chain: a finite linear combination of words of length p+1.
/// Normalized chains (the default) model A (x) (A/k)^p and drop every word
/// with the unit in a slot >= 1. Coefficients are known below trunc().
class Chain {
 public:
  using Terms = std::map<Word, TScalar>;

  Chain(AlgebraPtr alg, int degree, bool normalized = true, int trunc = kExact);

  [[nodiscard]] const AlgebraPtr& algebra() const { return alg_; }
  [[nodiscard]] int degree() const { return degree_; }
  [[nodiscard]] bool normalized() const { return normalized_; }
  [[nodiscard]] int trunc() const { return trunc_; }
  [[nodiscard]] const Terms& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }

  /// Adds c * word.
  void add(const Word& w, const TScalar& c);
  /// Adds c * (e_0 (x) ... (x) e_p), expanded multilinearly.
  void add_elements(const std::vector<Element>& slots, const TScalar& c);

  [[nodiscard]] Chain normalize() const;
  [[nodiscard]] Chain truncated(int n) const;
  [[nodiscard]] Chain scaled(const TScalar& c) const;

  Chain& operator+=(const Chain& o);
  Chain& operator-=(const Chain& o);
  friend Chain operator+(Chain a, const Chain& b) { return a += b; }
  friend Chain operator-(Chain a, const Chain& b) { return a -= b; }

  /// Equality of all coefficients below the common truncation.
  friend bool agree(const Chain& a, const Chain& b) { return (a - b).is_zero(); }

  [[nodiscard]] std::string to_string() const;
  friend std::ostream& operator<<(std::ostream& os, const Chain& c) { return os << c.to_string(); }

 private:
  void check_compatible(const Chain& o) const;
  [[nodiscard]] bool degenerate(const Word& w) const;

  AlgebraPtr alg_;
  int degree_;
  bool normalized_;
  int trunc_;
  Terms terms_;
};

/// Hochschild boundary
///   b(a_0..a_p) = sum_{i<p} (-1)^i a_0..(a_i a_{i+1})..a_p + (-1)^p (a_p a_0) a_1..a_{p-1}.
/// Degree-0 chains map to the zero chain of degree 0.
Chain diff_b(const Chain& c);

/// Connes operator B(a_0..a_p) = sum_i (-1)^{p i} 1 (x) a_i..a_p (x) a_0..a_{i-1}.
Chain diff_B(const Chain& c);

/// Element of C[[u]] or C[[u, 1/u]] of fixed total degree n = p - 2k, where
/// the component at u^k has chain degree n + 2k. Components at exponents
/// below lo are zero; those above hi are unknown.
class UChain {
 public:
  UChain(AlgebraPtr alg, int total_degree, int lo, int hi);

  [[nodiscard]] const AlgebraPtr& algebra() const { return alg_; }
  [[nodiscard]] int total_degree() const { return n_; }
  [[nodiscard]] int lo() const { return lo_; }
  [[nodiscard]] int hi() const { return hi_; }
  [[nodiscard]] bool is_negative_cyclic() const { return lo_ >= 0; }

  /// Component at u^k; a zero chain when absent.
  [[nodiscard]] Chain component(int k) const;
  void set_component(int k, const Chain& c);
  [[nodiscard]] const std::map<int, Chain>& components() const { return comps_; }
  [[nodiscard]] bool is_zero() const;

  friend bool agree(const UChain& a, const UChain& b);
  [[nodiscard]] UChain operator-(const UChain& o) const;

 private:
  AlgebraPtr alg_;
  int n_, lo_, hi_;
  std::map<int, Chain> comps_;
};

/// b + uB, clipped to the input window.
UChain diff_cyclic(const UChain& c);
/// Multiplication by u: window and exponents shift by one, total degree by -2.
UChain u_shift(const UChain& c);
/// Quotient map CC^- -> C, the u^0 component.
Chain u_project(const UChain& c);
/// Places a Hochschild chain at u^0 (window [0, hi]).
UChain u_include(const Chain& c, int hi);

/// Unnormalized signed sum over all permutations of the slots:
///   sum_s sign(s) prefix (x) slot_s(1) (x) ... (x) slot_s(n).
Chain alt_chain(const AlgebraPtr& alg, const Element& prefix, const std::vector<Element>& slots);

/// Alt(1 (x) x_1 ... x_d (x) d_1 ... d_d) over the operator handle.
Chain phi_E(int d);
/// The same cycle over the localized Rees handle: t^-d Alt(1 (x) x.. (x) t d..).
Chain phi_E_rees(int d);
/// Alt(1 (x) x_1 ... x_d (x) xi_1/t ... xi_d/t) over the localized Weyl handle.
Chain phi_A(int d, const weyl::StarOptions& opts = {});

/// Algebra map given on basis monomials, with a ground-ring map on
/// coefficients (identity unless stated otherwise).
struct Morphism {
  std::string name;
  AlgebraPtr source;
  AlgebraPtr target;
  std::function<Element(const Exponent&)> on_basis;
  std::function<TScalar(const TScalar&)> on_scalar;

  [[nodiscard]] Element apply(const Element& e) const;
};

Morphism identity_morphism(const AlgebraPtr& alg);
/// Rees -> Poly(x, xi): x^a (t d)^b -> x^a xi^b, t -> 0.
Morphism sigma_morphism(int dim);
/// Rees -> operators over Q((t)): x^a (t d)^b -> t^|b| x^a d^b.
Morphism iota_morphism(int dim);
/// Operators -> localized Rees: x^a d^b -> t^-|b| x^a (t d)^b.
Morphism iota_inverse_morphism(int dim);
/// Rees -> Weyl: x^a (t d)^b -> x^a * xi^b.
Morphism rees_to_weyl_morphism(int dim, bool localized, const weyl::StarOptions& opts = {});
/// Linear change of Darboux coordinates on the Weyl handle: generator j goes
/// to sum_i m[i][j] v_i with v = (x_1..x_d, xi_1..xi_d).
Morphism weyl_linear_morphism(int dim, bool localized, const weyl::RationalMatrix& m);

/// Applies h slotwise. Throws when h fails to be multiplicative on a pair of
/// cyclically adjacent slots of some word.
Chain induced_chain_map(const Morphism& h, const Chain& c);

}  // namespace rrdq::hochschild
