#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "rrdq/poly.hpp"
#include "rrdq/tseries.hpp"

namespace rrdq::weyl {

/// Kernel variants. The mutated kernel flips the sign of the
/// -d_eta d_x term in the first-order coefficient only; it exists so the
/// acceptance suite can show that its checks are not vacuous.
struct StarOptions {
  bool mutate_first_order_sign = false;
};

/// Positions of the canonical pairs (x_i, xi_i) inside a generator list.
/// Generators outside every pair are central parameters.
struct DarbouxLayout {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (position, momentum)

  /// Standard layout of darboux_gens(d): x_i at i, xi_i at d + i.
  static DarbouxLayout standard(int d, std::size_t offset = 0);
};

/// x1..xd, xi1..xid.
Generators darboux_gens(int d);

/// Moyal-Weyl product
///   (f*g)(x,xi) = exp((t/2) sum_i (d_xi_i d_y_i - d_eta_i d_x_i)) f(x,xi) g(y,eta)|_{y=x, eta=xi}
/// for series over any ring, with the pairs in `layout` as Darboux coordinates.
/// The exponential is expanded order by order and stops as soon as every
/// bidifferential power annihilates the operands.
TSeries star_product(const TSeries& f, const TSeries& g, const DarbouxLayout& layout,
                     const StarOptions& opts = {});

/// f*g - g*f. The t^0 part cancels identically, which buys one extra known
/// t-order compared to the two products.
TSeries star_commutator(const TSeries& f, const TSeries& g, const DarbouxLayout& layout,
                        const StarOptions& opts = {});

/// Element of the Weyl algebra Q[x, xi][[t]] (or its t-localization) in
/// dimension d.
class WeylElement {
 public:
  WeylElement(int dim, TSeries value);

  static WeylElement zero(int dim, int trunc = kExact);
  static WeylElement constant(int dim, const Rational& c, int trunc = kExact);
  static WeylElement from_poly(int dim, const Poly& p, int t_exp = 0, int trunc = kExact);
  static WeylElement x(int dim, int i, int trunc = kExact);   // 1-based index
  static WeylElement xi(int dim, int i, int trunc = kExact);  // 1-based index
  static WeylElement t_power(int dim, int k, int trunc = kExact);

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] const TSeries& value() const { return value_; }
  [[nodiscard]] int trunc() const { return value_.trunc(); }
  [[nodiscard]] const Generators& gens() const { return value_.zero().gens(); }

  [[nodiscard]] WeylElement truncated(int n) const { return {dim_, value_.truncated(n)}; }
  [[nodiscard]] WeylElement scaled(const Rational& c) const { return {dim_, value_.scaled(c)}; }
  [[nodiscard]] WeylElement shifted(int k) const { return {dim_, value_.shifted(k)}; }

  friend WeylElement operator+(const WeylElement& a, const WeylElement& b);
  friend WeylElement operator-(const WeylElement& a, const WeylElement& b);
  friend bool operator==(const WeylElement& a, const WeylElement& b) {
    return a.dim_ == b.dim_ && a.value_ == b.value_;
  }
  friend bool agree(const WeylElement& a, const WeylElement& b) {
    return a.dim_ == b.dim_ && agree(a.value_, b.value_);
  }
  friend std::ostream& operator<<(std::ostream& os, const WeylElement& a) { return os << a.value_; }

 private:
  int dim_;
  TSeries value_;
};

WeylElement moyal_star(const WeylElement& f, const WeylElement& g, const StarOptions& opts = {});
WeylElement star_commutator(const WeylElement& f, const WeylElement& g,
                            const StarOptions& opts = {});

/// Poisson bracket induced by the quantization: sigma((1/t)[f~, g~]) for the
/// t-independent lifts. With the kernel above, {x, xi} = -1.
Poly poisson(const Poly& f, const Poly& g, int dim, const StarOptions& opts = {});

/// Element of the Lie algebra (1/t)W: a Weyl element whose t-exponents are
/// all >= -1. The bracket is the star commutator.
class LieElement {
 public:
  explicit LieElement(WeylElement value);

  [[nodiscard]] const WeylElement& value() const { return value_; }
  [[nodiscard]] int dim() const { return value_.dim(); }

  friend LieElement operator+(const LieElement& a, const LieElement& b) {
    return LieElement(a.value_ + b.value_);
  }
  friend LieElement operator-(const LieElement& a, const LieElement& b) {
    return LieElement(a.value_ - b.value_);
  }
  friend bool operator==(const LieElement& a, const LieElement& b) { return a.value_ == b.value_; }

 private:
  WeylElement value_;
};

LieElement lie_bracket(const LieElement& a, const LieElement& b, const StarOptions& opts = {});

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Symmetric 2d x 2d form q on (x_1..x_d, xi_1..xi_d) |-> (1/t) v^T q v.
LieElement sp_embed(const RationalMatrix& q, int dim);

/// gl(d) -> (1/t)W, (a_ij) |-> sum a_ij x_i * (xi_j / t), evaluated with the
/// star product. Equals sum a_ij x_i xi_j / t - tr(a)/2.
LieElement gl_embed(const RationalMatrix& a);

/// Standard (uncorrected) embedding sum a_ij x_i xi_j / t.
LieElement gl_embed_standard(const RationalMatrix& a);

/// Weight with deg x_i = deg xi_i = 1 and deg t = 2, for a series holding
/// exactly one monomial.
int graded_weight(const TSeries& monomial);
int graded_weight(const Exponent& e, int t_exp);

}  // namespace rrdq::weyl
