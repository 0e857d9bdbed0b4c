#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "rrdq/poly.hpp"
#include "rrdq/tseries.hpp"
#include "rrdq/weyl.hpp"

namespace rrdq::fedosov {

/// Coordinates of a chart together with the fiber variables. Base
/// coordinates carry a weight (0 for z_i on X, 1 for the cotangent
/// coordinates p_i on T*X); the differential of a coordinate has the same
/// weight. Fiber variables zh_i, xh_i have weight 1 and t has weight 2.
class Chart {
 public:
  Chart(int d, std::vector<std::string> base_names, std::vector<int> base_weights);

  /// No base coordinates; values are plain fields / Weyl elements.
  static std::shared_ptr<const Chart> fiber_only(int d);
  /// z1..zd.
  static std::shared_ptr<const Chart> base(int d);
  /// z1..zd, p1..pd: the cotangent bundle chart.
  static std::shared_ptr<const Chart> cotangent(int d);

  [[nodiscard]] int d() const { return d_; }
  [[nodiscard]] std::size_t nbase() const { return base_.size(); }
  [[nodiscard]] const Generators& base_gens() const { return base_; }
  [[nodiscard]] int base_weight(std::size_t i) const { return weights_[i]; }
  /// base..., zh1..zhd.
  [[nodiscard]] const Generators& vf_gens() const { return vf_; }
  /// base..., zh1..zhd, xh1..xhd.
  [[nodiscard]] const Generators& rhat_gens() const { return rhat_; }
  [[nodiscard]] const weyl::DarbouxLayout& layout() const { return layout_; }
  /// Index of zh_i (0-based i) in vf_gens and rhat_gens.
  [[nodiscard]] std::size_t zh(int i) const { return nbase() + static_cast<std::size_t>(i); }
  /// Index of xh_i in rhat_gens.
  [[nodiscard]] std::size_t xh(int i) const { return nbase() + static_cast<std::size_t>(d_ + i); }

  friend bool operator==(const Chart& a, const Chart& b) {
    return a.d_ == b.d_ && a.base_ == b.base_ && a.weights_ == b.weights_;
  }

 private:
  int d_;
  Generators base_;
  std::vector<int> weights_;
  Generators vf_;
  Generators rhat_;
  weyl::DarbouxLayout layout_;
};

using ChartPtr = std::shared_ptr<const Chart>;

/// Formal vector field sum_i P_i d/dzh_i with coefficients in base and fiber
/// variables. Known for zh-degree < fiber_trunc. The weight of P d/dzh_i is
/// deg P - 1.
class FormalVectorField {
 public:
  FormalVectorField(ChartPtr chart, std::vector<Poly> comps, int fiber_trunc = kExact);

  static FormalVectorField zero(ChartPtr chart, int fiber_trunc = kExact);
  /// P d/dzh_i (0-based i).
  static FormalVectorField component(ChartPtr chart, int i, const Poly& p, int fiber_trunc = kExact);

  [[nodiscard]] const ChartPtr& chart() const { return chart_; }
  [[nodiscard]] const std::vector<Poly>& comps() const { return comps_; }
  [[nodiscard]] int fiber_trunc() const { return fiber_trunc_; }
  [[nodiscard]] bool is_exact() const { return fiber_trunc_ >= kExact; }
  [[nodiscard]] bool is_zero() const;

  [[nodiscard]] FormalVectorField zero_like() const { return zero(chart_, kExact); }
  [[nodiscard]] FormalVectorField scaled(const Rational& c) const;
  [[nodiscard]] FormalVectorField partial_base(std::size_t j) const;
  /// Coefficientwise d/dzh_i.
  [[nodiscard]] FormalVectorField partial_fiber(int i) const;
  /// Smallest weight of a stored term, kExact for zero.
  [[nodiscard]] int min_weight() const;
  [[nodiscard]] FormalVectorField weight_truncated(int w) const;
  [[nodiscard]] FormalVectorField weight_component(int w) const;
  /// Weight of the highest known terms + 1, i.e. fiber_trunc - 1.
  [[nodiscard]] int valid_weight() const;

  friend FormalVectorField operator+(const FormalVectorField& a, const FormalVectorField& b);
  friend FormalVectorField operator-(const FormalVectorField& a, const FormalVectorField& b) {
    return a + b.scaled(Rational(-1));
  }
  friend bool operator==(const FormalVectorField& a, const FormalVectorField& b) {
    return *a.chart_ == *b.chart_ && a.comps_ == b.comps_ && a.fiber_trunc_ == b.fiber_trunc_;
  }
  [[nodiscard]] std::string to_string() const;

 private:
  ChartPtr chart_;
  std::vector<Poly> comps_;
  int fiber_trunc_;
};

/// Commutator of derivations. A truncated operand limits the result to the
/// degrees its known part determines.
FormalVectorField vf_bracket(const FormalVectorField& u, const FormalVectorField& v);

/// Element of (1/t) R-hat: a t-series over rhat_gens; the bracket is the
/// fiberwise star commutator.
class RHatElement {
 public:
  RHatElement(ChartPtr chart, TSeries value);

  static RHatElement zero(ChartPtr chart, int t_trunc = kExact);
  /// Central element f(base) t^k.
  static RHatElement central(ChartPtr chart, const Poly& f_of_base, int t_exp = 0,
                             int t_trunc = kExact);

  [[nodiscard]] const ChartPtr& chart() const { return chart_; }
  [[nodiscard]] const TSeries& value() const { return value_; }
  [[nodiscard]] bool is_zero() const { return value_.is_zero(); }
  /// No fiber variables anywhere.
  [[nodiscard]] bool is_central() const;

  [[nodiscard]] RHatElement zero_like() const { return zero(chart_, value_.trunc()); }
  [[nodiscard]] RHatElement scaled(const Rational& c) const { return {chart_, value_.scaled(c)}; }
  [[nodiscard]] RHatElement partial_base(std::size_t j) const;
  [[nodiscard]] int min_weight() const;
  [[nodiscard]] RHatElement weight_truncated(int w) const;
  [[nodiscard]] RHatElement weight_component(int w) const;

  friend RHatElement operator+(const RHatElement& a, const RHatElement& b);
  friend RHatElement operator-(const RHatElement& a, const RHatElement& b) {
    return a + b.scaled(Rational(-1));
  }
  friend bool operator==(const RHatElement& a, const RHatElement& b) {
    return *a.chart_ == *b.chart_ && a.value_ == b.value_;
  }
  friend bool agree(const RHatElement& a, const RHatElement& b) {
    return *a.chart_ == *b.chart_ && agree(a.value_, b.value_);
  }
  [[nodiscard]] std::string to_string() const { return value_.to_string(); }

 private:
  ChartPtr chart_;
  TSeries value_;
};

RHatElement rhat_bracket(const RHatElement& a, const RHatElement& b);

/// Exact bracket used inside forms (truncation is tracked by the form).
FormalVectorField exact_bracket(const FormalVectorField& u, const FormalVectorField& v);
RHatElement exact_bracket(const RHatElement& a, const RHatElement& b);

/// Differential form on a chart with values in a graded Lie algebra V.
/// Terms are known for total weight (value weight plus the weights of the
/// differentials) below valid().
template <class V>
class LieValuedForm {
 public:
  using Wedge = std::vector<int>;
  using Terms = std::map<Wedge, V>;

  LieValuedForm(ChartPtr chart, V zero, int valid = kExact)
      : chart_(std::move(chart)), zero_(std::move(zero)), valid_(valid) {}

  [[nodiscard]] const ChartPtr& chart() const { return chart_; }
  [[nodiscard]] const V& zero() const { return zero_; }
  [[nodiscard]] const Terms& terms() const { return terms_; }
  [[nodiscard]] int valid() const { return valid_; }
  [[nodiscard]] bool is_exact() const { return valid_ >= kExact; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }

  [[nodiscard]] int wedge_weight(const Wedge& w) const {
    int s = 0;
    for (int i : w) s += chart_->base_weight(static_cast<std::size_t>(i));
    return s;
  }

  /// Adds v dz_{i1} ^ ... ^ dz_{ik} for indices in any order.
  void add_term(const Wedge& indices, const V& v) {
    Wedge w = indices;
    int sign = 1;
    for (std::size_t i = 0; i < w.size(); ++i)
      for (std::size_t j = 0; j + 1 < w.size() - i; ++j)
        if (w[j] > w[j + 1]) {
          std::swap(w[j], w[j + 1]);
          sign = -sign;
        }
    for (std::size_t j = 0; j + 1 < w.size(); ++j)
      if (w[j] == w[j + 1]) return;
    V val = (sign > 0 ? v : v.scaled(Rational(-1)));
    if (!is_exact()) val = val.weight_truncated(valid_ - wedge_weight(w));
    if (val.is_zero()) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
      terms_.emplace(w, val);
      return;
    }
    it->second = it->second + val;
    if (it->second.is_zero()) terms_.erase(it);
  }

  /// Smallest weight that may carry a nonzero term, known or not.
  [[nodiscard]] int effective_min_weight() const {
    int m = valid_;
    for (const auto& [w, v] : terms_) m = std::min(m, add_orders(v.min_weight(), wedge_weight(w)));
    return m;
  }

  /// -1 for zero; throws for mixed degrees.
  [[nodiscard]] int form_degree() const {
    int deg = -1;
    for (const auto& [w, v] : terms_) {
      require(deg < 0 || deg == static_cast<int>(w.size()), "form has mixed degrees");
      deg = static_cast<int>(w.size());
    }
    return deg;
  }

  [[nodiscard]] LieValuedForm truncated(int valid) const {
    LieValuedForm out(chart_, zero_, std::min(valid_, valid));
    for (const auto& [w, v] : terms_) out.add_term(w, v);
    return out;
  }

  [[nodiscard]] LieValuedForm weight_component(int weight) const {
    require(weight < valid_, "weight component beyond the known window");
    LieValuedForm out(chart_, zero_);
    for (const auto& [w, v] : terms_) out.add_term(w, v.weight_component(weight - wedge_weight(w)));
    return out;
  }

  [[nodiscard]] LieValuedForm scaled(const Rational& c) const {
    LieValuedForm out(chart_, zero_, valid_);
    for (const auto& [w, v] : terms_) out.add_term(w, v.scaled(c));
    return out;
  }

  template <class F>
  [[nodiscard]] LieValuedForm map_values(F&& f) const {
    LieValuedForm out(chart_, zero_, valid_);
    for (const auto& [w, v] : terms_) out.add_term(w, f(v));
    return out;
  }

  friend LieValuedForm operator+(const LieValuedForm& a, const LieValuedForm& b) {
    require(*a.chart_ == *b.chart_, "forms on different charts");
    LieValuedForm out = a.truncated(b.valid_);
    for (const auto& [w, v] : b.terms_) out.add_term(w, v);
    return out;
  }
  friend LieValuedForm operator-(const LieValuedForm& a, const LieValuedForm& b) {
    return a + b.scaled(Rational(-1));
  }

  [[nodiscard]] std::string to_string() const {
    std::string s;
    for (const auto& [w, v] : terms_) {
      if (!s.empty()) s += " + ";
      s += "[" + v.to_string() + "]";
      for (int i : w) s += " d" + chart_->base_gens()[static_cast<std::size_t>(i)];
    }
    if (s.empty()) s = "0";
    if (!is_exact()) s += " + O(weight " + std::to_string(valid_) + ")";
    return s;
  }

 private:
  ChartPtr chart_;
  V zero_;
  int valid_;
  Terms terms_;
};

using VFForm = LieValuedForm<FormalVectorField>;
using RForm = LieValuedForm<RHatElement>;

template <class V>
LieValuedForm<V> exterior_d(const LieValuedForm<V>& a) {
  LieValuedForm<V> out(a.chart(), a.zero(), a.valid());
  for (const auto& [w, v] : a.terms())
    for (std::size_t j = 0; j < a.chart()->nbase(); ++j) {
      typename LieValuedForm<V>::Wedge u{static_cast<int>(j)};
      u.insert(u.end(), w.begin(), w.end());
      out.add_term(u, v.partial_base(j));
    }
  return out;
}

/// [alpha (x) X, beta (x) Y] = alpha ^ beta (x) [X, Y].
template <class V>
LieValuedForm<V> form_bracket(const LieValuedForm<V>& a, const LieValuedForm<V>& b) {
  require(*a.chart() == *b.chart(), "forms on different charts");
  int valid = kExact;
  if (!a.is_exact()) valid = std::min(valid, add_orders(a.valid(), b.effective_min_weight()));
  if (!b.is_exact()) valid = std::min(valid, add_orders(b.valid(), a.effective_min_weight()));
  LieValuedForm<V> out(a.chart(), a.zero(), valid);
  for (const auto& [wa, va] : a.terms())
    for (const auto& [wb, vb] : b.terms()) {
      typename LieValuedForm<V>::Wedge w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out.add_term(w, exact_bracket(va, vb));
    }
  return out;
}

/// dA + (1/2)[A, A] for a 1-form A.
template <class V>
LieValuedForm<V> curvature(const LieValuedForm<V>& a) {
  require(a.form_degree() <= 1, "curvature needs a 1-form");
  return exterior_d(a) + form_bracket(a, a).scaled(Rational(1, 2));
}

using PolyMatrix = std::vector<std::vector<Poly>>;

/// gl(d)-valued 1-form sum_i dz_i (x) M_i on the base chart z1..zd, with
/// E_ab realized as the field zh_a d/dzh_b.
struct GlConnection {
  ChartPtr chart;
  std::vector<PolyMatrix> coeff;  // coeff[i] multiplies dz_i
};

GlConnection gl_connection(int d, const std::vector<PolyMatrix>& coeff);

VFForm gl_to_vf(const GlConnection& a0);
/// A^(-1) = -sum_i dz_i (x) d/dzh_i.
VFForm kazhdan_minus_one(const ChartPtr& chart);

/// delta_0 = sum_i dz_i ^ d/dzh_i on vector-field forms.
VFForm delta0(const VFForm& a);
/// Homotopy: kappa = sum_i zh_i contraction with d/dz_i, divided by
/// (zh-degree + form degree) on each homogeneous piece.
VFForm delta0_inverse(const VFForm& a);

/// A = A^(-1) + A0 + sum_{k>=1} A^(k), with A^(k+1) = delta0_inverse of the
/// weight-k curvature of the partial sum. Known for weight < K, so its
/// curvature is known for zh-degree < K. Throws when an obstruction is
/// nonzero (torsion in A0).
VFForm kazhdan_assemble(const GlConnection& a0, int K);

/// P d/dzh_j -> P * (xh_j / t) = P xh_j / t - (1/2) dP/dzh_j.
RHatElement i_map(const FormalVectorField& v, int t_trunc = kExact);
RForm i_map(const VFForm& a, int t_trunc = kExact);
/// Plain Weyl-algebra image of a base-free field (zh -> x, xh -> xi).
weyl::LieElement i_map_lie(const FormalVectorField& v);

/// (1/2) tr(A0) as a central 1-form.
RForm half_trace(const GlConnection& a0);
/// i(A) + (1/2) tr(A0).
RForm lift_connection(const VFForm& a, const GlConnection& a0, int t_trunc = kExact);
/// (1/2) tr(dA0 + A0 ^ A0) by matrix arithmetic, as a central 2-form.
RForm half_trace_curvature(const GlConnection& a0);

/// sum_ab M_ab zh_a xh_b / t.
RHatElement standard_embedding(const ChartPtr& chart, const PolyMatrix& m);

/// Polynomial matrix with constant nonzero determinant.
struct TransitionDatum {
  PolyMatrix g;
};

PolyMatrix matrix_inverse(const PolyMatrix& g);
PolyMatrix matrix_mul(const PolyMatrix& a, const PolyMatrix& b);
/// dg g^-1 as a gl-valued 1-form.
GlConnection maurer_cartan(const ChartPtr& chart, const PolyMatrix& g);

/// Action of g on fields: conjugation by zh_k -> sum_i g_ik zh_i.
FormalVectorField gauge_field(const PolyMatrix& g, const FormalVectorField& v);
/// The induced symplectic action on R-hat: zh as above, xh_k -> sum_j (g^-1)_kj xh_j.
RHatElement gauge_rhat(const PolyMatrix& g, const RHatElement& a);

struct TransitionReport {
  bool lie_identity = false;    // i(A_a) = std(dg g^-1) - tr(dg g^-1)/2 + g.i(A_b)
  bool trace_identity = false;  // tr A0_a / 2 = tr(dg g^-1)/2 + tr A0_b / 2
  bool lifted_identity = false; // lift_a - g.lift_b = std(dg g^-1)
  int valid = kExact;
};

/// A_a = dg g^-1 + g.A_b, A0_a = dg g^-1 + g A0_b g^-1.
TransitionReport transition_check(const VFForm& a_b, const GlConnection& a0_b,
                                  const TransitionDatum& g, int t_trunc = kExact);

/// Pullback of a form on the base chart to the cotangent chart.
RForm pullback_to_cotangent(const RForm& a);

/// Psi = exp(ad X) with X = -sum p_i zh_i / t, i.e. xh_i -> xh_i + p_i.
/// The exponential series terminates since ad X lowers the xh-degree.
RHatElement psi_apply(const RHatElement& a);
RHatElement psi_inverse_apply(const RHatElement& a);

/// Conjugation of the connection d + A by Psi on the cotangent chart:
/// Psi(A) - dX. A may live on the base chart (it is pulled back first).
RForm psi_conjugate(const RForm& a);

}  // namespace rrdq::fedosov
