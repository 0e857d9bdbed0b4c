#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "rrdq/error.hpp"
#include "rrdq/poly.hpp"
#include "rrdq/rational.hpp"

namespace rrdq {

/// Truncation order of a value with no unknown tail.
inline constexpr int kExact = std::numeric_limits<int>::max() / 4;

/// Saturating addition of t-orders: anything at or beyond kExact stays exact.
constexpr int add_orders(int a, int b) {
  if (a >= kExact || b >= kExact) return kExact;
  const long s = static_cast<long>(a) + b;
  return s >= kExact ? kExact : static_cast<int>(s);
}

namespace detail {
inline bool coeff_is_zero(const Rational& c) { return c.is_zero(); }
inline bool coeff_is_zero(const Poly& c) { return c.is_zero(); }
inline std::string coeff_string(const Rational& c) { return c.pretty(); }
inline std::string coeff_string(const Poly& c) { return c.to_string(); }
}  // namespace detail

/// Truncated Laurent series in the central variable t,
///
///   sum_{lower <= e < trunc} c_e t^e  +  O(t^trunc),
///
/// with coefficients of type C (Poly for algebra elements, Rational for the
/// ground ring). Coefficients at exponents >= trunc are unknown and never
/// stored; trunc == kExact marks a value with no tail.
template <class C>
class TruncatedSeries {
 public:
  using Coeffs = std::map<int, C>;

  TruncatedSeries() = default;
  explicit TruncatedSeries(C zero, int lower = 0, int trunc = kExact)
      : zero_(std::move(zero)), lower_(lower), trunc_(trunc) {
    require(detail::coeff_is_zero(zero_), "series prototype must be zero");
  }

  /// c * t^e, exact unless a finite trunc is given.
  static TruncatedSeries term(const C& c, int e = 0, int trunc = kExact) {
    TruncatedSeries s(zero_like(c), std::min(0, e), trunc);
    s.add_term(e, c);
    return s;
  }

  [[nodiscard]] const C& zero() const { return zero_; }
  [[nodiscard]] int lower() const { return lower_; }
  [[nodiscard]] int trunc() const { return trunc_; }
  [[nodiscard]] bool is_exact() const { return trunc_ >= kExact; }
  [[nodiscard]] const Coeffs& coeffs() const { return coeffs_; }
  [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }

  /// Smallest exponent that may carry a nonzero coefficient, known or not.
  /// kExact for an exact zero.
  [[nodiscard]] int effective_lower() const {
    int e = trunc_;
    if (!coeffs_.empty()) e = std::min(e, coeffs_.begin()->first);
    return e;
  }
  /// Largest stored exponent, or lower-1 when empty.
  [[nodiscard]] int max_exponent() const {
    return coeffs_.empty() ? lower_ - 1 : coeffs_.rbegin()->first;
  }

  [[nodiscard]] C coeff(int e) const {
    require(e < trunc_, "coefficient requested beyond truncation order");
    auto it = coeffs_.find(e);
    return it == coeffs_.end() ? zero_ : it->second;
  }

  /// Adds c t^e; silently dropped when e >= trunc.
  void add_term(int e, const C& c) {
    require(e >= lower_, "t-exponent below the series lower bound");
    if (e >= trunc_ || detail::coeff_is_zero(c)) return;
    auto it = coeffs_.find(e);
    if (it == coeffs_.end()) {
      coeffs_.emplace(e, c);
    } else {
      it->second = it->second + c;
      if (detail::coeff_is_zero(it->second)) coeffs_.erase(it);
    }
  }

  /// Copy with truncation lowered to min(trunc, n).
  [[nodiscard]] TruncatedSeries truncated(int n) const {
    TruncatedSeries out(zero_, std::min(lower_, n), std::min(trunc_, n));
    for (const auto& [e, c] : coeffs_)
      if (e < out.trunc_) out.coeffs_.emplace(e, c);
    return out;
  }

  /// Copy with a lower declared bound (never raises it).
  [[nodiscard]] TruncatedSeries with_lower(int l) const {
    require(l <= effective_lower(), "with_lower would cut stored terms");
    TruncatedSeries out = *this;
    out.lower_ = l;
    return out;
  }

  /// Multiplication by t^k.
  [[nodiscard]] TruncatedSeries shifted(int k) const {
    TruncatedSeries out(zero_, lower_ + k, add_orders(trunc_, k));
    for (const auto& [e, c] : coeffs_) out.coeffs_.emplace(e + k, c);
    return out;
  }

  template <class F>
  [[nodiscard]] auto map_coeffs(F&& f) const {
    using D = decltype(f(std::declval<const C&>()));
    TruncatedSeries<D> out(f(zero_), lower_, trunc_);
    for (const auto& [e, c] : coeffs_) out.add_term(e, f(c));
    return out;
  }

  [[nodiscard]] TruncatedSeries scaled(const Rational& r) const {
    TruncatedSeries out(zero_, lower_, trunc_);
    if (r.is_zero()) return out;
    for (const auto& [e, c] : coeffs_) out.coeffs_.emplace(e, c * r);
    return out;
  }

  TruncatedSeries& operator+=(const TruncatedSeries& o) {
    check_compatible(o, "series add");
    lower_ = std::min(lower_, o.lower_);
    trunc_ = std::min(trunc_, o.trunc_);
    std::erase_if(coeffs_, [&](const auto& kv) { return kv.first >= trunc_; });
    for (const auto& [e, c] : o.coeffs_) add_term(e, c);
    return *this;
  }
  TruncatedSeries& operator-=(const TruncatedSeries& o) { return *this += o.scaled(Rational(-1)); }
  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator-(const TruncatedSeries& a) { return a.scaled(Rational(-1)); }

  /// Window of a product: exponents at or beyond it may receive contributions
  /// from an unknown tail of either factor.
  static int product_trunc(const TruncatedSeries& a, const TruncatedSeries& b) {
    int t = kExact;
    if (!a.is_exact()) t = std::min(t, add_orders(a.trunc_, b.effective_lower()));
    if (!b.is_exact()) t = std::min(t, add_orders(b.trunc_, a.effective_lower()));
    return t;
  }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.check_compatible(b, "series mul");
    const int lo = a.lower_ + b.lower_;
    const int tr = product_trunc(a, b);
    require(tr > lo, "empty validity window in series product");
    TruncatedSeries out(a.zero_, lo, tr);
    for (const auto& [ea, ca] : a.coeffs_)
      for (const auto& [eb, cb] : b.coeffs_)
        if (ea + eb < tr) out.add_term(ea + eb, ca * cb);
    return out;
  }

  /// Structural equality: same window and same stored coefficients.
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.lower_ == b.lower_ && a.trunc_ == b.trunc_ && a.coeffs_ == b.coeffs_ &&
           a.zero_ == b.zero_;
  }

  /// Equality of all coefficients below the common truncation order.
  friend bool agree(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (!(a.zero_ == b.zero_)) return false;
    const int t = std::min(a.trunc_, b.trunc_);
    auto below = [t](const Coeffs& m) {
      Coeffs r;
      for (const auto& [e, c] : m)
        if (e < t) r.emplace(e, c);
      return r;
    };
    return below(a.coeffs_) == below(b.coeffs_);
  }

  [[nodiscard]] std::string to_string() const {
    std::ostringstream os;
    if (coeffs_.empty()) os << "0";
    bool first = true;
    for (const auto& [e, c] : coeffs_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << detail::coeff_string(c) << ")";
      if (e != 0) os << "*t^" << e;
    }
    if (!is_exact()) os << " + O(t^" << trunc_ << ")";
    return os.str();
  }
  friend std::ostream& operator<<(std::ostream& os, const TruncatedSeries& s) {
    return os << s.to_string();
  }

 private:
  static C zero_like(const C& c) {
    if constexpr (std::is_same_v<C, Poly>) {
      return Poly(c.gens());
    } else {
      return C(0);
    }
  }

  void check_compatible(const TruncatedSeries& o, std::string_view op) const {
    if constexpr (std::is_same_v<C, Poly>) check_same_gens(zero_.gens(), o.zero_.gens(), op);
  }

  C zero_{};
  int lower_ = 0;
  int trunc_ = kExact;
  Coeffs coeffs_;
};

/// Series with polynomial coefficients; the carrier of Weyl-algebra elements
/// and of the t-adic model of deformation quantizations.
using TSeries = TruncatedSeries<Poly>;
/// Scalars of the ground ring Q((t)), truncated.
using TScalar = TruncatedSeries<Rational>;

inline TSeries make_tseries(const Generators& gens, int lower = 0, int trunc = kExact) {
  return TSeries(Poly(gens), lower, trunc);
}

inline TScalar scalar(const Rational& c, int t_exp = 0) { return TScalar::term(c, t_exp); }

/// Evaluation at t = 0. Throws when negative t-powers are present or the
/// t^0 coefficient lies beyond the truncation order.
Poly set_t_zero(const TSeries& a);
Rational set_t_zero(const TScalar& a);

/// Coefficientwise product of a ground-ring scalar and a polynomial series.
TSeries scale(const TScalar& s, const TSeries& a);

}  // namespace rrdq
