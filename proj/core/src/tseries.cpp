#include "rrdq/tseries.hpp"

namespace rrdq {

namespace {
template <class C>
C eval_at_zero(const TruncatedSeries<C>& a) {
  if (!a.coeffs().empty() && a.coeffs().begin()->first < 0)
    fail("set_t_zero: negative t-powers present (value lies outside the t-adic algebra)");
  require(a.trunc() > 0, "set_t_zero: t^0 coefficient is beyond the truncation order");
  return a.coeff(0);
}
}  // namespace

Poly set_t_zero(const TSeries& a) { return eval_at_zero(a); }
Rational set_t_zero(const TScalar& a) { return eval_at_zero(a); }

TSeries scale(const TScalar& s, const TSeries& a) {
  const int lo = s.lower() + a.lower();
  int tr = kExact;
  if (!s.is_exact()) tr = std::min(tr, add_orders(s.trunc(), a.effective_lower()));
  if (!a.is_exact()) tr = std::min(tr, add_orders(a.trunc(), s.effective_lower()));
  require(tr > lo, "empty validity window in scalar product");
  TSeries out(a.zero(), lo, tr);
  for (const auto& [es, cs] : s.coeffs())
    for (const auto& [ea, ca] : a.coeffs())
      if (es + ea < tr) out.add_term(es + ea, ca.scaled(cs));
  return out;
}

}  // namespace rrdq
