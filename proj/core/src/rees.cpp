#include "rrdq/rees.hpp"

#include <string>

#include "rrdq/error.hpp"

namespace rrdq::rees {

Generators diffop_gens(int d) {
  require(d >= 1, "operator dimension must be >= 1");
  std::vector<std::string> names;
  for (int i = 1; i <= d; ++i) names.push_back("x" + std::to_string(i));
  for (int i = 1; i <= d; ++i) names.push_back("d" + std::to_string(i));
  return Generators(std::move(names));
}

int diff_degree(const Exponent& e, int dim) {
  int k = 0;
  for (int i = 0; i < dim; ++i) k += e[dim + i];
  return k;
}

DiffOp::DiffOp(int dim) : dim_(dim), terms_(diffop_gens(dim)) {}

DiffOp::DiffOp(int dim, Poly normal_ordered) : dim_(dim), terms_(std::move(normal_ordered)) {
  require(terms_.gens() == diffop_gens(dim), "operator generators must be x1..xd, d1..dd");
}

DiffOp DiffOp::x(int dim, int i) {
  require(i >= 1 && i <= dim, "x index out of range");
  return {dim, Poly::variable(diffop_gens(dim), i - 1)};
}

DiffOp DiffOp::partial(int dim, int i) {
  require(i >= 1 && i <= dim, "d index out of range");
  return {dim, Poly::variable(diffop_gens(dim), dim + i - 1)};
}

DiffOp DiffOp::constant(int dim, const Rational& c) {
  return {dim, Poly::constant(diffop_gens(dim), c)};
}

int DiffOp::order() const {
  int o = -1;
  for (const auto& [e, c] : terms_.terms()) o = std::max(o, diff_degree(e, dim_));
  return o;
}

DiffOp DiffOp::order_part(int k) const {
  Poly p(terms_.gens());
  for (const auto& [e, c] : terms_.terms())
    if (diff_degree(e, dim_) == k) p.add_term(e, c);
  return {dim_, p};
}

DiffOp operator+(const DiffOp& a, const DiffOp& b) {
  require(a.dim_ == b.dim_, "operator dimension mismatch");
  return {a.dim_, a.terms_ + b.terms_};
}

DiffOp operator-(const DiffOp& a, const DiffOp& b) {
  require(a.dim_ == b.dim_, "operator dimension mismatch");
  return {a.dim_, a.terms_ - b.terms_};
}

namespace {

// Adds c * (x^a d^b)(x^c d^e) to `out`, enumerating the multi-index k <= min(b, c).
void monomial_product(const Exponent& l, const Exponent& r, const Rational& coef, int dim,
                      Poly& out) {
  const auto n = static_cast<std::size_t>(dim);
  Exponent k(n, 0);
  while (true) {
    Rational w = coef;
    Exponent res(2 * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      w *= binomial(l[n + i], k[i]) * falling_factorial(r[i], k[i]);
      res[i] = l[i] + r[i] - k[i];
      res[n + i] = l[n + i] - k[i] + r[n + i];
    }
    out.add_term(res, w);
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (k[i] < std::min(l[n + i], r[i])) {
        ++k[i];
        break;
      }
      k[i] = 0;
    }
    if (i == n) break;
  }
}

Poly diffop_poly_mul(const Poly& a, const Poly& b, int dim) {
  Poly out(a.gens());
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) monomial_product(ea, eb, ca * cb, dim, out);
  return out;
}

}  // namespace

DiffOp diffop_mul(const DiffOp& a, const DiffOp& b) {
  require(a.dim() == b.dim(), "operator dimension mismatch");
  return {a.dim(), diffop_poly_mul(a.terms(), b.terms(), a.dim())};
}

TSeries diffop_series_mul(const TSeries& a, const TSeries& b, int dim) {
  check_same_gens(a.zero().gens(), b.zero().gens(), "operator series product");
  require(a.zero().gens() == diffop_gens(dim), "operator series must use x1..xd, d1..dd");
  const int tr = TSeries::product_trunc(a, b);
  TSeries out(a.zero(), a.lower() + b.lower(), tr);
  for (const auto& [ea, ca] : a.coeffs())
    for (const auto& [eb, cb] : b.coeffs())
      if (ea + eb < tr) out.add_term(ea + eb, diffop_poly_mul(ca, cb, dim));
  return out;
}

ReesElement::ReesElement(int dim, TSeries graded) : dim_(dim), graded_(std::move(graded)) {
  require(graded_.zero().gens() == diffop_gens(dim), "Rees element generators must be x1..xd, d1..dd");
  require(graded_.effective_lower() >= 0 || graded_.is_zero(), "Rees element has negative t-degree");
  for (const auto& [p, a] : graded_.coeffs())
    require(DiffOp(dim, a).order() <= p, "Rees element violates order(a_p) <= p at t^" +
                                             std::to_string(p));
}

ReesElement ReesElement::zero(int dim) { return {dim, make_tseries(diffop_gens(dim))}; }

ReesElement operator+(const ReesElement& a, const ReesElement& b) {
  require(a.dim_ == b.dim_, "Rees dimension mismatch");
  return {a.dim_, a.graded_ + b.graded_};
}

ReesElement rees_mul(const ReesElement& a, const ReesElement& b) {
  require(a.dim() == b.dim(), "Rees dimension mismatch");
  return {a.dim(), diffop_series_mul(a.graded(), b.graded(), a.dim())};
}

ReesElement rees_embed(const DiffOp& a, int p) {
  require(a.order() <= p, "operator of order " + std::to_string(a.order()) +
                              " is not in filtration level " + std::to_string(p));
  TSeries s = make_tseries(diffop_gens(a.dim()), std::min(0, p));
  s.add_term(p, a.terms());
  return {a.dim(), s};
}

Poly rees_sigma(const ReesElement& r) {
  const int d = r.dim();
  const Generators target = weyl::darboux_gens(d);
  Poly out(target);
  for (const auto& [p, a] : r.graded().coeffs())
    for (const auto& [e, c] : a.terms())
      if (diff_degree(e, d) == p) out.add_term(e, c);
  return out;
}

TSeries rees_iota(const ReesElement& r) { return r.graded(); }

ReesElement rees_iota_inverse(int dim, const TSeries& localized) {
  require(localized.effective_lower() >= 0, "series with negative t-powers is not in the Rees ring");
  TSeries s(localized.zero(), 0, localized.trunc());
  for (const auto& [p, a] : localized.coeffs()) s.add_term(p, a);
  return {dim, s};
}

weyl::WeylElement localized_to_weyl(int dim, const TSeries& localized,
                                    const weyl::StarOptions& opts) {
  require(localized.zero().gens() == diffop_gens(dim), "operator series must use x1..xd, d1..dd");
  // An unknown tail t^p a_p may carry operators of any order, which would
  // reach every t-exponent of the image.
  require(localized.is_exact(), "map to the Weyl algebra needs an exact operator series");
  const Generators g = weyl::darboux_gens(dim);
  const auto n = static_cast<std::size_t>(dim);
  TSeries acc(Poly(g), std::min(0, localized.lower()));
  for (const auto& [p, a] : localized.coeffs())
    for (const auto& [e, c] : a.terms()) {
      Exponent ex(2 * n, 0), ed(2 * n, 0);
      for (std::size_t i = 0; i < n; ++i) {
        ex[i] = e[i];
        ed[n + i] = e[n + i];
      }
      const int k = diff_degree(e, dim);
      TSeries prod = weyl::star_product(TSeries::term(Poly::monomial(g, ex, c)),
                                        TSeries::term(Poly::monomial(g, ed)),
                                        weyl::DarbouxLayout::standard(dim), opts);
      acc = acc.with_lower(std::min(acc.lower(), p - k));
      acc += prod.shifted(p - k);
    }
  return {dim, acc};
}

weyl::WeylElement rees_to_weyl(const ReesElement& r, const weyl::StarOptions& opts) {
  return localized_to_weyl(r.dim(), r.graded(), opts);
}

}  // namespace rrdq::rees
