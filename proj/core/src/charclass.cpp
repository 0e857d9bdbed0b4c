#include "rrdq/charclass.hpp"

#include "rrdq/error.hpp"

namespace rrdq::charclass {

namespace {

int total_degree(const Exponent& e) {
  int k = 0;
  for (int v : e) k += v;
  return k;
}

Generators indexed_gens(const std::string& prefix, int d) {
  require(d >= 1, "number of Chern roots must be >= 1");
  std::vector<std::string> names;
  for (int i = 1; i <= d; ++i) names.push_back(prefix + std::to_string(i));
  return Generators(std::move(names));
}

bool is_symmetric(const Poly& p) {
  const std::size_t d = p.nvars();
  for (std::size_t i = 0; i + 1 < d; ++i)
    for (const auto& [e, c] : p.terms()) {
      Exponent f = e;
      std::swap(f[i], f[i + 1]);
      if (!(p.coeff(f) == c)) return false;
    }
  return true;
}

Poly elementary(int k, const Generators& roots) {
  // Coefficient of s^k in prod_i (1 + s x_i), built incrementally.
  const int d = static_cast<int>(roots.size());
  std::vector<Poly> e(static_cast<std::size_t>(d) + 1, Poly(roots));
  e[0] = Poly::constant(roots, Rational(1));
  for (int i = 0; i < d; ++i)
    for (int j = std::min(i + 1, d); j >= 1; --j) e[j] += e[j - 1] * Poly::variable(roots, i);
  return e[k];
}

}  // namespace

RootCoefficients invert_series(const RootCoefficients& s) {
  require(!s.empty() && !s[0].is_zero(), "series inversion needs a nonzero constant term");
  RootCoefficients inv(s.size(), Rational(0));
  inv[0] = Rational(1) / s[0];
  for (std::size_t n = 1; n < s.size(); ++n) {
    Rational acc(0);
    for (std::size_t k = 1; k <= n; ++k) acc += s[k] * inv[n - k];
    inv[n] = -acc / s[0];
  }
  return inv;
}

RootCoefficients todd_root_series(int D) {
  // (1 - e^{-x}) / x = sum_n (-1)^n x^n / (n+1)!
  RootCoefficients h;
  for (int n = 0; n <= D; ++n) h.push_back(Rational(n % 2 ? -1 : 1) / factorial(n + 1));
  return invert_series(h);
}

RootCoefficients a_hat_root_series(int D) {
  // (e^{x/2} - e^{-x/2}) / x = sum_k x^{2k} / (4^k (2k+1)!)
  RootCoefficients h(static_cast<std::size_t>(D) + 1, Rational(0));
  Rational pow4(1);
  for (int k = 0; 2 * k <= D; ++k) {
    h[2 * k] = Rational(1) / (pow4 * factorial(2 * k + 1));
    pow4 *= Rational(4);
  }
  return invert_series(h);
}

Generators root_gens(int d) { return indexed_gens("x", d); }
Generators chern_gens(int d) { return indexed_gens("c", d); }

int chern_degree(const Exponent& e) {
  int k = 0;
  for (std::size_t i = 0; i < e.size(); ++i) k += static_cast<int>(i + 1) * e[i];
  return k;
}

Poly truncate_degree(const Poly& p, int D, bool weighted) {
  Poly out(p.gens());
  for (const auto& [e, c] : p.terms())
    if ((weighted ? chern_degree(e) : total_degree(e)) <= D) out.add_term(e, c);
  return out;
}

ChernRootSeries::ChernRootSeries(int dim, int max_degree, Poly terms)
    : dim_(dim), max_degree_(max_degree), terms_(truncate_degree(terms, max_degree, false)) {
  require(max_degree >= 0, "maximal degree must be >= 0");
  require(terms_.gens() == root_gens(dim), "root series must use generators x1..xd");
}

Poly ChernRootSeries::component(int k) const {
  Poly out(terms_.gens());
  for (const auto& [e, c] : terms_.terms())
    if (total_degree(e) == k) out.add_term(e, c);
  return out;
}

ChernRootSeries operator*(const ChernRootSeries& a, const ChernRootSeries& b) {
  require(a.dim_ == b.dim_, "root series of different dimension");
  const int D = std::min(a.max_degree_, b.max_degree_);
  return {a.dim_, D, truncate_degree(a.terms_, D, false) * truncate_degree(b.terms_, D, false)};
}

ChernClassExpr::ChernClassExpr(int dim, int max_degree, Poly terms)
    : dim_(dim), max_degree_(max_degree), terms_(truncate_degree(terms, max_degree, true)) {
  require(max_degree >= 0, "maximal degree must be >= 0");
  require(terms_.gens() == chern_gens(dim), "Chern class expression must use generators c1..cd");
}

Poly ChernClassExpr::component(int k) const {
  Poly out(terms_.gens());
  for (const auto& [e, c] : terms_.terms())
    if (chern_degree(e) == k) out.add_term(e, c);
  return out;
}

ChernRootSeries multiplicative_series(const RootCoefficients& s, int d, int D) {
  const Generators g = root_gens(d);
  Poly acc = Poly::constant(g, Rational(1));
  for (int i = 0; i < d; ++i) {
    Poly factor(g);
    for (int k = 0; k <= D && k < static_cast<int>(s.size()); ++k) {
      Exponent e(static_cast<std::size_t>(d), 0);
      e[i] = k;
      factor.add_term(e, s[k]);
    }
    acc = truncate_degree(acc * factor, D, false);
  }
  return {d, D, acc};
}

ChernRootSeries a_hat(int d, int D) { return multiplicative_series(a_hat_root_series(D), d, D); }
ChernRootSeries todd(int d, int D) { return multiplicative_series(todd_root_series(D), d, D); }

ChernRootSeries exp_class(const ChernClassExpr& theta, int D) {
  require(theta.terms().constant_term().is_zero(), "exp_class: theta has a degree-0 component");
  const Generators g = chern_gens(theta.dim());
  Poly acc = Poly::constant(g, Rational(1));
  Poly power = acc;
  for (int k = 1; k <= D; ++k) {
    power = truncate_degree(power * theta.terms(), D, true);
    acc += power.scaled(Rational(1) / factorial(k));
  }
  return to_root_basis(ChernClassExpr(theta.dim(), D, acc));
}

ChernRootSeries to_root_basis(const ChernClassExpr& c) {
  const Generators roots = root_gens(c.dim());
  std::vector<Poly> images;
  for (int i = 1; i <= c.dim(); ++i) images.push_back(elementary(i, roots));
  return {c.dim(), c.max_degree(), c.terms().substitute(images)};
}

ChernClassExpr to_chern_basis(const ChernRootSeries& s) {
  require(is_symmetric(s.terms()), "to_chern_basis: input is not symmetric in the roots");
  const int d = s.dim();
  const Generators roots = root_gens(d), cg = chern_gens(d);
  std::vector<Poly> e;
  for (int i = 1; i <= d; ++i) e.push_back(elementary(i, roots));
  Poly rest = s.terms();
  Poly out(cg);
  while (!rest.is_zero()) {
    const auto [lead, coef] = *rest.terms().rbegin();
    for (int i = 0; i + 1 < d; ++i)
      require(lead[i] >= lead[i + 1], "to_chern_basis: input is not symmetric in the roots");
    Exponent ce(static_cast<std::size_t>(d), 0);
    Poly sub = Poly::constant(roots, coef);
    for (int i = 0; i < d; ++i) {
      ce[i] = lead[i] - (i + 1 < d ? lead[i + 1] : 0);
      for (int k = 0; k < ce[i]; ++k) sub = sub * e[i];
    }
    out.add_term(ce, coef);
    rest -= sub;
  }
  return {d, s.max_degree(), out};
}

ChernClassExpr half_first_chern(int d, int D) {
  return {d, D, Poly::variable(chern_gens(d), 0).scaled(Rational(1, 2))};
}

IdentityReport rr_identity_check(int d, int D, const ChernClassExpr& theta) {
  const ChernRootSeries lhs = a_hat(d, D) * exp_class(theta, D);
  const ChernRootSeries rhs = todd(d, D);
  IdentityReport rep;
  auto compare = [&](const std::string& basis, const Poly& l, const Poly& r, bool weighted) {
    std::map<Exponent, int> seen;
    for (const auto& [e, c] : l.terms()) seen[e] = 1;
    for (const auto& [e, c] : r.terms()) seen[e] = 1;
    for (const auto& [e, unused] : seen) {
      const Rational a = l.coeff(e), b = r.coeff(e);
      if (a == b) continue;
      rep.equal = false;
      rep.discrepancies.push_back(
          {basis, e, 2 * (weighted ? chern_degree(e) : total_degree(e)), a, b});
    }
  };
  compare("roots", lhs.terms(), rhs.terms(), false);
  compare("chern", to_chern_basis(lhs).terms(), to_chern_basis(rhs).terms(), true);
  return rep;
}

IdentityReport rr_identity_check(int d, int D) {
  return rr_identity_check(d, D, half_first_chern(d, D));
}

}  // namespace rrdq::charclass
