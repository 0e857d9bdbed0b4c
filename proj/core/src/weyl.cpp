#include "rrdq/weyl.hpp"

#include <string>

#include "rrdq/error.hpp"

namespace rrdq::weyl {

DarbouxLayout DarbouxLayout::standard(int d, std::size_t offset) {
  DarbouxLayout l;
  for (int i = 0; i < d; ++i) l.pairs.emplace_back(offset + i, offset + d + i);
  return l;
}

Generators darboux_gens(int d) {
  require(d >= 1, "Weyl dimension must be >= 1");
  std::vector<std::string> names;
  for (int i = 1; i <= d; ++i) names.push_back("x" + std::to_string(i));
  for (int i = 1; i <= d; ++i) names.push_back("xi" + std::to_string(i));
  return Generators(std::move(names));
}

namespace {

/// Accumulates the expansion of (c1 x^e1) * (c2 x^e2) into `out`, where the
/// operands sit at t-exponents summing to `base`.
///
/// For commuting elementary bidifferentials D_k the n-th kernel term is
/// (t/2)^n/n! (sum_k s_k D_k)^n = sum_{|m|=n} (t/2)^n prod_k s_k^{m_k} D_k^{m_k} / m_k!,
/// so each order is a sum over multi-indices. Pairs contribute two
/// elementary operators: d_xi f . d_x g (sign +) and d_x f . d_xi g (sign -).
class MonomialStar {
 public:
  MonomialStar(const DarbouxLayout& layout, const StarOptions& opts, int trunc,
               std::map<int, Poly>& out, const Generators& gens)
      : layout_(layout), opts_(opts), trunc_(trunc), out_(out), gens_(gens) {}

  void run(const Exponent& e1, const Exponent& e2, const Rational& coef, int base) {
    f_ = e1;
    g_ = e2;
    base_ = base;
    visit(0, coef, 0, 0);
  }

 private:
  void visit(std::size_t k, const Rational& coef, int order, int minus_count) {
    if (base_ + order >= trunc_) return;
    if (k == layout_.pairs.size()) {
      emit(coef, order, minus_count);
      return;
    }
    const auto [q, p] = layout_.pairs[k];
    const int fp = f_[p], fq = f_[q], gp = g_[p], gq = g_[q];
    const int m_max = std::min(fp, gq);  // d_xi on f, d_x on g
    const int n_max = std::min(fq, gp);  // d_x on f, d_xi on g
    for (int m = 0; m <= m_max; ++m) {
      const Rational cm = falling_factorial(fp, m) * falling_factorial(gq, m) / factorial(m);
      for (int n = 0; n <= n_max; ++n) {
        if (base_ + order + m + n >= trunc_) break;
        const Rational cn = falling_factorial(fq, n) * falling_factorial(gp, n) / factorial(n);
        f_[p] = fp - m;
        f_[q] = fq - n;
        g_[q] = gq - m;
        g_[p] = gp - n;
        visit(k + 1, coef * cm * cn, order + m + n, minus_count + n);
      }
    }
    f_[p] = fp;
    f_[q] = fq;
    g_[q] = gq;
    g_[p] = gp;
  }

  void emit(const Rational& coef, int order, int minus_count) {
    Rational c = coef;
    for (int i = 0; i < order; ++i) c *= Rational(1, 2);
    bool negative = (minus_count % 2) != 0;
    if (opts_.mutate_first_order_sign && order == 1 && minus_count == 1) negative = !negative;
    if (negative) c = -c;
    Exponent e(f_.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = f_[i] + g_[i];
    auto it = out_.try_emplace(base_ + order, Poly(gens_)).first;
    it->second.add_term(e, c);
  }

  const DarbouxLayout& layout_;
  const StarOptions& opts_;
  int trunc_;
  std::map<int, Poly>& out_;
  const Generators& gens_;
  Exponent f_, g_;
  int base_ = 0;
};

TSeries star_with_window(const TSeries& f, const TSeries& g, const DarbouxLayout& layout,
                         const StarOptions& opts, int lower, int trunc) {
  const Generators& gens = f.zero().gens();
  std::map<int, Poly> acc;
  MonomialStar kernel(layout, opts, trunc, acc, gens);
  for (const auto& [i, fi] : f.coeffs())
    for (const auto& [j, gj] : g.coeffs())
      for (const auto& [e1, c1] : fi.terms())
        for (const auto& [e2, c2] : gj.terms()) kernel.run(e1, e2, c1 * c2, i + j);
  TSeries out(Poly(gens), lower, trunc);
  for (auto& [e, p] : acc) out.add_term(e, p);
  return out;
}

void check_layout(const TSeries& f, const TSeries& g, const DarbouxLayout& layout) {
  check_same_gens(f.zero().gens(), g.zero().gens(), "star product");
  for (auto [q, p] : layout.pairs)
    require(q < f.zero().nvars() && p < f.zero().nvars(), "Darboux layout exceeds generator count");
}

}  // namespace

TSeries star_product(const TSeries& f, const TSeries& g, const DarbouxLayout& layout,
                     const StarOptions& opts) {
  check_layout(f, g, layout);
  const int lo = f.lower() + g.lower();
  const int tr = TSeries::product_trunc(f, g);
  require(tr > lo, "empty validity window in star product");
  return star_with_window(f, g, layout, opts, lo, tr);
}

TSeries star_commutator(const TSeries& f, const TSeries& g, const DarbouxLayout& layout,
                        const StarOptions& opts) {
  check_layout(f, g, layout);
  const int lo = f.lower() + g.lower() + 1;
  const int tr = add_orders(TSeries::product_trunc(f, g), 1);
  require(tr > lo, "empty validity window in star commutator");
  TSeries fg = star_with_window(f, g, layout, opts, lo - 1, tr);
  TSeries gf = star_with_window(g, f, layout, opts, lo - 1, tr);
  TSeries diff = fg - gf;
  // The commutative t^0 parts cancel identically.
  require(diff.effective_lower() >= lo, "star commutator: zeroth order did not cancel");
  return diff.with_lower(lo);
}

// ---------------------------------------------------------------------------

WeylElement::WeylElement(int dim, TSeries value) : dim_(dim), value_(std::move(value)) {
  require(dim >= 1, "Weyl dimension must be >= 1");
  require(value_.zero().gens() == darboux_gens(dim),
          "Weyl element generators must be x1..xd, xi1..xid");
}

WeylElement WeylElement::zero(int dim, int trunc) {
  return {dim, make_tseries(darboux_gens(dim), 0, trunc)};
}

WeylElement WeylElement::constant(int dim, const Rational& c, int trunc) {
  return from_poly(dim, Poly::constant(darboux_gens(dim), c), 0, trunc);
}

WeylElement WeylElement::from_poly(int dim, const Poly& p, int t_exp, int trunc) {
  require(p.gens() == darboux_gens(dim), "Weyl element generators must be x1..xd, xi1..xid");
  TSeries s(Poly(p.gens()), std::min(0, t_exp), trunc);
  s.add_term(t_exp, p);
  return {dim, std::move(s)};
}

WeylElement WeylElement::x(int dim, int i, int trunc) {
  require(i >= 1 && i <= dim, "x index out of range");
  return from_poly(dim, Poly::variable(darboux_gens(dim), i - 1), 0, trunc);
}

WeylElement WeylElement::xi(int dim, int i, int trunc) {
  require(i >= 1 && i <= dim, "xi index out of range");
  return from_poly(dim, Poly::variable(darboux_gens(dim), dim + i - 1), 0, trunc);
}

WeylElement WeylElement::t_power(int dim, int k, int trunc) {
  return from_poly(dim, Poly::constant(darboux_gens(dim), Rational(1)), k, trunc);
}

WeylElement operator+(const WeylElement& a, const WeylElement& b) {
  require(a.dim_ == b.dim_, "Weyl dimension mismatch");
  return {a.dim_, a.value_ + b.value_};
}

WeylElement operator-(const WeylElement& a, const WeylElement& b) {
  require(a.dim_ == b.dim_, "Weyl dimension mismatch");
  return {a.dim_, a.value_ - b.value_};
}

WeylElement moyal_star(const WeylElement& f, const WeylElement& g, const StarOptions& opts) {
  require(f.dim() == g.dim(), "moyal_star: dimension mismatch");
  return {f.dim(), star_product(f.value(), g.value(), DarbouxLayout::standard(f.dim()), opts)};
}

WeylElement star_commutator(const WeylElement& f, const WeylElement& g, const StarOptions& opts) {
  require(f.dim() == g.dim(), "star_commutator: dimension mismatch");
  return {f.dim(), star_commutator(f.value(), g.value(), DarbouxLayout::standard(f.dim()), opts)};
}

Poly poisson(const Poly& f, const Poly& g, int dim, const StarOptions& opts) {
  const auto lf = WeylElement::from_poly(dim, f);
  const auto lg = WeylElement::from_poly(dim, g);
  // (1/t)[f, g] evaluated at t = 0 is the t^1 coefficient of the commutator.
  const TSeries c = star_commutator(lf, lg, opts).value().shifted(-1);
  return set_t_zero(c);
}

LieElement::LieElement(WeylElement value) : value_(std::move(value)) {
  require(value_.value().effective_lower() >= -1, "Lie element has t-exponents below -1");
  if (value_.value().lower() < -1)
    value_ = WeylElement(value_.dim(), value_.value().with_lower(-1));
}

LieElement lie_bracket(const LieElement& a, const LieElement& b, const StarOptions& opts) {
  WeylElement c = star_commutator(a.value(), b.value(), opts);
  require(c.value().effective_lower() >= -1, "lie_bracket escaped (1/t)W");
  return LieElement(std::move(c));
}

LieElement sp_embed(const RationalMatrix& q, int dim) {
  const std::size_t n = 2 * static_cast<std::size_t>(dim);
  require(q.size() == n, "sp_embed: form must be 2d x 2d");
  for (const auto& row : q) require(row.size() == n, "sp_embed: form must be 2d x 2d");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < a; ++b)
      require(q[a][b] == q[b][a], "sp_embed: form is not symmetric");
  const Generators gens = darboux_gens(dim);
  Poly p(gens);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Exponent e(n, 0);
      e[a] += 1;
      e[b] += 1;
      p.add_term(e, q[a][b]);
    }
  return LieElement(WeylElement::from_poly(dim, p, -1));
}

namespace {
int square_size(const RationalMatrix& a) {
  require(!a.empty(), "gl_embed: empty matrix");
  for (const auto& row : a) require(row.size() == a.size(), "gl_embed: matrix is not square");
  return static_cast<int>(a.size());
}
}  // namespace

LieElement gl_embed(const RationalMatrix& a) {
  const int d = square_size(a);
  WeylElement acc = WeylElement::zero(d);
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j) {
      const Rational& c = a[i - 1][j - 1];
      if (c.is_zero()) continue;
      const WeylElement xi_over_t = WeylElement::xi(d, j).shifted(-1);
      acc = acc + moyal_star(WeylElement::x(d, i), xi_over_t).scaled(c);
    }
  return LieElement(acc);
}

LieElement gl_embed_standard(const RationalMatrix& a) {
  const int d = square_size(a);
  const Generators gens = darboux_gens(d);
  Poly p(gens);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Exponent e(2 * d, 0);
      e[i] = 1;
      e[d + j] = 1;
      p.add_term(e, a[i][j]);
    }
  return LieElement(WeylElement::from_poly(d, p, -1));
}

int graded_weight(const Exponent& e, int t_exp) {
  int w = 2 * t_exp;
  for (int k : e) w += k;
  return w;
}

int graded_weight(const TSeries& monomial) {
  require(monomial.coeffs().size() == 1 && monomial.coeffs().begin()->second.terms().size() == 1,
          "graded_weight: input is not a single monomial");
  const auto& [t_exp, p] = *monomial.coeffs().begin();
  return graded_weight(p.terms().begin()->first, t_exp);
}

}  // namespace rrdq::weyl
