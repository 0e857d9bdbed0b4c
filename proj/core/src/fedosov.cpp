#include "rrdq/fedosov.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "rrdq/error.hpp"

namespace rrdq::fedosov {

namespace {

std::vector<std::string> names_with(std::vector<std::string> v, const std::string& prefix, int d) {
  for (int i = 1; i <= d; ++i) v.push_back(prefix + std::to_string(i));
  return v;
}

/// Re-expresses p in `target` whose leading generators are those of p.
Poly extend(const Poly& p, const Generators& target) {
  require(p.nvars() <= target.size(), "cannot extend polynomial to a smaller ring");
  for (std::size_t i = 0; i < p.nvars(); ++i)
    require(p.gens()[i] == target[i], "polynomial ring is not a prefix of the target");
  Poly out(target);
  for (const auto& [e, c] : p.terms()) {
    Exponent f = e;
    f.resize(target.size(), 0);
    out.add_term(f, c);
  }
  return out;
}

Poly on_base(const ChartPtr& chart, const Poly& p) {
  if (p.gens() == chart->base_gens()) return p;
  return p.embed(chart->base_gens());
}

int base_weight_of(const Chart& chart, const Exponent& e) {
  int w = 0;
  for (std::size_t b = 0; b < chart.nbase(); ++b) w += chart.base_weight(b) * e[b];
  return w;
}

int fiber_degree(const Chart& chart, const Exponent& e) {
  int s = 0;
  for (std::size_t i = chart.nbase(); i < e.size(); ++i) s += e[i];
  return s;
}

int vf_monomial_weight(const Chart& chart, const Exponent& e) {
  return base_weight_of(chart, e) + fiber_degree(chart, e) - 1;
}

int rhat_monomial_weight(const Chart& chart, const Exponent& e, int t_exp) {
  return base_weight_of(chart, e) + fiber_degree(chart, e) + 2 * t_exp;
}

Poly trunc_poly(const Poly& p, int w, const std::function<int(const Exponent&)>& weight,
                bool keep_equal_only = false) {
  Poly out(p.gens());
  for (const auto& [e, c] : p.terms()) {
    const int we = weight(e);
    if (keep_equal_only ? we == w : we < w) out.add_term(e, c);
  }
  return out;
}

}  // namespace

Chart::Chart(int d, std::vector<std::string> base_names, std::vector<int> base_weights)
    : d_(d), base_(base_names), weights_(std::move(base_weights)) {
  require(d >= 1, "fiber dimension must be positive");
  require(weights_.size() == base_.size(), "one weight per base coordinate");
  vf_ = Generators(names_with(base_names, "zh", d));
  rhat_ = Generators(names_with(names_with(base_names, "zh", d), "xh", d));
  layout_ = weyl::DarbouxLayout::standard(d, base_.size());
}

std::shared_ptr<const Chart> Chart::fiber_only(int d) {
  return std::make_shared<const Chart>(d, std::vector<std::string>{}, std::vector<int>{});
}

std::shared_ptr<const Chart> Chart::base(int d) {
  return std::make_shared<const Chart>(d, names_with({}, "z", d), std::vector<int>(d, 0));
}

std::shared_ptr<const Chart> Chart::cotangent(int d) {
  std::vector<int> w(d, 0);
  w.resize(2 * static_cast<std::size_t>(d), 1);
  return std::make_shared<const Chart>(d, names_with(names_with({}, "z", d), "p", d), w);
}

// ---------------------------------------------------------------------------
// Vector fields

FormalVectorField::FormalVectorField(ChartPtr chart, std::vector<Poly> comps, int fiber_trunc)
    : chart_(std::move(chart)), comps_(std::move(comps)), fiber_trunc_(fiber_trunc) {
  require(static_cast<int>(comps_.size()) == chart_->d(), "vector field needs d components");
  for (auto& p : comps_) {
    if (p.gens().size() == 0 && p.is_zero()) p = Poly(chart_->vf_gens());
    check_same_gens(p.gens(), chart_->vf_gens(), "vector field component");
  }
  if (!is_exact()) *this = weight_truncated(valid_weight());
}

FormalVectorField FormalVectorField::zero(ChartPtr chart, int fiber_trunc) {
  std::vector<Poly> comps(static_cast<std::size_t>(chart->d()), Poly(chart->vf_gens()));
  return {std::move(chart), std::move(comps), fiber_trunc};
}

FormalVectorField FormalVectorField::component(ChartPtr chart, int i, const Poly& p,
                                               int fiber_trunc) {
  require(i >= 0 && i < chart->d(), "vector field component out of range");
  std::vector<Poly> comps(static_cast<std::size_t>(chart->d()), Poly(chart->vf_gens()));
  comps[static_cast<std::size_t>(i)] = p;
  return {std::move(chart), std::move(comps), fiber_trunc};
}

bool FormalVectorField::is_zero() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const Poly& p) { return p.is_zero(); });
}

FormalVectorField FormalVectorField::scaled(const Rational& c) const {
  FormalVectorField out = *this;
  for (auto& p : out.comps_) p = p.scaled(c);
  return out;
}

FormalVectorField FormalVectorField::partial_base(std::size_t j) const {
  require(j < chart_->nbase(), "base coordinate out of range");
  FormalVectorField out = *this;
  for (auto& p : out.comps_) p = p.partial(j);
  return out;
}

FormalVectorField FormalVectorField::partial_fiber(int i) const {
  FormalVectorField out = *this;
  for (auto& p : out.comps_) p = p.partial(chart_->zh(i));
  // d/dzh lowers weights by one
  out.fiber_trunc_ = add_orders(fiber_trunc_, -1);
  return out;
}

int FormalVectorField::min_weight() const {
  int m = kExact;
  for (const auto& p : comps_)
    for (const auto& [e, c] : p.terms()) m = std::min(m, vf_monomial_weight(*chart_, e));
  return m;
}

int FormalVectorField::valid_weight() const { return add_orders(fiber_trunc_, -1); }

FormalVectorField FormalVectorField::weight_truncated(int w) const {
  FormalVectorField out = *this;
  const Chart& ch = *chart_;
  for (auto& p : out.comps_)
    p = trunc_poly(p, w, [&](const Exponent& e) { return vf_monomial_weight(ch, e); });
  return out;
}

FormalVectorField FormalVectorField::weight_component(int w) const {
  FormalVectorField out = *this;
  out.fiber_trunc_ = kExact;
  const Chart& ch = *chart_;
  for (auto& p : out.comps_)
    p = trunc_poly(p, w, [&](const Exponent& e) { return vf_monomial_weight(ch, e); }, true);
  return out;
}

FormalVectorField operator+(const FormalVectorField& a, const FormalVectorField& b) {
  require(*a.chart_ == *b.chart_, "vector fields on different charts");
  std::vector<Poly> comps = a.comps_;
  for (std::size_t i = 0; i < comps.size(); ++i) comps[i] += b.comps_[i];
  return {a.chart_, std::move(comps), std::min(a.fiber_trunc_, b.fiber_trunc_)};
}

std::string FormalVectorField::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < chart_->d(); ++i) {
    const Poly& p = comps_[static_cast<std::size_t>(i)];
    if (p.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << p << ")*d/dzh" << (i + 1);
  }
  if (first) os << "0";
  if (!is_exact()) os << " + O(zh^" << fiber_trunc_ << ")";
  return os.str();
}

FormalVectorField exact_bracket(const FormalVectorField& u, const FormalVectorField& v) {
  require(*u.chart() == *v.chart(), "vector fields on different charts");
  const Chart& ch = *u.chart();
  std::vector<Poly> out(static_cast<std::size_t>(ch.d()), Poly(ch.vf_gens()));
  for (int i = 0; i < ch.d(); ++i) {
    auto& oi = out[static_cast<std::size_t>(i)];
    for (int j = 0; j < ch.d(); ++j) {
      const auto& uj = u.comps()[static_cast<std::size_t>(j)];
      const auto& vj = v.comps()[static_cast<std::size_t>(j)];
      if (!uj.is_zero()) oi += uj * v.comps()[static_cast<std::size_t>(i)].partial(ch.zh(j));
      if (!vj.is_zero()) oi -= vj * u.comps()[static_cast<std::size_t>(i)].partial(ch.zh(j));
    }
  }
  return {u.chart(), std::move(out)};
}

FormalVectorField vf_bracket(const FormalVectorField& u, const FormalVectorField& v) {
  auto eff = [](const FormalVectorField& f) { return std::min(f.min_weight(), f.valid_weight()); };
  int valid = kExact;
  if (!u.is_exact()) valid = std::min(valid, add_orders(u.valid_weight(), eff(v)));
  if (!v.is_exact()) valid = std::min(valid, add_orders(v.valid_weight(), eff(u)));
  FormalVectorField out = exact_bracket(u, v);
  if (valid >= kExact) return out;
  return {out.chart(), out.comps(), valid + 1};
}

// ---------------------------------------------------------------------------
// R-hat

RHatElement::RHatElement(ChartPtr chart, TSeries value)
    : chart_(std::move(chart)), value_(std::move(value)) {
  check_same_gens(value_.zero().gens(), chart_->rhat_gens(), "R-hat element");
}

RHatElement RHatElement::zero(ChartPtr chart, int t_trunc) {
  TSeries z = make_tseries(chart->rhat_gens(), 0, t_trunc);
  return {std::move(chart), std::move(z)};
}

RHatElement RHatElement::central(ChartPtr chart, const Poly& f, int t_exp, int t_trunc) {
  Poly g = extend(on_base(chart, f), chart->rhat_gens());
  TSeries s = make_tseries(chart->rhat_gens(), std::min(0, t_exp), t_trunc);
  s.add_term(t_exp, g);
  return {std::move(chart), std::move(s)};
}

bool RHatElement::is_central() const {
  for (const auto& [k, p] : value_.coeffs())
    for (const auto& [e, c] : p.terms())
      if (fiber_degree(*chart_, e) != 0) return false;
  return true;
}

RHatElement RHatElement::partial_base(std::size_t j) const {
  require(j < chart_->nbase(), "base coordinate out of range");
  return {chart_, value_.map_coeffs([j](const Poly& p) { return p.partial(j); })};
}

int RHatElement::min_weight() const {
  int m = kExact;
  for (const auto& [k, p] : value_.coeffs())
    for (const auto& [e, c] : p.terms()) m = std::min(m, rhat_monomial_weight(*chart_, e, k));
  return m;
}

RHatElement RHatElement::weight_truncated(int w) const {
  TSeries out(value_.zero(), value_.lower(), value_.trunc());
  const Chart& ch = *chart_;
  for (const auto& [k, p] : value_.coeffs())
    out.add_term(k, trunc_poly(p, w, [&, k = k](const Exponent& e) {
                   return rhat_monomial_weight(ch, e, k);
                 }));
  return {chart_, std::move(out)};
}

RHatElement RHatElement::weight_component(int w) const {
  TSeries out(value_.zero(), value_.lower(), value_.trunc());
  const Chart& ch = *chart_;
  for (const auto& [k, p] : value_.coeffs())
    out.add_term(k, trunc_poly(
                        p, w, [&, k = k](const Exponent& e) { return rhat_monomial_weight(ch, e, k); },
                        true));
  return {chart_, std::move(out)};
}

RHatElement operator+(const RHatElement& a, const RHatElement& b) {
  require(*a.chart_ == *b.chart_, "R-hat elements on different charts");
  return {a.chart_, a.value_ + b.value_};
}

RHatElement exact_bracket(const RHatElement& a, const RHatElement& b) {
  require(*a.chart() == *b.chart(), "R-hat elements on different charts");
  return {a.chart(), weyl::star_commutator(a.value(), b.value(), a.chart()->layout())};
}

RHatElement rhat_bracket(const RHatElement& a, const RHatElement& b) { return exact_bracket(a, b); }

// ---------------------------------------------------------------------------
// Kazhdan connection

GlConnection gl_connection(int d, const std::vector<PolyMatrix>& coeff) {
  GlConnection a{Chart::base(d), {}};
  require(static_cast<int>(coeff.size()) == d, "connection needs one matrix per dz_i");
  for (const auto& m : coeff) {
    require(static_cast<int>(m.size()) == d, "connection matrix must be d x d");
    PolyMatrix mm;
    for (const auto& row : m) {
      require(static_cast<int>(row.size()) == d, "connection matrix must be d x d");
      std::vector<Poly> r;
      for (const auto& p : row) r.push_back(on_base(a.chart, p));
      mm.push_back(std::move(r));
    }
    a.coeff.push_back(std::move(mm));
  }
  return a;
}

VFForm gl_to_vf(const GlConnection& a0) {
  const ChartPtr& ch = a0.chart;
  VFForm out(ch, FormalVectorField::zero(ch));
  for (std::size_t i = 0; i < a0.coeff.size(); ++i) {
    std::vector<Poly> comps(static_cast<std::size_t>(ch->d()), Poly(ch->vf_gens()));
    for (int a = 0; a < ch->d(); ++a)
      for (int b = 0; b < ch->d(); ++b) {
        const Poly& m = a0.coeff[i][static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        if (m.is_zero()) continue;
        comps[static_cast<std::size_t>(b)] +=
            extend(on_base(ch, m), ch->vf_gens()) * Poly::variable(ch->vf_gens(), ch->zh(a));
      }
    out.add_term({static_cast<int>(i)}, FormalVectorField(ch, std::move(comps)));
  }
  return out;
}

VFForm kazhdan_minus_one(const ChartPtr& chart) {
  VFForm out(chart, FormalVectorField::zero(chart));
  for (int i = 0; i < chart->d(); ++i)
    out.add_term({i}, FormalVectorField::component(
                          chart, i, Poly::constant(chart->vf_gens(), Rational(-1))));
  return out;
}

VFForm delta0(const VFForm& a) {
  const ChartPtr& ch = a.chart();
  VFForm out(ch, a.zero(), add_orders(a.valid(), -1));
  for (const auto& [w, v] : a.terms())
    for (int i = 0; i < ch->d(); ++i) {
      VFForm::Wedge u{i};
      u.insert(u.end(), w.begin(), w.end());
      out.add_term(u, v.partial_fiber(i));
    }
  return out;
}

VFForm delta0_inverse(const VFForm& a) {
  const ChartPtr& ch = a.chart();
  VFForm out(ch, a.zero(), add_orders(a.valid(), 1));
  for (const auto& [w, v] : a.terms()) {
    const int q = static_cast<int>(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) {
      const int i = w[k];
      if (i >= ch->d()) continue;
      VFForm::Wedge u = w;
      u.erase(u.begin() + static_cast<long>(k));
      const Rational sign(k % 2 == 0 ? 1 : -1);
      std::vector<Poly> comps(static_cast<std::size_t>(ch->d()), Poly(ch->vf_gens()));
      for (int j = 0; j < ch->d(); ++j)
        for (const auto& [e, c] : v.comps()[static_cast<std::size_t>(j)].terms()) {
          const int p = fiber_degree(*ch, e);
          Exponent f = e;
          f[ch->zh(i)] += 1;
          comps[static_cast<std::size_t>(j)].add_term(f, c * sign / Rational(p + q));
        }
      out.add_term(u, FormalVectorField(ch, std::move(comps)));
    }
  }
  return out;
}

VFForm kazhdan_assemble(const GlConnection& a0, int K) {
  require(K >= 1, "fiber truncation must be at least 1");
  const ChartPtr& ch = a0.chart;
  VFForm a = kazhdan_minus_one(ch) + gl_to_vf(a0);
  if (!curvature(a).weight_component(-1).is_zero())
    fail("obstruction at weight -1: the connection has torsion");
  for (int j = 0; j + 2 <= K; ++j) {
    const VFForm r = curvature(a).weight_component(j);
    if (!delta0(r).is_zero()) fail("obstruction at weight " + std::to_string(j));
    a = a + delta0_inverse(r);
  }
  return a.truncated(K);
}

// ---------------------------------------------------------------------------
// Lift to R-hat

RHatElement i_map(const FormalVectorField& v, int t_trunc) {
  const ChartPtr& ch = v.chart();
  TSeries s = make_tseries(ch->rhat_gens(), -1, t_trunc);
  for (int j = 0; j < ch->d(); ++j) {
    const Poly p = extend(v.comps()[static_cast<std::size_t>(j)], ch->rhat_gens());
    if (p.is_zero()) continue;
    s.add_term(-1, p * Poly::variable(ch->rhat_gens(), ch->xh(j)));
    s.add_term(0, p.partial(ch->zh(j)).scaled(Rational(-1, 2)));
  }
  return {ch, std::move(s)};
}

RForm i_map(const VFForm& a, int t_trunc) {
  RForm out(a.chart(), RHatElement::zero(a.chart(), t_trunc), a.valid());
  for (const auto& [w, v] : a.terms()) out.add_term(w, i_map(v, t_trunc));
  return out;
}

weyl::LieElement i_map_lie(const FormalVectorField& v) {
  require(v.chart()->nbase() == 0, "plain Weyl image needs a field without base coordinates");
  const int d = v.chart()->d();
  const TSeries s = i_map(v).value();
  const Generators g = weyl::darboux_gens(d);
  return weyl::LieElement(
      weyl::WeylElement(d, s.map_coeffs([&](const Poly& p) { return Poly(g, p.terms()); })));
}

RForm half_trace(const GlConnection& a0) {
  const ChartPtr& ch = a0.chart;
  RForm out(ch, RHatElement::zero(ch));
  for (std::size_t i = 0; i < a0.coeff.size(); ++i) {
    Poly tr(ch->base_gens());
    for (int a = 0; a < ch->d(); ++a) tr += a0.coeff[i][static_cast<std::size_t>(a)][static_cast<std::size_t>(a)];
    out.add_term({static_cast<int>(i)}, RHatElement::central(ch, tr.scaled(Rational(1, 2))));
  }
  return out;
}

RForm lift_connection(const VFForm& a, const GlConnection& a0, int t_trunc) {
  require(*a.chart() == *a0.chart, "connection and gl part on different charts");
  return i_map(a, t_trunc) + half_trace(a0);
}

PolyMatrix matrix_mul(const PolyMatrix& a, const PolyMatrix& b) {
  const std::size_t n = a.size();
  require(n > 0 && b.size() == a[0].size(), "matrix shapes do not match");
  const Generators& g = a[0][0].gens();
  PolyMatrix out(n, std::vector<Poly>(b[0].size(), Poly(g)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < b[0].size(); ++j)
      for (std::size_t k = 0; k < b.size(); ++k) out[i][j] += a[i][k] * b[k][j];
  return out;
}

RForm half_trace_curvature(const GlConnection& a0) {
  const ChartPtr& ch = a0.chart;
  RForm out(ch, RHatElement::zero(ch));
  const auto d = static_cast<std::size_t>(ch->d());
  auto trace = [&](const PolyMatrix& m) {
    Poly tr(ch->base_gens());
    for (std::size_t a = 0; a < d; ++a) tr += m[a][a];
    return tr;
  };
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      // d(M_i dz_i) contributes dz_j ^ dz_i (d_j M_i)
      const Poly dpart = trace(a0.coeff[i]).partial(j);
      out.add_term({static_cast<int>(j), static_cast<int>(i)},
                   RHatElement::central(ch, dpart.scaled(Rational(1, 2))));
      const Poly wpart = trace(matrix_mul(a0.coeff[i], a0.coeff[j]));
      out.add_term({static_cast<int>(i), static_cast<int>(j)},
                   RHatElement::central(ch, wpart.scaled(Rational(1, 2))));
    }
  return out;
}

RHatElement standard_embedding(const ChartPtr& ch, const PolyMatrix& m) {
  TSeries s = make_tseries(ch->rhat_gens(), -1);
  for (int a = 0; a < ch->d(); ++a)
    for (int b = 0; b < ch->d(); ++b) {
      const Poly& c = m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      if (c.is_zero()) continue;
      s.add_term(-1, extend(on_base(ch, c), ch->rhat_gens()) *
                         Poly::variable(ch->rhat_gens(), ch->zh(a)) *
                         Poly::variable(ch->rhat_gens(), ch->xh(b)));
    }
  return {ch, std::move(s)};
}

// ---------------------------------------------------------------------------
// Transition functions

namespace {

Poly determinant(const PolyMatrix& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  Poly det(m[0][0].gens());
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    PolyMatrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Poly> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    const Poly term = m[0][j] * determinant(minor);
    if (j % 2 == 0)
      det += term;
    else
      det -= term;
  }
  return det;
}

}  // namespace

PolyMatrix matrix_inverse(const PolyMatrix& g) {
  const std::size_t n = g.size();
  require(n > 0, "empty matrix");
  for (const auto& row : g) require(row.size() == n, "matrix must be square");
  const Poly det = determinant(g);
  require(det.is_constant() && !det.is_zero(),
          "transition matrix needs a constant nonzero determinant");
  const Rational inv_det = Rational(1) / det.constant_term();
  if (n == 1) return {{Poly::constant(g[0][0].gens(), inv_det)}};
  PolyMatrix out(n, std::vector<Poly>(n, Poly(g[0][0].gens())));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      PolyMatrix minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        std::vector<Poly> row;
        for (std::size_t c = 0; c < n; ++c)
          if (c != i) row.push_back(g[r][c]);
        minor.push_back(std::move(row));
      }
      const Rational sign((i + j) % 2 == 0 ? 1 : -1);
      out[i][j] = determinant(minor).scaled(sign * inv_det);
    }
  return out;
}

GlConnection maurer_cartan(const ChartPtr& chart, const PolyMatrix& g) {
  const auto d = static_cast<std::size_t>(chart->d());
  require(g.size() == d, "transition matrix must be d x d");
  PolyMatrix gb;
  for (const auto& row : g) {
    std::vector<Poly> r;
    for (const auto& p : row) r.push_back(on_base(chart, p));
    gb.push_back(std::move(r));
  }
  const PolyMatrix ginv = matrix_inverse(gb);
  GlConnection out{chart, {}};
  for (std::size_t i = 0; i < d; ++i) {
    PolyMatrix dg = gb;
    for (auto& row : dg)
      for (auto& p : row) p = p.partial(i);
    out.coeff.push_back(matrix_mul(dg, ginv));
  }
  return out;
}

namespace {

PolyMatrix matrix_on(const ChartPtr& ch, const PolyMatrix& g, const Generators& target) {
  PolyMatrix out;
  for (const auto& row : g) {
    std::vector<Poly> r;
    for (const auto& p : row) r.push_back(extend(on_base(ch, p), target));
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

FormalVectorField gauge_field(const PolyMatrix& g, const FormalVectorField& v) {
  const ChartPtr& ch = v.chart();
  const auto d = static_cast<std::size_t>(ch->d());
  const Generators& gens = ch->vf_gens();
  const PolyMatrix gm = matrix_on(ch, g, gens);
  const PolyMatrix ginv = matrix_on(ch, matrix_inverse(g), gens);
  std::vector<Poly> images;
  for (std::size_t b = 0; b < ch->nbase(); ++b) images.push_back(Poly::variable(gens, b));
  for (std::size_t k = 0; k < d; ++k) {
    Poly img(gens);
    for (std::size_t i = 0; i < d; ++i) img += gm[i][k] * Poly::variable(gens, ch->zh(static_cast<int>(i)));
    images.push_back(std::move(img));
  }
  std::vector<Poly> comps(d, Poly(gens));
  for (std::size_t m = 0; m < d; ++m)
    for (std::size_t i = 0; i < d; ++i) {
      if (v.comps()[i].is_zero()) continue;
      comps[m] += ginv[i][m] * v.comps()[i].substitute(images);
    }
  return {ch, std::move(comps), v.fiber_trunc()};
}

RHatElement gauge_rhat(const PolyMatrix& g, const RHatElement& a) {
  const ChartPtr& ch = a.chart();
  const auto d = static_cast<std::size_t>(ch->d());
  const Generators& gens = ch->rhat_gens();
  const PolyMatrix gm = matrix_on(ch, g, gens);
  const PolyMatrix ginv = matrix_on(ch, matrix_inverse(g), gens);
  std::vector<Poly> images;
  for (std::size_t b = 0; b < ch->nbase(); ++b) images.push_back(Poly::variable(gens, b));
  for (std::size_t k = 0; k < d; ++k) {
    Poly img(gens);
    for (std::size_t i = 0; i < d; ++i) img += gm[i][k] * Poly::variable(gens, ch->zh(static_cast<int>(i)));
    images.push_back(std::move(img));
  }
  for (std::size_t k = 0; k < d; ++k) {
    Poly img(gens);
    for (std::size_t j = 0; j < d; ++j) img += ginv[k][j] * Poly::variable(gens, ch->xh(static_cast<int>(j)));
    images.push_back(std::move(img));
  }
  return {ch, a.value().map_coeffs([&](const Poly& p) { return p.substitute(images); })};
}

TransitionReport transition_check(const VFForm& a_b, const GlConnection& a0_b,
                                  const TransitionDatum& g, int t_trunc) {
  const ChartPtr& ch = a_b.chart();
  require(*ch == *a0_b.chart, "connection and gl part on different charts");
  const GlConnection mc = maurer_cartan(ch, g.g);
  const PolyMatrix gbase = matrix_on(ch, g.g, ch->base_gens());
  const PolyMatrix ginv = matrix_inverse(gbase);

  const VFForm a_a =
      gl_to_vf(mc) + a_b.map_values([&](const FormalVectorField& v) { return gauge_field(g.g, v); });

  GlConnection a0_a{ch, {}};
  for (std::size_t i = 0; i < a0_b.coeff.size(); ++i) {
    PolyMatrix m = matrix_mul(matrix_mul(gbase, a0_b.coeff[i]), ginv);
    for (std::size_t r = 0; r < m.size(); ++r)
      for (std::size_t c = 0; c < m.size(); ++c) m[r][c] += mc.coeff[i][r][c];
    a0_a.coeff.push_back(std::move(m));
  }

  RForm std_mc(ch, RHatElement::zero(ch, t_trunc));
  for (std::size_t i = 0; i < mc.coeff.size(); ++i)
    std_mc.add_term({static_cast<int>(i)}, standard_embedding(ch, mc.coeff[i]));

  const RForm i_a = i_map(a_a, t_trunc);
  const RForm moved = i_map(a_b, t_trunc).map_values(
      [&](const RHatElement& v) { return gauge_rhat(g.g, v); });

  TransitionReport rep;
  rep.valid = a_b.valid();
  rep.lie_identity = (i_a - (std_mc - half_trace(mc) + moved)).is_zero();
  rep.trace_identity = (half_trace(a0_a) - half_trace(mc) - half_trace(a0_b)).is_zero();
  const RForm lift_a = lift_connection(a_a, a0_a, t_trunc);
  const RForm lift_b_moved = lift_connection(a_b, a0_b, t_trunc)
                                 .map_values([&](const RHatElement& v) { return gauge_rhat(g.g, v); });
  rep.lifted_identity = (lift_a - lift_b_moved - std_mc).is_zero();
  return rep;
}

// ---------------------------------------------------------------------------
// Cotangent conjugation

RForm pullback_to_cotangent(const RForm& a) {
  const ChartPtr& src = a.chart();
  const int d = src->d();
  require(*src == *Chart::base(d), "pullback expects a form on the base chart");
  const ChartPtr dst = Chart::cotangent(d);
  auto lift = [&](const Poly& p) {
    Poly out(dst->rhat_gens());
    for (const auto& [e, c] : p.terms()) {
      Exponent f(dst->rhat_gens().size(), 0);
      for (int i = 0; i < d; ++i) f[static_cast<std::size_t>(i)] = e[static_cast<std::size_t>(i)];
      for (std::size_t k = static_cast<std::size_t>(d); k < e.size(); ++k)
        f[k + static_cast<std::size_t>(d)] = e[k];
      out.add_term(f, c);
    }
    return out;
  };
  const int t_trunc = a.zero().value().trunc();
  RForm out(dst, RHatElement::zero(dst, t_trunc), a.valid());
  for (const auto& [w, v] : a.terms()) out.add_term(w, RHatElement(dst, v.value().map_coeffs(lift)));
  return out;
}

namespace {

RHatElement psi_exp(const RHatElement& a, const Rational& sign) {
  const ChartPtr& ch = a.chart();
  require(ch->nbase() == 2 * static_cast<std::size_t>(ch->d()), "Psi acts on the cotangent chart");
  const Generators& gens = ch->rhat_gens();
  Poly xp(gens);
  for (int i = 0; i < ch->d(); ++i)
    xp -= Poly::variable(gens, static_cast<std::size_t>(ch->d() + i)) *
          Poly::variable(gens, ch->zh(i));
  const TSeries x = TSeries::term(xp.scaled(sign), -1);
  TSeries out = a.value();
  TSeries term = a.value();
  for (int n = 1; !term.is_zero(); ++n) {
    term = weyl::star_commutator(x, term, ch->layout()).scaled(Rational(1, n));
    out += term;
  }
  return {ch, out};
}

}  // namespace

RHatElement psi_apply(const RHatElement& a) { return psi_exp(a, Rational(1)); }
RHatElement psi_inverse_apply(const RHatElement& a) { return psi_exp(a, Rational(-1)); }

RForm psi_conjugate(const RForm& a) {
  const RForm b = (a.chart()->nbase() == static_cast<std::size_t>(a.chart()->d()))
                      ? pullback_to_cotangent(a)
                      : a;
  const ChartPtr& ch = b.chart();
  RForm out = b.map_values([](const RHatElement& v) { return psi_apply(v); });
  const Generators& gens = ch->rhat_gens();
  const int t_trunc = b.zero().value().trunc();
  for (int i = 0; i < ch->d(); ++i) {
    TSeries s = make_tseries(gens, -1, t_trunc);
    s.add_term(-1, Poly::variable(gens, ch->zh(i)));
    out.add_term({ch->d() + i}, RHatElement(ch, s));
  }
  return out;
}

}  // namespace rrdq::fedosov
