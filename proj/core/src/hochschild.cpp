#include "rrdq/hochschild.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "rrdq/error.hpp"
#include "rrdq/rees.hpp"

namespace rrdq::hochschild {

namespace {

bool keep(const TScalar& s) { return !(s.is_zero() && s.is_exact()); }

void element_add_term(Element& e, const Exponent& m, const TScalar& c) {
  auto it = e.find(m);
  if (it == e.end()) {
    if (keep(c)) e.emplace(m, c);
    return;
  }
  it->second += c;
  if (!keep(it->second)) e.erase(it);
}

int beta_degree(const Exponent& e, int dim) { return rees::diff_degree(e, dim); }

class PolyAlgebra final : public Algebra {
 public:
  explicit PolyAlgebra(Generators gens) : gens_(std::move(gens)) {}
  std::string name() const override { return "poly"; }
  const Generators& basis_gens() const override { return gens_; }
  bool commutative() const override { return true; }
  bool laurent() const override { return true; }
  int dim() const override { return 0; }
  Element multiply(const Exponent& a, const Exponent& b) const override {
    Exponent c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return {{c, scalar(Rational(1))}};
  }

 private:
  Generators gens_;
};

class WeylAlgebra final : public Algebra {
 public:
  WeylAlgebra(int dim, bool localized, weyl::StarOptions opts)
      : dim_(dim), localized_(localized), opts_(opts), gens_(weyl::darboux_gens(dim)),
        layout_(weyl::DarbouxLayout::standard(dim)) {}
  std::string name() const override { return localized_ ? "weyl-loc" : "weyl"; }
  const Generators& basis_gens() const override { return gens_; }
  bool commutative() const override { return false; }
  bool laurent() const override { return localized_; }
  int dim() const override { return dim_; }
  Element multiply(const Exponent& a, const Exponent& b) const override {
    return from_series(weyl::star_product(TSeries::term(Poly::monomial(gens_, a)),
                                          TSeries::term(Poly::monomial(gens_, b)), layout_, opts_));
  }

 private:
  int dim_;
  bool localized_;
  weyl::StarOptions opts_;
  Generators gens_;
  weyl::DarbouxLayout layout_;
};

// Basis x^a (t d)^b; series form sum_p a_p t^p over x1..xd, d1..dd.
class ReesAlgebra final : public Algebra {
 public:
  ReesAlgebra(int dim, bool localized)
      : dim_(dim), localized_(localized), series_gens_(rees::diffop_gens(dim)) {
    std::vector<std::string> names;
    for (int i = 1; i <= dim; ++i) names.push_back("x" + std::to_string(i));
    for (int i = 1; i <= dim; ++i) names.push_back("td" + std::to_string(i));
    basis_gens_ = Generators(std::move(names));
  }
  std::string name() const override { return localized_ ? "rees-loc" : "rees"; }
  const Generators& basis_gens() const override { return basis_gens_; }
  const Generators& series_gens() const override { return series_gens_; }
  bool commutative() const override { return false; }
  bool laurent() const override { return localized_; }
  int dim() const override { return dim_; }
  Element multiply(const Exponent& a, const Exponent& b) const override {
    TSeries l = TSeries::term(Poly::monomial(series_gens_, a), beta_degree(a, dim_));
    TSeries r = TSeries::term(Poly::monomial(series_gens_, b), beta_degree(b, dim_));
    return from_series(rees::diffop_series_mul(l, r, dim_));
  }
  Element from_series(const TSeries& s) const override {
    check_same_gens(s.zero().gens(), series_gens_, "Rees element");
    Element out;
    for (const auto& [p, a] : s.coeffs())
      for (const auto& [e, c] : a.terms()) {
        const int k = beta_degree(e, dim_);
        require(localized_ || p >= k, "Rees element violates order(a_p) <= p");
        element_add_term(out, e, TScalar::term(c, p - k, add_orders(s.trunc(), -k)));
      }
    return out;
  }
  TSeries to_series(const Element& el) const override {
    TSeries out = make_tseries(series_gens_, 0);
    for (const auto& [e, s] : el) {
      const int k = beta_degree(e, dim_);
      TSeries part(Poly(series_gens_), std::min(0, s.lower() + k), add_orders(s.trunc(), k));
      for (const auto& [p, c] : s.coeffs()) part.add_term(p + k, Poly::monomial(series_gens_, e, c));
      out = out.with_lower(std::min(out.lower(), part.lower())) + part;
    }
    return out;
  }

 private:
  int dim_;
  bool localized_;
  Generators basis_gens_;
  Generators series_gens_;
};

class DiffOpAlgebra final : public Algebra {
 public:
  explicit DiffOpAlgebra(int dim) : dim_(dim), gens_(rees::diffop_gens(dim)) {}
  std::string name() const override { return "diffop"; }
  const Generators& basis_gens() const override { return gens_; }
  bool commutative() const override { return false; }
  bool laurent() const override { return true; }
  int dim() const override { return dim_; }
  Element multiply(const Exponent& a, const Exponent& b) const override {
    rees::DiffOp p = rees::diffop_mul(rees::DiffOp(dim_, Poly::monomial(gens_, a)),
                                      rees::DiffOp(dim_, Poly::monomial(gens_, b)));
    Element out;
    for (const auto& [e, c] : p.terms().terms()) element_add_term(out, e, scalar(c));
    return out;
  }

 private:
  int dim_;
  Generators gens_;
};

bool same_algebra(const Algebra& a, const Algebra& b) {
  return a.name() == b.name() && a.dim() == b.dim() && a.basis_gens() == b.basis_gens();
}

TScalar coefficient_in_window(const TScalar& c, int trunc) { return c.truncated(trunc); }

std::string word_string(const Algebra& alg, const Word& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += " (x) ";
    s += monomial_to_string(alg.basis_gens(), w[i]);
  }
  return s;
}

}  // namespace

bool Algebra::is_unit(const Exponent& e) const {
  return std::all_of(e.begin(), e.end(), [](int v) { return v == 0; });
}

Element Algebra::from_series(const TSeries& s) const {
  check_same_gens(s.zero().gens(), series_gens(), name() + " element");
  Element out;
  for (const auto& [p, a] : s.coeffs())
    for (const auto& [e, c] : a.terms()) element_add_term(out, e, TScalar::term(c, p, s.trunc()));
  if (!laurent())
    for (const auto& [e, c] : out)
      require(c.effective_lower() >= 0, "negative t-power in a " + name() + " element");
  return out;
}

TSeries Algebra::to_series(const Element& el) const {
  TSeries out = make_tseries(series_gens(), 0);
  for (const auto& [e, s] : el) {
    TSeries part(Poly(series_gens()), std::min(0, s.lower()), s.trunc());
    for (const auto& [p, c] : s.coeffs()) part.add_term(p, Poly::monomial(series_gens(), e, c));
    out = out.with_lower(std::min(out.lower(), part.lower())) + part;
  }
  return out;
}

Element Algebra::multiply(const Element& a, const Element& b) const {
  Element out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      const TScalar c = ca * cb;
      for (const auto& [e, s] : multiply(ea, eb)) element_add_term(out, e, c * s);
    }
  return out;
}

AlgebraPtr poly_algebra(const Generators& gens) { return std::make_shared<PolyAlgebra>(gens); }

AlgebraPtr weyl_algebra(int dim, bool localized, const weyl::StarOptions& opts) {
  require(dim >= 1, "Weyl dimension must be >= 1");
  return std::make_shared<WeylAlgebra>(dim, localized, opts);
}

AlgebraPtr rees_algebra(int dim, bool localized) {
  require(dim >= 1, "Rees dimension must be >= 1");
  return std::make_shared<ReesAlgebra>(dim, localized);
}

AlgebraPtr diffop_algebra(int dim) {
  require(dim >= 1, "operator dimension must be >= 1");
  return std::make_shared<DiffOpAlgebra>(dim);
}

AlgebraPtr algebra_by_name(const std::string& name, int dim, const Generators& poly_gens) {
  if (name == "poly") return poly_algebra(poly_gens.size() ? poly_gens : weyl::darboux_gens(dim));
  if (name == "weyl") return weyl_algebra(dim, false);
  if (name == "weyl-loc") return weyl_algebra(dim, true);
  if (name == "rees") return rees_algebra(dim, false);
  if (name == "rees-loc") return rees_algebra(dim, true);
  if (name == "diffop") return diffop_algebra(dim);
  fail("unknown algebra '" + name + "'");
}

Element element_scalar(const Algebra& alg, const TScalar& c) {
  Element e;
  element_add_term(e, alg.unit(), c);
  return e;
}

Element element_add(const Element& a, const Element& b) {
  Element out = a;
  for (const auto& [e, c] : b) element_add_term(out, e, c);
  return out;
}

Element element_scaled(const Element& a, const TScalar& c) {
  Element out;
  for (const auto& [e, s] : a) element_add_term(out, e, s * c);
  return out;
}

// ---------------------------------------------------------------------------

Chain::Chain(AlgebraPtr alg, int degree, bool normalized, int trunc)
    : alg_(std::move(alg)), degree_(degree), normalized_(normalized), trunc_(trunc) {
  require(alg_ != nullptr, "chain without algebra");
  require(degree_ >= 0, "chain degree must be >= 0");
}

bool Chain::degenerate(const Word& w) const {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (alg_->is_unit(w[i])) return true;
  return false;
}

void Chain::add(const Word& w, const TScalar& c) {
  require(static_cast<int>(w.size()) == degree_ + 1, "word length does not match chain degree");
  if (!alg_->laurent())
    require(c.effective_lower() >= 0, "negative t-power in a chain over " + alg_->name());
  if (normalized_ && degenerate(w)) return;
  if (c.trunc() < trunc_) *this = truncated(c.trunc());
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    TScalar v = coefficient_in_window(c, trunc_);
    if (!v.is_zero()) terms_.emplace(w, v);
    return;
  }
  it->second = coefficient_in_window(it->second + c, trunc_);
  if (it->second.is_zero()) terms_.erase(it);
}

void Chain::add_elements(const std::vector<Element>& slots, const TScalar& c) {
  require(static_cast<int>(slots.size()) == degree_ + 1, "slot count does not match chain degree");
  std::vector<Element::const_iterator> pos;
  for (const auto& s : slots) {
    if (s.empty()) return;
    pos.push_back(s.begin());
  }
  Word w(slots.size());
  while (true) {
    TScalar coef = c;
    bool skip = false;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      w[i] = pos[i]->first;
      if (i >= 1 && normalized_ && alg_->is_unit(w[i])) skip = true;
    }
    if (!skip) {
      for (std::size_t i = 0; i < slots.size(); ++i) coef = coef * pos[i]->second;
      add(w, coef);
    }
    std::size_t i = 0;
    for (; i < slots.size(); ++i) {
      if (++pos[i] != slots[i].end()) break;
      pos[i] = slots[i].begin();
    }
    if (i == slots.size()) break;
  }
}

Chain Chain::normalize() const {
  Chain out(alg_, degree_, true, trunc_);
  for (const auto& [w, c] : terms_) out.add(w, c);
  return out;
}

Chain Chain::truncated(int n) const {
  Chain out(alg_, degree_, normalized_, std::min(trunc_, n));
  for (const auto& [w, c] : terms_) {
    TScalar v = c.truncated(out.trunc_);
    if (!v.is_zero()) out.terms_.emplace(w, v);
  }
  return out;
}

Chain Chain::scaled(const TScalar& c) const {
  Chain out(alg_, degree_, normalized_, trunc_);
  for (const auto& [w, v] : terms_) out.add(w, v * c);
  return out;
}

void Chain::check_compatible(const Chain& o) const {
  require(same_algebra(*alg_, *o.alg_), "chains over different algebras");
  require(degree_ == o.degree_, "chains of different degrees");
  require(normalized_ == o.normalized_, "mixing normalized and unnormalized chains");
}

Chain& Chain::operator+=(const Chain& o) {
  check_compatible(o);
  if (o.trunc_ < trunc_) *this = truncated(o.trunc_);
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

Chain& Chain::operator-=(const Chain& o) {
  check_compatible(o);
  if (o.trunc_ < trunc_) *this = truncated(o.trunc_);
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

std::string Chain::to_string() const {
  std::ostringstream os;
  if (terms_.empty()) os << "0";
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ") " << word_string(*alg_, w);
  }
  if (trunc_ < kExact) os << " + O(t^" << trunc_ << ")";
  return os.str();
}

// ---------------------------------------------------------------------------

Chain diff_b(const Chain& c) {
  const int p = c.degree();
  if (p == 0) return Chain(c.algebra(), 0, c.normalized(), c.trunc());
  const Algebra& alg = *c.algebra();
  Chain out(c.algebra(), p - 1, c.normalized(), c.trunc());
  for (const auto& [w, coef] : c.terms()) {
    for (int i = 0; i < p; ++i) {
      std::vector<Element> slots;
      for (int j = 0; j <= p; ++j) {
        if (j == i) {
          slots.push_back(alg.multiply(w[j], w[j + 1]));
          ++j;
        } else {
          slots.push_back({{w[j], scalar(Rational(1))}});
        }
      }
      out.add_elements(slots, i % 2 == 0 ? coef : -coef);
    }
    std::vector<Element> slots{alg.multiply(w[p], w[0])};
    for (int j = 1; j < p; ++j) slots.push_back({{w[j], scalar(Rational(1))}});
    out.add_elements(slots, p % 2 == 0 ? coef : -coef);
  }
  return out;
}

Chain diff_B(const Chain& c) {
  const int p = c.degree();
  const Exponent one = c.algebra()->unit();
  Chain out(c.algebra(), p + 1, c.normalized(), c.trunc());
  for (const auto& [w, coef] : c.terms())
    for (int i = 0; i <= p; ++i) {
      Word r{one};
      for (int j = i; j <= p; ++j) r.push_back(w[j]);
      for (int j = 0; j < i; ++j) r.push_back(w[j]);
      out.add(r, (p * i) % 2 == 0 ? coef : -coef);
    }
  return out;
}

// ---------------------------------------------------------------------------

namespace {
int lowest_exponent(int n) { return n >= 0 ? -(n / 2) : (1 - n) / 2; }
}  // namespace

UChain::UChain(AlgebraPtr alg, int total_degree, int lo, int hi)
    : alg_(std::move(alg)), n_(total_degree), lo_(std::max(lo, lowest_exponent(total_degree))),
      hi_(hi) {
  require(lo <= hi, "u-window must satisfy lo <= hi");
}

Chain UChain::component(int k) const {
  require(k >= lo_ && k <= hi_, "u-exponent outside the window");
  auto it = comps_.find(k);
  if (it != comps_.end()) return it->second;
  return Chain(alg_, n_ + 2 * k);
}

void UChain::set_component(int k, const Chain& c) {
  require(k >= lo_ && k <= hi_, "u-exponent outside the window");
  require(c.degree() == n_ + 2 * k, "component degree does not match total degree");
  require(same_algebra(*c.algebra(), *alg_), "component over a different algebra");
  if (c.is_zero() && c.trunc() >= kExact)
    comps_.erase(k);
  else
    comps_.insert_or_assign(k, c);
}

bool UChain::is_zero() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

UChain UChain::operator-(const UChain& o) const {
  require(n_ == o.n_, "u-chains of different total degree");
  UChain out(alg_, n_, std::max(lo_, o.lo_), std::min(hi_, o.hi_));
  for (int k = out.lo_; k <= out.hi_; ++k) out.set_component(k, component(k) - o.component(k));
  return out;
}

bool agree(const UChain& a, const UChain& b) { return (a - b).is_zero(); }

UChain diff_cyclic(const UChain& c) {
  UChain out(c.algebra(), c.total_degree() - 1, c.lo(), c.hi());
  for (int k = out.lo(); k <= out.hi(); ++k) {
    Chain comp = diff_b(c.component(k));
    if (k - 1 >= c.lo()) comp += diff_B(c.component(k - 1));
    out.set_component(k, comp);
  }
  return out;
}

UChain u_shift(const UChain& c) {
  UChain out(c.algebra(), c.total_degree() - 2, c.lo() + 1, c.hi() + 1);
  for (const auto& [k, ch] : c.components()) out.set_component(k + 1, ch);
  return out;
}

Chain u_project(const UChain& c) {
  require(0 <= c.hi(), "u^0 lies beyond the known window");
  require(c.total_degree() >= 0, "projection to chains of negative degree");
  if (c.lo() > 0) return Chain(c.algebra(), c.total_degree());
  return c.component(0);
}

UChain u_include(const Chain& c, int hi) {
  UChain out(c.algebra(), c.degree(), 0, hi);
  out.set_component(0, c);
  return out;
}

// ---------------------------------------------------------------------------

Chain alt_chain(const AlgebraPtr& alg, const Element& prefix, const std::vector<Element>& slots) {
  const int n = static_cast<int>(slots.size());
  Chain out(alg, n);
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    std::vector<Element> word{prefix};
    for (int i : perm) word.push_back(slots[i]);
    out.add_elements(word, scalar(Rational(inversions % 2 == 0 ? 1 : -1)));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

namespace {

Element basis_element(int size, int index, const TScalar& c) {
  Exponent e(static_cast<std::size_t>(size), 0);
  e[index] = 1;
  return {{e, c}};
}

Chain phi_over(const AlgebraPtr& alg, int d, const TScalar& momentum_scale) {
  std::vector<Element> slots;
  for (int i = 0; i < d; ++i) slots.push_back(basis_element(2 * d, i, scalar(Rational(1))));
  for (int i = 0; i < d; ++i) slots.push_back(basis_element(2 * d, d + i, momentum_scale));
  return alt_chain(alg, element_scalar(*alg, scalar(Rational(1))), slots);
}

}  // namespace

Chain phi_E(int d) { return phi_over(diffop_algebra(d), d, scalar(Rational(1))); }

Chain phi_E_rees(int d) { return phi_over(rees_algebra(d, true), d, scalar(Rational(1), -1)); }

Chain phi_A(int d, const weyl::StarOptions& opts) {
  return phi_over(weyl_algebra(d, true, opts), d, scalar(Rational(1), -1));
}

// ---------------------------------------------------------------------------

Element Morphism::apply(const Element& e) const {
  Element out;
  for (const auto& [m, c] : e) {
    const TScalar s = on_scalar ? on_scalar(c) : c;
    for (const auto& [me, mc] : on_basis(m)) element_add_term(out, me, s * mc);
  }
  return out;
}

Morphism identity_morphism(const AlgebraPtr& alg) {
  return {"identity", alg, alg, [](const Exponent& e) { return Element{{e, scalar(Rational(1))}}; },
          nullptr};
}

Morphism sigma_morphism(int dim) {
  return {"sigma", rees_algebra(dim, false), poly_algebra(weyl::darboux_gens(dim)),
          [](const Exponent& e) { return Element{{e, scalar(Rational(1))}}; },
          [](const TScalar& s) { return scalar(set_t_zero(s)); }};
}

Morphism iota_morphism(int dim) {
  return {"iota", rees_algebra(dim, false), diffop_algebra(dim),
          [dim](const Exponent& e) { return Element{{e, scalar(Rational(1), beta_degree(e, dim))}}; },
          nullptr};
}

Morphism iota_inverse_morphism(int dim) {
  return {"iota-inverse", diffop_algebra(dim), rees_algebra(dim, true),
          [dim](const Exponent& e) {
            return Element{{e, scalar(Rational(1), -beta_degree(e, dim))}};
          },
          nullptr};
}

Morphism rees_to_weyl_morphism(int dim, bool localized, const weyl::StarOptions& opts) {
  AlgebraPtr target = weyl_algebra(dim, localized, opts);
  return {"rees-to-weyl", rees_algebra(dim, localized), target,
          [dim, target, opts](const Exponent& e) {
            const auto n = static_cast<std::size_t>(dim);
            const Generators g = weyl::darboux_gens(dim);
            Exponent ex(2 * n, 0), ed(2 * n, 0);
            for (std::size_t i = 0; i < n; ++i) {
              ex[i] = e[i];
              ed[n + i] = e[n + i];
            }
            return target->from_series(weyl::star_product(TSeries::term(Poly::monomial(g, ex)),
                                                           TSeries::term(Poly::monomial(g, ed)),
                                                           weyl::DarbouxLayout::standard(dim), opts));
          },
          nullptr};
}

Morphism weyl_linear_morphism(int dim, bool localized, const weyl::RationalMatrix& m) {
  AlgebraPtr alg = weyl_algebra(dim, localized);
  const Generators g = weyl::darboux_gens(dim);
  const auto n = static_cast<std::size_t>(2 * dim);
  require(m.size() == n, "linear change must be a 2d x 2d matrix");
  std::vector<Poly> images;
  for (std::size_t j = 0; j < n; ++j) {
    require(m[j].size() == n, "linear change must be a 2d x 2d matrix");
    Poly p(g);
    for (std::size_t i = 0; i < n; ++i) p += Poly::variable(g, i).scaled(m[i][j]);
    images.push_back(p);
  }
  return {"linear-change", alg, alg,
          [g, images, alg](const Exponent& e) {
            return alg->from_series(TSeries::term(Poly::monomial(g, e).substitute(images)));
          },
          nullptr};
}

Chain induced_chain_map(const Morphism& h, const Chain& c) {
  require(same_algebra(*h.source, *c.algebra()),
          "morphism " + h.name + " expects chains over " + h.source->name() + ", got " +
              c.algebra()->name());
  const Element one{{h.source->unit(), scalar(Rational(1))}};
  require(h.apply(one) == Element{{h.target->unit(), scalar(Rational(1))}},
          "morphism " + h.name + " is not unital");

  std::set<std::pair<Exponent, Exponent>> checked;
  auto check_pair = [&](const Exponent& a, const Exponent& b) {
    if (!checked.insert({a, b}).second) return;
    const Element lhs = h.apply(h.source->multiply(a, b));
    const Element rhs =
        h.target->multiply(h.apply({{a, scalar(Rational(1))}}), h.apply({{b, scalar(Rational(1))}}));
    Element diff = element_add(lhs, element_scaled(rhs, scalar(Rational(-1))));
    std::erase_if(diff, [](const auto& kv) { return kv.second.is_zero(); });
    require(diff.empty(), "morphism " + h.name + " is not multiplicative on (" +
                              monomial_to_string(h.source->basis_gens(), a) + ", " +
                              monomial_to_string(h.source->basis_gens(), b) + ")");
  };

  Chain out(h.target, c.degree(), c.normalized(), c.trunc());
  for (const auto& [w, coef] : c.terms()) {
    const std::size_t len = w.size();
    if (len >= 2)
      for (std::size_t i = 0; i < len; ++i) check_pair(w[i], w[(i + 1) % len]);
    std::vector<Element> slots;
    for (const auto& m : w) slots.push_back(h.apply({{m, scalar(Rational(1))}}));
    out.add_elements(slots, h.on_scalar ? h.on_scalar(coef) : coef);
  }
  return out;
}

}  // namespace rrdq::hochschild
