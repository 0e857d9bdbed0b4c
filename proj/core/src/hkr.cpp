#include "rrdq/hkr.hpp"

#include <sstream>

#include "rrdq/error.hpp"

namespace rrdq::hkr {

DForm DForm::function(const Poly& f) {
  DForm out(f.gens());
  out.add_term({}, f);
  return out;
}

DForm DForm::differential(const Generators& gens, int i) {
  require(i >= 0 && i < static_cast<int>(gens.size()), "differential index out of range");
  DForm out(gens);
  out.add_term({i}, Poly::constant(gens, Rational(1)));
  return out;
}

void DForm::add_term(const Wedge& indices, const Poly& f) {
  check_same_gens(gens_, f.gens(), "form coefficient");
  if (f.is_zero()) return;
  Wedge w = indices;
  int sign = 1;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j + 1 < w.size() - i; ++j) {
      if (w[j] == w[j + 1]) return;
      if (w[j] > w[j + 1]) {
        std::swap(w[j], w[j + 1]);
        sign = -sign;
      }
    }
  for (std::size_t j = 0; j + 1 < w.size(); ++j)
    if (w[j] == w[j + 1]) return;
  for (int v : w) require(v >= 0 && v < static_cast<int>(gens_.size()), "wedge index out of range");
  auto it = terms_.find(w);
  const Poly g = sign > 0 ? f : -f;
  if (it == terms_.end()) {
    terms_.emplace(w, g);
    return;
  }
  it->second += g;
  if (it->second.is_zero()) terms_.erase(it);
}

DForm DForm::scaled(const Rational& c) const {
  DForm out(gens_);
  for (const auto& [w, f] : terms_) out.add_term(w, f.scaled(c));
  return out;
}

DForm& DForm::operator+=(const DForm& o) {
  check_same_gens(gens_, o.gens_, "form sum");
  for (const auto& [w, f] : o.terms_) add_term(w, f);
  return *this;
}

std::string DForm::to_string() const {
  std::ostringstream os;
  if (terms_.empty()) os << "0";
  bool first = true;
  for (const auto& [w, f] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << f << ")";
    for (std::size_t k = 0; k < w.size(); ++k) os << (k ? "^d" : " d") << gens_[w[k]];
  }
  return os.str();
}

DForm wedge(const DForm& a, const DForm& b) {
  check_same_gens(a.gens(), b.gens(), "wedge");
  DForm out(a.gens());
  for (const auto& [wa, fa] : a.terms())
    for (const auto& [wb, fb] : b.terms()) {
      DForm::Wedge w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out.add_term(w, fa * fb);
    }
  return out;
}

DForm de_rham(const DForm& a) {
  DForm out(a.gens());
  for (const auto& [w, f] : a.terms())
    for (int j = 0; j < static_cast<int>(a.gens().size()); ++j) {
      DForm::Wedge v{j};
      v.insert(v.end(), w.begin(), w.end());
      out.add_term(v, f.partial(static_cast<std::size_t>(j)));
    }
  return out;
}

DForm differential_of(const Poly& f) { return de_rham(DForm::function(f)); }

DForm hkr_map(const hochschild::Chain& c) {
  const auto& alg = *c.algebra();
  require(alg.commutative(), "HKR map needs a commutative algebra, got " + alg.name());
  const Generators& g = alg.basis_gens();
  const Rational norm = Rational(1) / factorial(c.degree());
  DForm out(g);
  for (const auto& [w, coef] : c.terms()) {
    require(coef.effective_lower() >= 0 && coef.trunc() > 0 &&
                (coef.coeffs().empty() || coef.coeffs().rbegin()->first == 0),
            "HKR map needs t-free chain coefficients");
    DForm term = DForm::function(Poly::monomial(g, w[0], coef.coeff(0) * norm));
    for (std::size_t i = 1; i < w.size(); ++i) term = wedge(term, differential_of(Poly::monomial(g, w[i])));
    out += term;
  }
  return out;
}

std::map<int, DForm> hkr_periodic(const hochschild::UChain& c) {
  std::map<int, DForm> out;
  for (int k = c.lo(); k <= c.hi(); ++k) out.emplace(k, hkr_map(c.component(k)));
  return out;
}

}  // namespace rrdq::hkr
