#include "rrdq/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "rrdq/error.hpp"

namespace rrdq {

Generators::Generators(std::vector<std::string> names)
    : names_(std::make_shared<const std::vector<std::string>>(std::move(names))) {}

std::optional<std::size_t> Generators::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_->size(); ++i)
    if ((*names_)[i] == name) return i;
  return std::nullopt;
}

std::size_t Generators::index_of(std::string_view name) const {
  auto i = find(name);
  if (!i) fail("unknown generator '" + std::string(name) + "'");
  return *i;
}

void check_same_gens(const Generators& a, const Generators& b, std::string_view op) {
  if (!(a == b)) fail("generator mismatch in " + std::string(op));
}

Poly::Poly(Generators gens, Terms terms) : gens_(std::move(gens)) {
  for (auto& [e, c] : terms) {
    require(e.size() == gens_.size(), "exponent length does not match generator count");
    if (!c.is_zero()) terms_.emplace(e, c);
  }
}

Poly Poly::constant(const Generators& gens, const Rational& c) {
  return monomial(gens, Exponent(gens.size(), 0), c);
}

Poly Poly::variable(const Generators& gens, std::string_view name) {
  return variable(gens, gens.index_of(name));
}

Poly Poly::variable(const Generators& gens, std::size_t index) {
  require(index < gens.size(), "generator index out of range");
  Exponent e(gens.size(), 0);
  e[index] = 1;
  return monomial(gens, std::move(e));
}

Poly Poly::monomial(const Generators& gens, Exponent exp, const Rational& c) {
  Poly p(gens);
  require(exp.size() == gens.size(), "exponent length does not match generator count");
  if (!c.is_zero()) p.terms_.emplace(std::move(exp), c);
  return p;
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
}

Rational Poly::constant_term() const { return coeff(Exponent(nvars(), 0)); }

Rational Poly::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

int Poly::low_degree() const {
  if (terms_.empty()) return -1;
  int d = std::numeric_limits<int>::max();
  for (const auto& [e, c] : terms_) d = std::min(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

int Poly::degree_in(const std::vector<std::size_t>& vars) const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (auto v : vars) s += e[v];
    d = std::max(d, s);
  }
  return d;
}

Poly Poly::partial(std::size_t var) const {
  require(var < nvars(), "partial: generator index out of range");
  Poly out(gens_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent f = e;
    f[var] -= 1;
    out.terms_.emplace(std::move(f), c * Rational(e[var]));
  }
  return out;
}

Poly Poly::partial(std::string_view name) const { return partial(gens_.index_of(name)); }

Poly Poly::scaled(const Rational& c) const {
  Poly out(gens_);
  if (c.is_zero()) return out;
  for (const auto& [e, a] : terms_) out.terms_.emplace(e, a * c);
  return out;
}

Poly Poly::substitute(const std::vector<Poly>& images) const {
  require(images.size() == nvars(), "substitute: one image per generator required");
  if (images.empty()) return *this;
  const Generators& target = images.front().gens();
  for (const auto& img : images) check_same_gens(img.gens(), target, "substitute");
  // Cache powers per generator to avoid recomputation.
  std::vector<std::vector<Poly>> powers(nvars());
  auto power = [&](std::size_t v, int k) -> const Poly& {
    auto& pv = powers[v];
    if (pv.empty()) pv.push_back(Poly::constant(target, Rational(1)));
    while (static_cast<int>(pv.size()) <= k) pv.push_back(pv.back() * images[v]);
    return pv[k];
  };
  Poly out(target);
  for (const auto& [e, c] : terms_) {
    Poly term = Poly::constant(target, c);
    for (std::size_t v = 0; v < e.size(); ++v)
      if (e[v] != 0) term = term * power(v, e[v]);
    out += term;
  }
  return out;
}

Poly Poly::embed(const Generators& target) const {
  std::vector<std::size_t> where(nvars());
  for (std::size_t i = 0; i < nvars(); ++i) where[i] = target.index_of(gens_[i]);
  Poly out(target);
  for (const auto& [e, c] : terms_) {
    Exponent f(target.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) f[where[i]] = e[i];
    out.add_term(f, c);
  }
  return out;
}

void Poly::add_term(const Exponent& e, const Rational& c) {
  require(e.size() == nvars(), "exponent length does not match generator count");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  check_same_gens(gens_, o.gens_, "poly add");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  check_same_gens(gens_, o.gens_, "poly sub");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  check_same_gens(a.gens_, b.gens_, "poly mul");
  Poly out(a.gens_);
  Exponent e(a.nvars());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

bool operator==(const Poly& a, const Poly& b) {
  return a.gens_ == b.gens_ && a.terms_ == b.terms_;
}

std::string monomial_to_string(const Generators& gens, const Exponent& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += gens[i];
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest degree first reads more naturally.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    const std::string mono = monomial_to_string(gens_, e);
    Rational mag = c.sign() < 0 ? -c : c;
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    if (mono.empty()) {
      os << mag.pretty();
    } else {
      if (!mag.is_one()) os << mag.pretty() << "*";
      os << mono;
    }
    first = false;
  }
  return os.str();
}

}  // namespace rrdq
