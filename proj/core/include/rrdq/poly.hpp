#pragma once

#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "rrdq/rational.hpp"

namespace rrdq {

/// Exponent multi-index; its length equals the generator count of the ring.
using Exponent = std::vector<int>;

/// Ordered, immutable list of generator names shared between values of one
/// ring. Copies are cheap; equality compares names.
class Generators {
 public:
  Generators() : names_(std::make_shared<const std::vector<std::string>>()) {}
  Generators(std::initializer_list<std::string> names)
      : Generators(std::vector<std::string>(names)) {}
  explicit Generators(std::vector<std::string> names);

  [[nodiscard]] std::size_t size() const { return names_->size(); }
  [[nodiscard]] const std::vector<std::string>& names() const { return *names_; }
  [[nodiscard]] const std::string& operator[](std::size_t i) const { return (*names_)[i]; }
  [[nodiscard]] std::optional<std::size_t> find(std::string_view name) const;
  /// Throws rrdq::Error for an unknown generator.
  [[nodiscard]] std::size_t index_of(std::string_view name) const;

  friend bool operator==(const Generators& a, const Generators& b) {
    return a.names_ == b.names_ || *a.names_ == *b.names_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

/// Multivariate polynomial with exact rational coefficients. Zero
/// coefficients are never stored.
class Poly {
 public:
  using Terms = std::map<Exponent, Rational>;

  Poly() = default;
  explicit Poly(Generators gens) : gens_(std::move(gens)) {}
  Poly(Generators gens, Terms terms);

  static Poly constant(const Generators& gens, const Rational& c);
  static Poly variable(const Generators& gens, std::string_view name);
  static Poly variable(const Generators& gens, std::size_t index);
  static Poly monomial(const Generators& gens, Exponent exp, const Rational& c = Rational(1));

  [[nodiscard]] const Generators& gens() const { return gens_; }
  [[nodiscard]] std::size_t nvars() const { return gens_.size(); }
  [[nodiscard]] const Terms& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] bool is_constant() const;
  [[nodiscard]] Rational constant_term() const;
  [[nodiscard]] Rational coeff(const Exponent& e) const;
  /// Total degree; -1 for the zero polynomial.
  [[nodiscard]] int degree() const;
  /// Lowest total degree of a stored term; -1 for zero.
  [[nodiscard]] int low_degree() const;
  /// Total degree counted only over the generators whose index is in `vars`.
  [[nodiscard]] int degree_in(const std::vector<std::size_t>& vars) const;

  [[nodiscard]] Poly partial(std::size_t var) const;
  [[nodiscard]] Poly partial(std::string_view name) const;
  [[nodiscard]] Poly scaled(const Rational& c) const;

  /// Substitutes `images[i]` for generator i; all images share one ring,
  /// which becomes the ring of the result.
  [[nodiscard]] Poly substitute(const std::vector<Poly>& images) const;
  /// Re-expresses the polynomial in `target`; every generator must be present
  /// there by name.
  [[nodiscard]] Poly embed(const Generators& target) const;

  /// Adds c * x^e in place.
  void add_term(const Exponent& e, const Rational& c);

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(const Poly& a) { return a.scaled(Rational(-1)); }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Rational& r) { return a.scaled(r); }

  friend bool operator==(const Poly& a, const Poly& b);

  [[nodiscard]] std::string to_string() const;
  friend std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

 private:
  Generators gens_;
  Terms terms_;
};

/// Throws rrdq::Error unless both values live in the same ring.
void check_same_gens(const Generators& a, const Generators& b, std::string_view op);

std::string monomial_to_string(const Generators& gens, const Exponent& e);

}  // namespace rrdq
