#pragma once

#include <map>
#include <string>
#include <vector>

#include "rrdq/hochschild.hpp"
#include "rrdq/poly.hpp"

namespace rrdq::hkr {

/// Differential form sum_I f_I dx_I with polynomial coefficients, where I
/// runs over strictly increasing index lists into the generators. Mixed
/// degrees are allowed.
class DForm {
 public:
  using Wedge = std::vector<int>;
  using Terms = std::map<Wedge, Poly>;

  explicit DForm(Generators gens) : gens_(std::move(gens)) {}

  static DForm function(const Poly& f);
  /// dx_i (0-based generator index).
  static DForm differential(const Generators& gens, int i);

  [[nodiscard]] const Generators& gens() const { return gens_; }
  [[nodiscard]] const Terms& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }

  /// Adds f dx_{i1} ^ ... ^ dx_{ik} for any index order; sorts with the sign
  /// of the permutation and drops repeated indices.
  void add_term(const Wedge& indices, const Poly& f);

  [[nodiscard]] DForm scaled(const Rational& c) const;

  DForm& operator+=(const DForm& o);
  friend DForm operator+(DForm a, const DForm& b) { return a += b; }
  friend DForm operator-(DForm a, const DForm& b) { return a += b.scaled(Rational(-1)); }
  friend bool operator==(const DForm& a, const DForm& b) {
    return a.gens_ == b.gens_ && a.terms_ == b.terms_;
  }

  [[nodiscard]] std::string to_string() const;
  friend std::ostream& operator<<(std::ostream& os, const DForm& f) { return os << f.to_string(); }

 private:
  Generators gens_;
  Terms terms_;
};

/// Graded-commutative product.
DForm wedge(const DForm& a, const DForm& b);

/// Exterior derivative.
DForm de_rham(const DForm& a);

/// df for a function.
DForm differential_of(const Poly& f);

/// f_0 (x) ... (x) f_p -> (1/p!) f_0 df_1 ^ ... ^ df_p over a commutative
/// polynomial handle. Coefficients must be t-free.
DForm hkr_map(const hochschild::Chain& c);

/// Componentwise hkr on a u-window: exponent -> form.
std::map<int, DForm> hkr_periodic(const hochschild::UChain& c);

}  // namespace rrdq::hkr
