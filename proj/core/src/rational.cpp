#include "rrdq/rational.hpp"

#include <cctype>

#include "rrdq/error.hpp"

namespace rrdq {

Rational::Rational(long num, long den) {
  require(den != 0, "rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  require(!o.is_zero(), "division by zero rational");
  v_ /= o.v_;
  return *this;
}

Rational Rational::parse(std::string_view text) {
  auto is_int = [](std::string_view s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_int(num, true) || !is_int(den, false))
    fail("malformed rational '" + std::string(text) + "'");
  std::string n(num);
  if (n[0] == '+') n.erase(0, 1);
  mpz_class zn(n, 10), zd(std::string(den), 10);
  require(zd != 0, "rational with zero denominator '" + std::string(text) + "'");
  mpq_class q(zn, zd);
  q.canonicalize();
  return Rational(q);
}

std::string Rational::to_string() const {
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational factorial(int n) {
  mpz_class f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return Rational(mpq_class(f));
}

Rational falling_factorial(int n, int k) {
  if (k > n) return Rational(0);
  mpz_class f = 1;
  for (int i = 0; i < k; ++i) f *= (n - i);
  return Rational(mpq_class(f));
}

Rational binomial(int n, int k) {
  if (k < 0 || k > n) return Rational(0);
  return falling_factorial(n, k) / factorial(k);
}

}  // namespace rrdq
