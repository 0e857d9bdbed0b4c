#include "moyal_oracle.hpp"

#include <string>
#include <vector>

#include "rrdq/weyl.hpp"

namespace oracle {

using rrdq::Generators;
using rrdq::Poly;
using rrdq::Rational;
using rrdq::TSeries;

TSeries moyal(const Poly& f, const Poly& g, int dim) {
  const std::size_t d = static_cast<std::size_t>(dim);
  std::vector<std::string> names;
  for (int i = 1; i <= dim; ++i) names.push_back("x" + std::to_string(i));
  for (int i = 1; i <= dim; ++i) names.push_back("xi" + std::to_string(i));
  for (int i = 1; i <= dim; ++i) names.push_back("y" + std::to_string(i));
  for (int i = 1; i <= dim; ++i) names.push_back("eta" + std::to_string(i));
  const Generators big(names);

  std::vector<Poly> left, right, diag;
  for (std::size_t i = 0; i < 2 * d; ++i) {
    left.push_back(Poly::variable(big, i));
    right.push_back(Poly::variable(big, 2 * d + i));
  }
  for (std::size_t i = 0; i < 4 * d; ++i)
    diag.push_back(Poly::variable(f.gens(), i % (2 * d)));

  Poly power = f.substitute(left) * g.substitute(right);
  TSeries out(Poly(f.gens()));
  Rational scale(1);
  for (int n = 0; !power.is_zero(); ++n) {
    out.add_term(n, power.substitute(diag).scaled(scale));
    Poly next(big);
    for (std::size_t i = 0; i < d; ++i) {
      next += power.partial(d + i).partial(2 * d + i);
      next -= power.partial(3 * d + i).partial(i);
    }
    power = next;
    scale = scale * Rational(1, 2 * (n + 1));
  }
  return out;
}

TSeries moyal(const TSeries& f, const TSeries& g, int dim) {
  TSeries out(Poly(f.zero().gens()), f.lower() + g.lower());
  for (const auto& [ea, a] : f.coeffs())
    for (const auto& [eb, b] : g.coeffs()) out += moyal(a, b, dim).shifted(ea + eb);
  return out;
}

}  // namespace oracle
