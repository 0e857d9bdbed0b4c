#include "rrdq/random.hpp"

#include "rrdq/error.hpp"

namespace rrdq {

long Rng::uniform(long lo, long hi) {
  require(lo <= hi, "Rng::uniform: empty range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  // Rejection sampling removes modulo bias.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t r = engine_();
  while (r >= limit) r = engine_();
  return lo + static_cast<long>(r % span);
}

Rational Rng::rational(long max_num, long max_den) {
  long n = 0;
  while (n == 0) n = uniform(-max_num, max_num);
  return Rational(n, uniform(1, max_den));
}

Poly random_poly(Rng& rng, const Generators& gens, int max_degree, int max_terms,
                 bool allow_constant) {
  Poly p(gens);
  const long terms = rng.uniform(1, max_terms);
  for (long k = 0; k < terms; ++k) {
    Exponent e(gens.size(), 0);
    const long deg = rng.uniform(allow_constant ? 0 : 1, max_degree);
    if (!gens.size()) {
      p.add_term(e, rng.rational());
      continue;
    }
    for (long j = 0; j < deg; ++j) e[rng.uniform(0, static_cast<long>(gens.size()) - 1)] += 1;
    p.add_term(e, rng.rational());
  }
  return p;
}

TSeries random_tseries(Rng& rng, const Generators& gens, int max_degree, int max_terms,
                       int max_t_exp, int trunc) {
  TSeries s(Poly(gens), 0, trunc);
  for (int k = 0; k <= max_t_exp; ++k) {
    if (k > 0 && rng.coin()) continue;
    s.add_term(k, random_poly(rng, gens, max_degree, max_terms));
  }
  return s;
}

hochschild::Chain random_chain(Rng& rng, const hochschild::AlgebraPtr& alg, int degree, int terms,
                               int max_degree, int max_t_exp) {
  const auto nvars = static_cast<long>(alg->basis_gens().size());
  hochschild::Chain c(alg, degree);
  for (int k = 0; k < terms; ++k) {
    hochschild::Word w;
    for (int slot = 0; slot <= degree; ++slot) {
      Exponent e(static_cast<std::size_t>(nvars), 0);
      const long deg = rng.uniform(slot == 0 ? 0 : 1, max_degree);
      for (long j = 0; j < deg; ++j) e[rng.uniform(0, nvars - 1)] += 1;
      w.push_back(e);
    }
    c.add(w, scalar(rng.rational(), static_cast<int>(rng.uniform(0, max_t_exp))));
  }
  return c;
}

rees::DiffOp random_diffop(Rng& rng, int dim, int max_order) {
  const Generators g = rees::diffop_gens(dim);
  Poly p(g);
  const long terms = rng.uniform(1, 3);
  for (long k = 0; k < terms; ++k) {
    Exponent e(2 * static_cast<std::size_t>(dim), 0);
    for (long j = rng.uniform(0, 2); j > 0; --j) e[static_cast<std::size_t>(rng.uniform(0, dim - 1))] += 1;
    for (long j = rng.uniform(0, max_order); j > 0; --j)
      e[static_cast<std::size_t>(dim + rng.uniform(0, dim - 1))] += 1;
    p.add_term(e, rng.rational());
  }
  return {dim, p};
}

rees::ReesElement random_rees(Rng& rng, int dim, int max_p) {
  rees::ReesElement r = rees::ReesElement::zero(dim);
  for (int p = 0; p <= max_p; ++p)
    if (rng.coin()) r = r + rees::rees_embed(random_diffop(rng, dim, p), p);
  return r;
}

}  // namespace rrdq
