#pragma once

#include <cstdint>
#include <random>

#include "rrdq/hochschild.hpp"
#include "rrdq/poly.hpp"
#include "rrdq/rees.hpp"
#include "rrdq/tseries.hpp"

namespace rrdq {

/// Seeded generator for random test corpora. Bounded draws are computed by
/// hand from the raw 64-bit stream so the corpus is identical on every
/// standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi].
  long uniform(long lo, long hi);
  bool coin() { return uniform(0, 1) == 1; }
  /// Small nonzero rational with numerator in [-max_num, max_num] and
  /// denominator in [1, max_den].
  Rational rational(long max_num = 5, long max_den = 3);
  /// Derives an independent stream, e.g. one per check.
  Rng fork() { return Rng(engine_()); }

 private:
  std::mt19937_64 engine_;
};

/// Random polynomial with up to `max_terms` terms of total degree <= max_degree.
Poly random_poly(Rng& rng, const Generators& gens, int max_degree, int max_terms,
                 bool allow_constant = true);

/// Random series with coefficients at t^0 .. t^max_t_exp.
TSeries random_tseries(Rng& rng, const Generators& gens, int max_degree, int max_terms,
                       int max_t_exp, int trunc);

/// Random Hochschild chain of the given degree: `terms` words whose slots
/// are basis monomials of degree <= max_degree, with coefficients c t^k for
/// 0 <= k <= max_t_exp. Slots >= 1 are never the unit.
hochschild::Chain random_chain(Rng& rng, const hochschild::AlgebraPtr& alg, int degree, int terms,
                               int max_degree, int max_t_exp = 0);

/// Random operator of order <= max_order with 1..3 terms and x-degree <= 2.
rees::DiffOp random_diffop(Rng& rng, int dim, int max_order);

/// Random Rees element with t^p parts for p <= max_p.
rees::ReesElement random_rees(Rng& rng, int dim, int max_p = 2);

}  // namespace rrdq
