#pragma once

#include <vector>

#include "rrdq/poly.hpp"
#include "rrdq/rational.hpp"

namespace oracle {

// Bernoulli numbers with B_1 = -1/2, from sum_{k<=n} C(n+1,k) B_k = 0.
std::vector<rrdq::Rational> bernoulli(int n_max);

// Coefficients of x/(1 - e^{-x}) up to x^n_max: B_n^+ / n!.
std::vector<rrdq::Rational> todd_root(int n_max);

// Coefficients of (x/2)/sinh(x/2) up to x^n_max.
std::vector<rrdq::Rational> a_hat_root(int n_max);

// Coefficients of e^{x/2}.
std::vector<rrdq::Rational> half_exp_root(int n_max);

// prod_i s(x_i) truncated at total degree D, over generators x1..xd.
rrdq::Poly product_over_roots(const std::vector<rrdq::Rational>& s, int d, int D);

// Elementary symmetric polynomial e_k(x1..xd).
rrdq::Poly elementary(int k, const rrdq::Generators& roots);

}  // namespace oracle
