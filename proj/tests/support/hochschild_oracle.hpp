#pragma once

#include <functional>
#include <vector>

#include "rrdq/hochschild.hpp"

namespace oracle {

// A tensor word of whole algebra elements in series form, with a rational
// weight. No basis expansion happens until `expand`.
struct ElementWord {
  rrdq::Rational coef;
  std::vector<rrdq::TSeries> slots;
};

using SeriesProduct = std::function<rrdq::TSeries(const rrdq::TSeries&, const rrdq::TSeries&)>;

// Literal Hochschild boundary on element words.
std::vector<ElementWord> boundary(const std::vector<ElementWord>& words, const SeriesProduct& mul);

// Expands element words into a normalized chain over `alg`.
rrdq::hochschild::Chain expand(const rrdq::hochschild::AlgebraPtr& alg,
                               const std::vector<ElementWord>& words);

// prefix (x) Alt(slots) as element words, by explicit permutation listing.
std::vector<ElementWord> alt_words(const rrdq::TSeries& prefix,
                                   const std::vector<rrdq::TSeries>& slots);

}  // namespace oracle
