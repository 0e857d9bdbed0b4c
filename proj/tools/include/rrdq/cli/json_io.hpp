#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "rrdq/fedosov.hpp"
#include "rrdq/hkr.hpp"
#include "rrdq/hochschild.hpp"
#include "rrdq/poly.hpp"
#include "rrdq/rees.hpp"
#include "rrdq/tseries.hpp"
#include "rrdq/weyl.hpp"

namespace rrdq::cli {

/// Object keys keep insertion order so reports serialize identically.
using Json = nlohmann::ordered_json;

/// Malformed input. The message carries the location: line and column for
/// syntax errors, a JSON pointer for schema errors.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses text; `source` names the input in messages.
Json parse_json(const std::string& text, const std::string& source);

/// Location-aware view of an input value.
class Node {
 public:
  Node(const Json& j, std::string path) : j_(&j), path_(std::move(path)) {}

  [[nodiscard]] const Json& json() const { return *j_; }
  [[nodiscard]] const std::string& path() const { return path_; }
  [[nodiscard]] bool has(const std::string& key) const;
  [[nodiscard]] Node at(const std::string& key) const;
  [[nodiscard]] Node at(std::size_t i) const;
  [[nodiscard]] std::size_t size() const;

  [[noreturn]] void error(const std::string& what) const;
  void expect_object() const;
  void expect_array() const;
  [[nodiscard]] long as_int() const;
  [[nodiscard]] bool as_bool() const;
  [[nodiscard]] std::string as_string() const;
  [[nodiscard]] std::vector<std::string> as_strings() const;
  [[nodiscard]] Exponent as_exponent(std::size_t length) const;

 private:
  const Json* j_;
  std::string path_;
};

Json to_json(const Rational& r);
Json to_json(const Poly& p, bool with_gens = true);
Json to_json(const TSeries& s);
Json to_json(const TScalar& s);
Json to_json(const weyl::WeylElement& w);
Json to_json(const hochschild::Chain& c);
Json to_json(const hkr::DForm& f);
Json to_json(const rees::DiffOp& a);
Json to_json(const fedosov::RForm& f);
Json to_json(const fedosov::VFForm& f);

/// "p/q" or an integer.
Rational rational_from(const Node& n);
/// {"gens"?, "terms":[{"exp":[..],"coef":"p/q"}]}; gens default to `gens`.
Poly poly_from(const Node& n, const Generators& gens);
/// {"gens"?, "lower"?, "trunc"?, "coeffs":{"<e>": Poly | [terms]}}, or a Poly.
TSeries tseries_from(const Node& n, const Generators& gens);
/// "p/q", an integer, or {"lower"?, "trunc"?, "coeffs":{"<e>":"p/q"}}.
TScalar scalar_from(const Node& n);
/// {"algebra", "dim"?, "gens"?, "degree", "normalized"?, "trunc"?, "terms":[{"coef","word":[slot..]}]}
/// A slot is a basis exponent array or an element in series form.
hochschild::Chain chain_from(const Node& n, int default_dim, const weyl::StarOptions& opts);
/// {"dim"?, "terms":[{"x":[..],"d":[..],"coef":"p/q"}]}.
rees::DiffOp diffop_from(const Node& n, int default_dim);
/// d x d nested arrays of Poly over z1..zd.
fedosov::PolyMatrix matrix_from(const Node& n, const fedosov::ChartPtr& chart);
/// Array of d matrices, one per dz_i.
fedosov::GlConnection connection_from(const Node& n);

hochschild::AlgebraPtr algebra_from_name(const std::string& name, int dim, const Generators& poly_gens,
                                         const weyl::StarOptions& opts);

}  // namespace rrdq::cli
