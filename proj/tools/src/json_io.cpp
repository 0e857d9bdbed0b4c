#include "rrdq/cli/json_io.hpp"

#include <algorithm>

#include "rrdq/error.hpp"

namespace rrdq::cli {

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // byte is 1-based and points just past the offending character
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string what = e.what();
    const auto at = what.find("column ");
    if (at != std::string::npos && what.find(": ", at) != std::string::npos)
      what = what.substr(what.find(": ", at) + 2);
    throw InputError(source + ": line " + std::to_string(line) + ", column " + std::to_string(col) +
                     ": malformed JSON: " + what);
  }
}

// ---------------------------------------------------------------------------
// Node

bool Node::has(const std::string& key) const { return j_->is_object() && j_->contains(key); }

Node Node::at(const std::string& key) const {
  expect_object();
  if (!j_->contains(key)) error("missing key \"" + key + "\"");
  return {(*j_)[key], path_ + "/" + key};
}

Node Node::at(std::size_t i) const {
  expect_array();
  if (i >= j_->size()) error("index " + std::to_string(i) + " out of range");
  return {(*j_)[i], path_ + "/" + std::to_string(i)};
}

std::size_t Node::size() const {
  expect_array();
  return j_->size();
}

void Node::error(const std::string& what) const {
  throw InputError("at " + (path_.empty() ? std::string("/") : path_) + ": " + what);
}

void Node::expect_object() const {
  if (!j_->is_object()) error("expected an object");
}

void Node::expect_array() const {
  if (!j_->is_array()) error("expected an array");
}

long Node::as_int() const {
  if (!j_->is_number_integer()) error("expected an integer");
  return j_->get<long>();
}

bool Node::as_bool() const {
  if (!j_->is_boolean()) error("expected true or false");
  return j_->get<bool>();
}

std::string Node::as_string() const {
  if (!j_->is_string()) error("expected a string");
  return j_->get<std::string>();
}

std::vector<std::string> Node::as_strings() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i).as_string());
  return out;
}

Exponent Node::as_exponent(std::size_t length) const {
  if (size() != length)
    error("exponent has length " + std::to_string(size()) + ", expected " + std::to_string(length));
  Exponent e;
  for (std::size_t i = 0; i < length; ++i) {
    const long v = at(i).as_int();
    if (v < 0) at(i).error("negative exponent");
    e.push_back(static_cast<int>(v));
  }
  return e;
}

// ---------------------------------------------------------------------------
// Encoding

Json to_json(const Rational& r) { return r.to_string(); }

namespace {

Json terms_json(const Poly& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back(Json{{"exp", e}, {"coef", to_json(c)}});
  return terms;
}

Json trunc_json(int trunc) { return trunc >= kExact ? Json(nullptr) : Json(trunc); }

}  // namespace

Json to_json(const Poly& p, bool with_gens) {
  Json j = Json::object();
  if (with_gens) j["gens"] = p.gens().names();
  j["terms"] = terms_json(p);
  return j;
}

Json to_json(const TSeries& s) {
  Json coeffs = Json::object();
  for (const auto& [e, c] : s.coeffs()) coeffs[std::to_string(e)] = terms_json(c);
  return Json{{"gens", s.zero().gens().names()},
              {"lower", s.lower()},
              {"trunc", trunc_json(s.trunc())},
              {"coeffs", coeffs}};
}

Json to_json(const TScalar& s) {
  bool plain = s.is_exact();
  for (const auto& [e, c] : s.coeffs()) plain = plain && e == 0;
  if (plain) return to_json(s.is_zero() ? Rational(0) : s.coeffs().begin()->second);
  Json coeffs = Json::object();
  for (const auto& [e, c] : s.coeffs()) coeffs[std::to_string(e)] = to_json(c);
  return Json{{"lower", s.lower()}, {"trunc", trunc_json(s.trunc())}, {"coeffs", coeffs}};
}

Json to_json(const weyl::WeylElement& w) {
  Json j = to_json(w.value());
  j["dim"] = w.dim();
  return j;
}

Json to_json(const hochschild::Chain& c) {
  Json terms = Json::array();
  for (const auto& [w, s] : c.terms()) terms.push_back(Json{{"coef", to_json(s)}, {"word", w}});
  return Json{{"algebra", c.algebra()->name()},
              {"dim", c.algebra()->dim()},
              {"basis_gens", c.algebra()->basis_gens().names()},
              {"degree", c.degree()},
              {"normalized", c.normalized()},
              {"trunc", trunc_json(c.trunc())},
              {"terms", terms}};
}

Json to_json(const hkr::DForm& f) {
  Json terms = Json::array();
  for (const auto& [w, p] : f.terms()) terms.push_back(Json{{"wedge", w}, {"coef", to_json(p, false)}});
  return Json{{"gens", f.gens().names()}, {"terms", terms}};
}

Json to_json(const rees::DiffOp& a) {
  Json terms = Json::array();
  const auto d = static_cast<std::size_t>(a.dim());
  for (const auto& [e, c] : a.terms().terms())
    terms.push_back(Json{{"x", Exponent(e.begin(), e.begin() + static_cast<long>(d))},
                         {"d", Exponent(e.begin() + static_cast<long>(d), e.end())},
                         {"coef", to_json(c)}});
  return Json{{"dim", a.dim()}, {"terms", terms}};
}

Json to_json(const fedosov::RForm& f) {
  Json terms = Json::array();
  for (const auto& [w, v] : f.terms()) terms.push_back(Json{{"wedge", w}, {"value", to_json(v.value())}});
  return Json{{"base", f.chart()->base_gens().names()},
              {"valid_weight", trunc_json(f.valid())},
              {"terms", terms}};
}

Json to_json(const fedosov::VFForm& f) {
  Json terms = Json::array();
  for (const auto& [w, v] : f.terms()) {
    Json comps = Json::array();
    for (const auto& p : v.comps()) comps.push_back(terms_json(p));
    terms.push_back(Json{{"wedge", w}, {"components", comps}});
  }
  return Json{{"gens", f.chart()->vf_gens().names()},
              {"valid_weight", trunc_json(f.valid())},
              {"terms", terms}};
}

// ---------------------------------------------------------------------------
// Decoding

Rational rational_from(const Node& n) {
  const Json& j = n.json();
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) n.error("expected a rational \"p/q\" or an integer");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const Error& e) {
    n.error(e.what());
  }
}

namespace {

Generators gens_from(const Node& n, const Generators& fallback) {
  if (!n.has("gens")) return fallback;
  const std::vector<std::string> names = n.at("gens").as_strings();
  if (fallback.size() > 0 && Generators(names) != fallback)
    n.at("gens").error("generators do not match the expected ring");
  return Generators(names);
}

void add_terms(const Node& terms, Poly& p) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const Node t = terms.at(i);
    p.add_term(t.at("exp").as_exponent(p.nvars()), rational_from(t.at("coef")));
  }
}

int trunc_from(const Node& n) {
  if (!n.has("trunc") || n.at("trunc").json().is_null()) return kExact;
  return static_cast<int>(n.at("trunc").as_int());
}

int exponent_key(const Node& n, const std::string& key) {
  try {
    std::size_t used = 0;
    const int e = std::stoi(key, &used);
    if (used != key.size()) throw std::invalid_argument(key);
    return e;
  } catch (const std::exception&) {
    n.error("t-exponent key \"" + key + "\" is not an integer");
  }
}

}  // namespace

Poly poly_from(const Node& n, const Generators& gens) {
  n.expect_object();
  Poly p(gens_from(n, gens));
  if (p.nvars() == 0 && !n.has("gens")) n.error("missing key \"gens\"");
  add_terms(n.at("terms"), p);
  return p;
}

TSeries tseries_from(const Node& n, const Generators& gens) {
  n.expect_object();
  if (!n.has("coeffs")) return TSeries::term(poly_from(n, gens), 0);
  const Generators g = gens_from(n, gens);
  if (g.size() == 0) n.error("missing key \"gens\"");
  const Node coeffs = n.at("coeffs");
  coeffs.expect_object();
  int lower = 0;
  for (const auto& [k, v] : coeffs.json().items()) lower = std::min(lower, exponent_key(coeffs, k));
  if (n.has("lower")) {
    const long l = n.at("lower").as_int();
    if (l > lower) n.at("lower").error("lower bound above a stored exponent");
    lower = static_cast<int>(l);
  }
  TSeries s = make_tseries(g, lower, trunc_from(n));
  for (const auto& [k, v] : coeffs.json().items()) {
    const Node c(v, coeffs.path() + "/" + k);
    const int e = exponent_key(coeffs, k);
    if (e >= s.trunc()) c.error("coefficient at or beyond the truncation order");
    Poly p(g);
    if (v.is_array())
      add_terms(c, p);
    else
      p = poly_from(c, g);
    s.add_term(e, p);
  }
  return s;
}

TScalar scalar_from(const Node& n) {
  if (!n.json().is_object()) return scalar(rational_from(n));
  const Node coeffs = n.at("coeffs");
  coeffs.expect_object();
  int lower = 0;
  for (const auto& [k, v] : coeffs.json().items()) lower = std::min(lower, exponent_key(coeffs, k));
  if (n.has("lower")) lower = std::min(lower, static_cast<int>(n.at("lower").as_int()));
  TScalar s(Rational(0), lower, trunc_from(n));
  for (const auto& [k, v] : coeffs.json().items()) {
    const int e = exponent_key(coeffs, k);
    const Node c(v, coeffs.path() + "/" + k);
    if (e >= s.trunc()) c.error("coefficient at or beyond the truncation order");
    s.add_term(e, rational_from(c));
  }
  return s;
}

hochschild::AlgebraPtr algebra_from_name(const std::string& name, int dim, const Generators& poly_gens,
                                         const weyl::StarOptions& opts) {
  if (name == "weyl") return hochschild::weyl_algebra(dim, false, opts);
  if (name == "weyl-loc") return hochschild::weyl_algebra(dim, true, opts);
  return hochschild::algebra_by_name(name, dim, poly_gens);
}

hochschild::Chain chain_from(const Node& n, int default_dim, const weyl::StarOptions& opts) {
  n.expect_object();
  const std::string name = n.at("algebra").as_string();
  static const std::vector<std::string> known{"poly", "weyl", "weyl-loc", "rees", "rees-loc", "diffop"};
  if (std::find(known.begin(), known.end(), name) == known.end())
    n.at("algebra").error("unknown algebra \"" + name + "\"");
  int dim = default_dim;
  if (n.has("dim")) {
    const long d = n.at("dim").as_int();
    if (d < 1 || d > 8) n.at("dim").error("dimension must be between 1 and 8");
    dim = static_cast<int>(d);
  }
  Generators poly_gens;
  if (name == "poly" && n.has("gens")) poly_gens = Generators(n.at("gens").as_strings());
  const hochschild::AlgebraPtr alg = algebra_from_name(name, dim, poly_gens, opts);

  const long degree = n.at("degree").as_int();
  if (degree < 0) n.at("degree").error("degree must be nonnegative");
  const bool normalized = n.has("normalized") ? n.at("normalized").as_bool() : true;
  hochschild::Chain c(alg, static_cast<int>(degree), normalized, trunc_from(n));

  const Node terms = n.at("terms");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const Node t = terms.at(i);
    const TScalar coef = t.has("coef") ? scalar_from(t.at("coef")) : scalar(Rational(1));
    const Node word = t.at("word");
    if (word.size() != static_cast<std::size_t>(degree) + 1)
      word.error("word has " + std::to_string(word.size()) + " slots, expected " +
                 std::to_string(degree + 1));
    std::vector<hochschild::Element> slots;
    for (std::size_t k = 0; k < word.size(); ++k) {
      const Node slot = word.at(k);
      try {
        if (slot.json().is_array()) {
          hochschild::Element e;
          e.emplace(slot.as_exponent(alg->basis_gens().size()), scalar(Rational(1)));
          slots.push_back(std::move(e));
        } else {
          slots.push_back(alg->from_series(tseries_from(slot, alg->series_gens())));
        }
      } catch (const Error& e) {
        slot.error(e.what());
      }
    }
    try {
      c.add_elements(slots, coef);
    } catch (const Error& e) {
      t.error(e.what());
    }
  }
  return c;
}

rees::DiffOp diffop_from(const Node& n, int default_dim) {
  n.expect_object();
  int dim = default_dim;
  if (n.has("dim")) dim = static_cast<int>(n.at("dim").as_int());
  if (dim < 1) n.error("dimension must be positive");
  Poly p(rees::diffop_gens(dim));
  const Node terms = n.at("terms");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const Node t = terms.at(i);
    Exponent e = t.at("x").as_exponent(static_cast<std::size_t>(dim));
    const Exponent d = t.at("d").as_exponent(static_cast<std::size_t>(dim));
    e.insert(e.end(), d.begin(), d.end());
    p.add_term(e, rational_from(t.at("coef")));
  }
  return {dim, p};
}

fedosov::PolyMatrix matrix_from(const Node& n, const fedosov::ChartPtr& chart) {
  const auto d = static_cast<std::size_t>(chart->d());
  if (n.size() != d) n.error("expected " + std::to_string(d) + " rows");
  fedosov::PolyMatrix m;
  for (std::size_t r = 0; r < d; ++r) {
    const Node row = n.at(r);
    if (row.size() != d) row.error("expected " + std::to_string(d) + " entries");
    std::vector<Poly> out;
    for (std::size_t c = 0; c < d; ++c) {
      const Node entry = row.at(c);
      out.push_back(entry.json().is_object() ? poly_from(entry, chart->base_gens())
                                             : Poly::constant(chart->base_gens(), rational_from(entry)));
    }
    m.push_back(std::move(out));
  }
  return m;
}

fedosov::GlConnection connection_from(const Node& n) {
  const std::size_t d = n.size();
  if (d < 1 || d > 4) n.error("connection needs between 1 and 4 matrices");
  const fedosov::ChartPtr chart = fedosov::Chart::base(static_cast<int>(d));
  std::vector<fedosov::PolyMatrix> coeff;
  for (std::size_t i = 0; i < d; ++i) coeff.push_back(matrix_from(n.at(i), chart));
  return fedosov::gl_connection(static_cast<int>(d), coeff);
}

}  // namespace rrdq::cli
