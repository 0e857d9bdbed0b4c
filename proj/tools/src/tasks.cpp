#include "rrdq/cli/tasks.hpp"

#include <algorithm>
#include <sstream>

#include "rrdq/charclass.hpp"
#include "rrdq/error.hpp"
#include "rrdq/fedosov.hpp"
#include "rrdq/hkr.hpp"
#include "rrdq/hochschild.hpp"
#include "rrdq/random.hpp"
#include "rrdq/rees.hpp"

namespace rrdq::cli {

namespace hs = rrdq::hochschild;

// ---------------------------------------------------------------------------
// Report

std::string Report::status() const {
  if (!error.empty()) return "error";
  for (const auto& c : checks)
    if (!c.passed) return "violated";
  return "verified";
}

int Report::exit_code() const {
  const std::string s = status();
  return s == "verified" ? 0 : s == "violated" ? 1 : 2;
}

void Report::canonicalize() {
  std::stable_sort(checks.begin(), checks.end(),
                   [](const Check& a, const Check& b) { return a.id < b.id; });
}

Json to_json(const Report& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json j{{"id", c.id}, {"passed", c.passed}, {"detail", c.detail}};
    if (!c.passed) {
      j["lhs"] = c.lhs;
      j["rhs"] = c.rhs;
    }
    checks.push_back(std::move(j));
  }
  Json j{{"command", r.command}, {"seed", r.seed}, {"status", r.status()}, {"precision", r.precision},
         {"checks", checks}};
  if (!r.result.is_null()) j["result"] = r.result;
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

std::string summary(const Report& r) {
  std::ostringstream os;
  std::size_t passed = 0;
  for (const auto& c : r.checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.id;
    if (!c.detail.empty()) os << ": " << c.detail;
    os << "\n";
    passed += c.passed ? 1 : 0;
  }
  if (!r.error.empty()) os << "error: " << r.error << "\n";
  os << r.command << ": " << r.status() << " (" << passed << "/" << r.checks.size()
     << " checks passed, seed " << r.seed << ")\n";
  return os.str();
}

int corpus(const Settings& s, int small) { return s.scale == "full" ? 4 * small : small; }

// ---------------------------------------------------------------------------
// Defaults

fedosov::GlConnection default_connection(int d) {
  const fedosov::ChartPtr ch = fedosov::Chart::base(d);
  const Generators& g = ch->base_gens();
  std::vector<fedosov::PolyMatrix> coeff(
      static_cast<std::size_t>(d),
      fedosov::PolyMatrix(static_cast<std::size_t>(d), std::vector<Poly>(static_cast<std::size_t>(d), Poly(g))));
  coeff[0][0][0] = Poly::variable(g, static_cast<std::size_t>(d - 1));
  return fedosov::gl_connection(d, coeff);
}

fedosov::PolyMatrix default_transition(int d) {
  const fedosov::ChartPtr ch = fedosov::Chart::base(d);
  const Generators& g = ch->base_gens();
  fedosov::PolyMatrix m(static_cast<std::size_t>(d), std::vector<Poly>(static_cast<std::size_t>(d), Poly(g)));
  for (int i = 0; i < d; ++i)
    m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Poly::constant(g, Rational(1));
  if (d == 1)
    m[0][0] = Poly::constant(g, Rational(2));
  else
    m[0][static_cast<std::size_t>(d - 1)] = Poly::variable(g, static_cast<std::size_t>(d - 1));
  return m;
}

namespace {

Check check(std::string id, bool passed, std::string detail = {}) {
  Check c;
  c.id = std::move(id);
  c.passed = passed;
  c.detail = std::move(detail);
  return c;
}

Check check(std::string id, bool passed, std::string detail, Json lhs, Json rhs) {
  Check c = check(std::move(id), passed, std::move(detail));
  if (!passed) {
    c.lhs = std::move(lhs);
    c.rhs = std::move(rhs);
  }
  return c;
}

int positive(const std::optional<int>& v, int fallback, const std::string& flag) {
  const int x = v.value_or(fallback);
  if (x < 1) throw InputError("--" + flag + " must be positive");
  return x;
}

Node require_input(const Settings& s, const std::string& command) {
  if (!s.input) throw InputError(command + " needs JSON input (--json <path|->)");
  return {*s.input, ""};
}

std::vector<std::string> selected_checks(const Settings& s, const std::vector<std::string>& known) {
  if (s.checks.empty()) return known;
  for (const auto& c : s.checks)
    if (std::find(known.begin(), known.end(), c) == known.end())
      throw InputError("unknown --check value \"" + c + "\"");
  return s.checks;
}

bool wants(const std::vector<std::string>& checks, const std::string& name) {
  return std::find(checks.begin(), checks.end(), name) != checks.end();
}

// ---------------------------------------------------------------------------
// star

Report run_star(const Settings& s) {
  Report r;
  const int dim = positive(s.dim, 1, "dim");
  const int n = positive(s.trunc_t, 6, "trunc-t");
  const Node in = require_input(s, "star");
  const Generators g = weyl::darboux_gens(dim);
  const weyl::WeylElement f(dim, tseries_from(in.at("f"), g).truncated(n));
  const weyl::WeylElement h(dim, tseries_from(in.at("g"), g).truncated(n));
  const weyl::WeylElement p = weyl::moyal_star(f, h, s.star_options());
  r.result = to_json(p);
  r.precision = {{"trunc_t", n}, {"result_trunc", p.trunc() >= kExact ? Json(nullptr) : Json(p.trunc())}};
  if (f.value().effective_lower() >= 0 && h.value().effective_lower() >= 0 && p.trunc() > 0) {
    const Poly lhs = set_t_zero(p.value());
    const Poly rhs = set_t_zero(f.value()) * set_t_zero(h.value());
    r.checks.push_back(check("classical-limit", lhs == rhs, "t^0 part is the commutative product",
                             to_json(lhs), to_json(rhs)));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Hochschild

hs::Chain chain_input(const Settings& s, const std::string& command) {
  const Node in = require_input(s, command);
  return chain_from(in, positive(s.dim, 1, "dim"), s.star_options());
}

Json zero_json() { return Json::array(); }

Report run_hb(const Settings& s) {
  Report r;
  const hs::Chain c = chain_input(s, "hb");
  const hs::Chain b = hs::diff_b(c);
  r.result = to_json(b);
  const hs::Chain bb = hs::diff_b(b);
  r.checks.push_back(check("b-squared", bb.is_zero(), "b(b(c)) = 0", to_json(bb), zero_json()));
  return r;
}

Report run_hB(const Settings& s) {
  Report r;
  const hs::Chain c = chain_input(s, "hB");
  const hs::Chain B = hs::diff_B(c);
  r.result = to_json(B);
  const hs::Chain BB = hs::diff_B(B);
  r.checks.push_back(check("B-squared", BB.is_zero(), "B(B(c)) = 0", to_json(BB), zero_json()));
  const hs::Chain mixed =
      c.degree() >= 1 ? hs::diff_b(B) + hs::diff_B(hs::diff_b(c)) : hs::diff_b(B);
  r.checks.push_back(check("bB-plus-Bb", mixed.is_zero(), "bB + Bb = 0", to_json(mixed), zero_json()));
  if (s.trunc_u) {
    const int hi = positive(s.trunc_u, 1, "trunc-u");
    const hs::UChain u = hs::u_include(c, hi);
    const hs::UChain du = hs::diff_cyclic(u);
    const hs::UChain ddu = hs::diff_cyclic(du);
    Json comps = Json::object();
    for (const auto& [k, ch] : du.components()) comps[std::to_string(k)] = to_json(ch);
    r.result = Json{{"B", r.result}, {"cyclic", Json{{"lo", du.lo()}, {"hi", du.hi()}, {"components", comps}}}};
    r.precision["trunc_u"] = hi;
    r.checks.push_back(check("cyclic-squared", ddu.is_zero(), "(b + uB)^2 = 0 in the u-window"));
  }
  return r;
}

Report run_verify_cycle(const Settings& s) {
  Report r;
  const int dim = positive(s.dim, 1, "dim");
  hs::Chain c(hs::poly_algebra(Generators{"x"}), 0);
  std::string what = "phi_E";
  if (!s.input) {
    c = hs::phi_E(dim);
  } else {
    const Node in(*s.input, "");
    if (in.has("chain") && in.at("chain").json().is_string()) {
      what = in.at("chain").as_string();
      int d = dim;
      if (in.has("dim")) d = static_cast<int>(in.at("dim").as_int());
      if (d < 1 || d > 3) in.error("dimension must be between 1 and 3");
      if (what == "phi_E")
        c = hs::phi_E(d);
      else if (what == "phi_E_rees")
        c = hs::phi_E_rees(d);
      else if (what == "phi_A")
        c = hs::phi_A(d, s.star_options());
      else
        in.at("chain").error("unknown named chain \"" + what + "\"");
    } else {
      what = "input";
      c = chain_from(in, dim, s.star_options());
    }
  }
  const hs::Chain b = hs::diff_b(c);
  r.checks.push_back(check("b-cycle", b.is_zero(),
                           what + ": b(c) = 0 on " + std::to_string(c.terms().size()) + " words",
                           to_json(b), zero_json()));
  r.result = Json{{"chain", what}, {"words", c.terms().size()}};
  return r;
}

Report run_hkr(const Settings& s) {
  Report r;
  const hs::Chain c = chain_input(s, "hkr");
  if (!c.algebra()->commutative()) throw InputError("hkr needs a chain over the \"poly\" algebra");
  const hkr::DForm f = hkr::hkr_map(c);
  r.result = to_json(f);
  if (c.degree() >= 1) {
    const hkr::DForm hb = hkr::hkr_map(hs::diff_b(c));
    r.checks.push_back(check("hkr-b", hb.is_zero(), "hkr(b(c)) = 0", to_json(hb), zero_json()));
  }
  const hkr::DForm lhs = hkr::hkr_map(hs::diff_B(c));
  const hkr::DForm rhs = hkr::de_rham(f);
  r.checks.push_back(check("hkr-B", lhs == rhs, "hkr(B(c)) = d hkr(c)", to_json(lhs), to_json(rhs)));
  return r;
}

// ---------------------------------------------------------------------------
// charclass

template <class P>
Json graded_json(int max_degree, P&& component) {
  Json comps = Json::array();
  for (int k = 0; k <= max_degree; ++k) {
    const Poly c = component(k);
    if (c.is_zero()) continue;
    comps.push_back(Json{{"degree", 2 * k}, {"value", to_json(c)}});
  }
  return comps;
}

Report run_charclass(const Settings& s) {
  namespace cc = rrdq::charclass;
  Report r;
  const int d = positive(s.dim, 2, "dim");
  const int D = positive(s.max_deg, 4, "max-deg");
  if (d > 6) throw InputError("--dim must be at most 6 for charclass");
  r.precision = {{"max_degree", D}, {"max_cohomological_degree", 2 * D}};
  if (s.cls == "rr-check") {
    const cc::IdentityReport rep = cc::rr_identity_check(d, D);
    Json lhs = Json::array(), rhs = Json::array();
    for (const auto& x : rep.discrepancies) {
      lhs.push_back(Json{{"basis", x.basis}, {"monomial", x.monomial}, {"degree", x.degree}, {"value", to_json(x.lhs)}});
      rhs.push_back(Json{{"basis", x.basis}, {"monomial", x.monomial}, {"degree", x.degree}, {"value", to_json(x.rhs)}});
    }
    r.checks.push_back(check("rr-identity", rep.equal,
                             "A-hat * exp(c1/2) = Td in roots and Chern classes, d = " + std::to_string(d),
                             lhs, rhs));
    r.result = Json{{"class", "rr-check"}, {"dim", d}, {"max_degree", D}};
    return r;
  }
  cc::ChernRootSeries series(d, D, Poly(cc::root_gens(d)));
  if (s.cls == "a-hat")
    series = cc::a_hat(d, D);
  else if (s.cls == "todd")
    series = cc::todd(d, D);
  else if (s.cls == "exp")
    series = cc::exp_class(cc::half_first_chern(d, D), D);
  else
    throw InputError("unknown --class value \"" + s.cls + "\"");
  if (s.basis != "roots" && s.basis != "chern") throw InputError("unknown --basis value \"" + s.basis + "\"");

  const cc::ChernClassExpr chern = cc::to_chern_basis(series);
  Json comps = s.basis == "roots" ? graded_json(D, [&](int k) { return series.component(k); })
                                  : graded_json(D, [&](int k) { return chern.component(k); });
  r.result = Json{{"class", s.cls}, {"dim", d}, {"max_degree", D}, {"basis", s.basis}, {"components", comps}};
  const Poly one = Poly::constant(cc::root_gens(d), Rational(1));
  r.checks.push_back(check("constant-term-one", series.component(0) == one, "degree-0 part is 1",
                           to_json(series.component(0)), to_json(one)));
  const bool round = cc::to_root_basis(chern) == series;
  r.checks.push_back(check("symmetric", round, "root expansion of the Chern form gives the series back"));
  return r;
}

// ---------------------------------------------------------------------------
// fedosov

Report run_fedosov(const Settings& s) {
  namespace fd = rrdq::fedosov;
  Report r;
  const int K = positive(s.fiber_trunc, 4, "fiber-trunc");
  const int N = positive(s.trunc_t, 4, "trunc-t");
  const auto which = selected_checks(s, {"flat", "lift-curvature", "transition", "psi"});

  std::optional<fd::GlConnection> a0;
  std::optional<fd::PolyMatrix> g;
  if (s.input) {
    const Node in(*s.input, "");
    in.expect_object();
    if (in.has("A0")) a0 = connection_from(in.at("A0"));
    if (in.has("transition")) {
      const int d = a0 ? a0->chart->d() : positive(s.dim, 2, "dim");
      g = matrix_from(in.at("transition"), fd::Chart::base(d));
    }
  }
  if (!a0) {
    const int d = positive(s.dim, 2, "dim");
    if (d > 4) throw InputError("--dim must be at most 4 for fedosov");
    a0 = default_connection(d);
  }
  const int d = a0->chart->d();
  r.precision = {{"dim", d}, {"fiber_trunc", K}, {"trunc_t", N}, {"curvature_valid_weight", K - 1}};
  r.result = Json::object();

  std::optional<fd::VFForm> a;
  try {
    a = fd::kazhdan_assemble(*a0, K);
  } catch (const Error& e) {
    r.checks.push_back(check("torsion-free", false, e.what()));
    return r;
  }
  r.checks.push_back(check("torsion-free", true, "Kazhdan recursion unobstructed"));
  if (wants(which, "flat")) {
    const fd::VFForm curv = fd::curvature(*a);
    r.checks.push_back(check("kazhdan-flat", curv.is_zero(),
                             "curvature vanishes for zh-degree < " + std::to_string(K), to_json(curv),
                             zero_json()));
    r.result["connection"] = to_json(*a);
  }
  const fd::RForm lift = fd::lift_connection(*a, *a0, N);
  const fd::RForm lift_curv = fd::curvature(lift);
  if (wants(which, "lift-curvature")) {
    const fd::RForm want = fd::half_trace_curvature(*a0);
    r.checks.push_back(check("lift-curvature", (lift_curv - want).is_zero(),
                             "curvature of the lift equals tr((nabla^0)^2)/2", to_json(lift_curv),
                             to_json(want)));
    r.result["lift_curvature"] = to_json(lift_curv);
  }
  if (wants(which, "transition")) {
    const fd::PolyMatrix gm = g ? *g : default_transition(d);
    fd::TransitionReport rep;
    try {
      rep = fd::transition_check(*a, *a0, fd::TransitionDatum{gm}, N);
    } catch (const Error& e) {
      throw InputError(std::string("transition: ") + e.what());
    }
    r.checks.push_back(check("transition-lie", rep.lie_identity, "i(A_a) = std(dg g^-1) - tr(dg g^-1)/2 + g.i(A_b)"));
    r.checks.push_back(check("transition-trace", rep.trace_identity, "tr A0_a = tr(dg g^-1) + tr A0_b"));
    r.checks.push_back(check("transition-lift", rep.lifted_identity, "lift_a - g.lift_b = std(dg g^-1)"));
  }
  if (wants(which, "psi")) {
    const fd::RForm conj = fd::psi_conjugate(lift);
    const fd::RForm after = fd::curvature(conj);
    const fd::RForm before = fd::pullback_to_cotangent(lift_curv);
    r.checks.push_back(check("psi-curvature", (after - before).is_zero(),
                             "curvature unchanged by Psi conjugation", to_json(after), to_json(before)));
    bool round = true;
    const fd::RForm pulled = fd::pullback_to_cotangent(lift);
    for (const auto& [w, v] : pulled.terms()) round = round && fd::psi_inverse_apply(fd::psi_apply(v)) == v;
    r.checks.push_back(check("psi-roundtrip", round, "Psi^-1(Psi(a)) = a on the lifted connection"));
  }
  return r;
}

// ---------------------------------------------------------------------------
// rees

rees::ReesElement rees_from(const Node& n, int dim) {
  n.expect_object();
  rees::ReesElement out = rees::ReesElement::zero(dim);
  for (const auto& [k, v] : n.json().items()) {
    const Node c(v, n.path() + "/" + k);
    int p = 0;
    try {
      p = std::stoi(k);
    } catch (const std::exception&) {
      n.error("t-exponent key \"" + k + "\" is not an integer");
    }
    const rees::DiffOp op = diffop_from(c, dim);
    if (op.dim() != dim) c.error("operator dimension differs from the pair");
    if (p < 0 || op.order() > p) c.error("order " + std::to_string(op.order()) + " exceeds t-degree " + std::to_string(p));
    out = out + rees::rees_embed(op, p);
  }
  return out;
}

}  // namespace

std::vector<std::pair<rees::ReesElement, rees::ReesElement>> random_rees_pairs(Rng& rng, int count,
                                                                             std::optional<int> dim) {
  std::vector<std::pair<rees::ReesElement, rees::ReesElement>> out;
  for (int i = 0; i < count; ++i) {
    const int d = dim ? *dim : 1 + i % 2;
    rees::ReesElement a = random_rees(rng, d);
    rees::ReesElement b = random_rees(rng, d);
    out.emplace_back(std::move(a), std::move(b));
  }
  return out;
}

Check rees_sigma_check(const std::vector<std::pair<rees::ReesElement, rees::ReesElement>>& pairs) {
  for (const auto& [a, b] : pairs) {
    const Poly lhs = rees::rees_sigma(rees::rees_mul(a, b));
    const Poly rhs = rees::rees_sigma(a) * rees::rees_sigma(b);
    if (!(lhs == rhs)) return check("sigma", false, "sigma(ab) = sigma(a) sigma(b)", to_json(lhs), to_json(rhs));
  }
  return check("sigma", true, "sigma(ab) = sigma(a) sigma(b) on " + std::to_string(pairs.size()) + " pairs");
}

Check rees_iota_check(const std::vector<std::pair<rees::ReesElement, rees::ReesElement>>& pairs) {
  for (const auto& [a, b] : pairs) {
    const int d = a.dim();
    const rees::ReesElement ab = rees::rees_mul(a, b);
    const TSeries lhs = rees::rees_iota(ab);
    const TSeries rhs = rees::diffop_series_mul(rees::rees_iota(a), rees::rees_iota(b), d);
    if (!(lhs == rhs)) return check("iota", false, "iota(ab) = iota(a) iota(b)", to_json(lhs), to_json(rhs));
    for (const auto* x : {&a, &b, &ab}) {
      const TSeries img = rees::rees_iota(*x);
      if (x->is_zero() != img.is_zero())
        return check("iota", false, "iota is injective", to_json(img), to_json(x->graded()));
      const rees::ReesElement back = rees::rees_iota_inverse(d, img);
      if (!(back == *x))
        return check("iota", false, "iota^-1(iota(a)) = a", to_json(back.graded()), to_json(x->graded()));
    }
    // order bound of the product: every t^p part has order <= p
    for (const auto& [p, c] : ab.graded().coeffs())
      if (rees::DiffOp(d, c).order() > p)
        return check("iota", false, "order(ab)_p <= p", to_json(rees::DiffOp(d, c)), Json(p));
  }
  return check("iota", true,
               "multiplicative injection with exact round trip and order bounds on " +
                   std::to_string(pairs.size()) + " pairs");
}

Check rees_to_weyl_check(const std::vector<std::pair<rees::ReesElement, rees::ReesElement>>& pairs,
                         const weyl::StarOptions& opts) {
  for (const auto& [a, b] : pairs) {
    const weyl::WeylElement lhs = rees::rees_to_weyl(rees::rees_mul(a, b), opts);
    const weyl::WeylElement rhs =
        weyl::moyal_star(rees::rees_to_weyl(a, opts), rees::rees_to_weyl(b, opts), opts);
    if (!agree(lhs, rhs)) return check("to-weyl", false, "multiplicative", to_json(lhs), to_json(rhs));
    const Poly sym = set_t_zero(rees::rees_to_weyl(a, opts).value());
    if (!(sym == rees::rees_sigma(a)))
      return check("to-weyl", false, "t = 0 gives the symbol", to_json(sym), to_json(rees::rees_sigma(a)));
  }
  return check("to-weyl", true, "multiplicative and symbol-compatible on " + std::to_string(pairs.size()) + " pairs");
}

Check rees_phi_check(const std::vector<int>& dims, const weyl::StarOptions& opts) {
  std::string detail = "rees_to_weyl(iota^-1(phi_E(d))) = phi_A(d) for d =";
  for (int d : dims) {
    const hs::Chain rees_phi = hs::induced_chain_map(hs::iota_inverse_morphism(d), hs::phi_E(d));
    const hs::Chain img = hs::induced_chain_map(hs::rees_to_weyl_morphism(d, true, opts), rees_phi);
    const hs::Chain want = hs::phi_A(d, opts);
    if (!agree(img, want)) return check("phi-compat", false, detail + " " + std::to_string(d), to_json(img), to_json(want));
    detail += " " + std::to_string(d);
  }
  return check("phi-compat", true, detail);
}

namespace {

Report run_rees(const Settings& s) {
  Report r;
  const auto which = selected_checks(s, {"sigma", "iota", "to-weyl", "phi-compat"});
  std::optional<int> dim;
  if (s.dim) dim = positive(s.dim, 1, "dim");
  std::vector<std::pair<rees::ReesElement, rees::ReesElement>> pairs;
  if (s.input) {
    const Node in(*s.input, "");
    const Node list = in.at("pairs");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const Node pr = list.at(i);
      const int d = pr.has("dim") ? static_cast<int>(pr.at("dim").as_int()) : dim.value_or(1);
      if (d < 1) pr.at("dim").error("dimension must be positive");
      pairs.emplace_back(rees_from(pr.at("a"), d), rees_from(pr.at("b"), d));
    }
  } else {
    Rng rng(s.seed);
    pairs = random_rees_pairs(rng, corpus(s, 100), dim);
  }
  r.precision = {{"pairs", pairs.size()}};
  if (wants(which, "sigma")) r.checks.push_back(rees_sigma_check(pairs));
  if (wants(which, "iota")) r.checks.push_back(rees_iota_check(pairs));
  if (wants(which, "to-weyl")) r.checks.push_back(rees_to_weyl_check(pairs, s.star_options()));
  if (wants(which, "phi-compat")) {
    std::vector<int> dims = dim ? std::vector<int>{*dim} : std::vector<int>{1, 2};
    if (dims.front() > 3) throw InputError("--dim must be at most 3 for phi-compat");
    r.checks.push_back(rees_phi_check(dims, s.star_options()));
  }
  return r;
}

}  // namespace

Report run_task(const std::string& command, const Settings& s) {
  Report r;
  try {
    if (command == "star")
      r = run_star(s);
    else if (command == "hb")
      r = run_hb(s);
    else if (command == "hB")
      r = run_hB(s);
    else if (command == "verify-cycle")
      r = run_verify_cycle(s);
    else if (command == "hkr")
      r = run_hkr(s);
    else if (command == "charclass")
      r = run_charclass(s);
    else if (command == "fedosov")
      r = run_fedosov(s);
    else if (command == "rees")
      r = run_rees(s);
    else if (command == "suite")
      return run_suite(s);
    else
      throw InputError("unknown command \"" + command + "\"");
  } catch (const Error& e) {
    // contract violations raised by the library on user-supplied data
    throw InputError(e.what());
  }
  r.command = command;
  r.seed = s.seed;
  r.canonicalize();
  return r;
}

}  // namespace rrdq::cli
