#include <algorithm>

#include "rrdq/charclass.hpp"
#include "rrdq/cli/tasks.hpp"
#include "rrdq/error.hpp"
#include "rrdq/fedosov.hpp"
#include "rrdq/hkr.hpp"
#include "rrdq/hochschild.hpp"
#include "rrdq/random.hpp"

namespace rrdq::cli {

namespace hs = rrdq::hochschild;
namespace fd = rrdq::fedosov;

namespace {

Check make(const std::string& id, bool passed, std::string detail, Json lhs = {}, Json rhs = {}) {
  Check c;
  c.id = id;
  c.passed = passed;
  c.detail = std::move(detail);
  if (!passed) {
    c.lhs = std::move(lhs);
    c.rhs = std::move(rhs);
  }
  return c;
}

/// Independent stream per criterion.
Rng stream(const Settings& s, int criterion) {
  return Rng(s.seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(criterion)));
}

const char* const kC01 = "c01-moyal-associativity";
const char* const kC02 = "c02-star-bracket-normalization";
const char* const kC03 = "c03-hochschild-identities";
const char* const kC04 = "c04-trace-density-cycles";
const char* const kC05 = "c05-chain-map-compatibility";
const char* const kC06 = "c06-hkr-chain-map";
const char* const kC07 = "c07-riemann-roch-class-identity";
const char* const kC08 = "c08-gl-embedding-trace-correction";
const char* const kC09 = "c09-fedosov-curvature";
const char* const kC10 = "c10-psi-invariance";
const char* const kC11 = "c11-rees-structure";
const char* const kC12 = "c12-determinism-negative-controls";

Check c01(const Settings& s) {
  Rng rng = stream(s, 1);
  const weyl::StarOptions opts = s.star_options();
  const int n = corpus(s, 100);
  int failures = 0;
  Json lhs, rhs;
  for (int i = 0; i < n; ++i) {
    const int d = static_cast<int>(rng.uniform(1, 2));
    const Generators g = weyl::darboux_gens(d);
    const auto f = weyl::WeylElement::from_poly(d, random_poly(rng, g, 4, 4), 0, 6);
    const auto h = weyl::WeylElement::from_poly(d, random_poly(rng, g, 4, 4), 0, 6);
    const auto k = weyl::WeylElement::from_poly(d, random_poly(rng, g, 4, 4), 0, 6);
    const auto left = weyl::moyal_star(weyl::moyal_star(f, h, opts), k, opts);
    const auto right = weyl::moyal_star(f, weyl::moyal_star(h, k, opts), opts);
    if (!(left == right)) {
      if (failures++ == 0) {
        lhs = to_json(left);
        rhs = to_json(right);
      }
    }
  }
  return make(kC01, failures == 0,
              std::to_string(n) + " triples, degree <= 4, d <= 2, t-truncation 6, " +
                  std::to_string(failures) + " non-associative",
              lhs, rhs);
}

Check c02(const Settings& s) {
  const weyl::StarOptions opts = s.star_options();
  int checked = 0;
  for (int d = 1; d <= 3; ++d)
    for (int i = 1; i <= d; ++i)
      for (int j = 1; j <= d; ++j) {
        const auto x = weyl::WeylElement::x;
        const auto xi = weyl::WeylElement::xi;
        const auto zero = weyl::WeylElement::zero(d);
        const auto minus_t = weyl::WeylElement::t_power(d, 1).scaled(Rational(-1));
        const std::vector<std::pair<weyl::WeylElement, weyl::WeylElement>> cases{
            {weyl::star_commutator(x(d, i, kExact), xi(d, j, kExact), opts), i == j ? minus_t : zero},
            {weyl::star_commutator(x(d, i, kExact), x(d, j, kExact), opts), zero},
            {weyl::star_commutator(xi(d, i, kExact), xi(d, j, kExact), opts), zero},
        };
        for (const auto& [got, want] : cases) {
          ++checked;
          if (!agree(got, want))
            return make(kC02, false, "bracket of generators in d = " + std::to_string(d), to_json(got),
                        to_json(want));
        }
      }
  return make(kC02, true, "[x_i, xi_j] = -t delta_ij, [x_i, x_j] = [xi_i, xi_j] = 0 for d <= 3 (" +
                              std::to_string(checked) + " brackets)");
}

Check c03(const Settings& s) {
  Rng rng = stream(s, 3);
  const int n = corpus(s, 200);
  const std::vector<hs::AlgebraPtr> algs{hs::poly_algebra(Generators{"x", "y", "z"}),
                                         hs::weyl_algebra(2, false, s.star_options())};
  for (const auto& alg : algs)
    for (int i = 0; i < n; ++i) {
      const int deg = static_cast<int>(rng.uniform(0, 4));
      const hs::Chain c = random_chain(rng, alg, deg, 3, 2, alg->commutative() ? 0 : 1);
      const hs::Chain bb = hs::diff_b(hs::diff_b(c));
      if (!bb.is_zero()) return make(kC03, false, alg->name() + ": b^2 = 0", to_json(bb), to_json(c));
      const hs::Chain BB = hs::diff_B(hs::diff_B(c));
      if (!BB.is_zero()) return make(kC03, false, alg->name() + ": B^2 = 0", to_json(BB), to_json(c));
      const hs::Chain mixed =
          deg >= 1 ? hs::diff_b(hs::diff_B(c)) + hs::diff_B(hs::diff_b(c)) : hs::diff_b(hs::diff_B(c));
      if (!mixed.is_zero())
        return make(kC03, false, alg->name() + ": bB + Bb = 0", to_json(mixed), to_json(c));
    }
  return make(kC03, true,
              "b^2 = B^2 = bB + Bb = 0 on " + std::to_string(n) + " chains of degree <= 4 per handle (poly, weyl)");
}

Check c04(const Settings& s) {
  const std::vector<std::size_t> words{2, 24};
  for (int d = 1; d <= 2; ++d) {
    const hs::Chain e = hs::phi_E(d);
    const hs::Chain a = hs::phi_A(d, s.star_options());
    const std::size_t want = words[static_cast<std::size_t>(d - 1)];
    if (e.terms().size() != want || a.terms().size() != want)
      return make(kC04, false, "word count for d = " + std::to_string(d), Json(e.terms().size()), Json(want));
    const hs::Chain be = hs::diff_b(e);
    if (!be.is_zero()) return make(kC04, false, "b(phi_E) = 0, d = " + std::to_string(d), to_json(be), Json::array());
    const hs::Chain ba = hs::diff_b(a);
    if (!ba.is_zero()) return make(kC04, false, "b(phi_A) = 0, d = " + std::to_string(d), to_json(ba), Json::array());
  }
  return make(kC04, true, "b(phi_E(d)) = b(phi_A(d)) = 0 for d = 1, 2 (2 and 24 words)");
}

Check c05(const Settings& s) {
  Check c = rees_phi_check({1, 2}, s.star_options());
  c.id = kC05;
  return c;
}

Check c06(const Settings& s) {
  Rng rng = stream(s, 6);
  const int n = corpus(s, 200);
  const hs::AlgebraPtr alg = hs::poly_algebra(Generators{"x1", "x2", "x3"});
  for (int i = 0; i < n; ++i) {
    const int deg = static_cast<int>(rng.uniform(0, 4));
    const hs::Chain c = random_chain(rng, alg, deg, 3, 2);
    if (deg >= 1) {
      const hkr::DForm hb = hkr::hkr_map(hs::diff_b(c));
      if (!hb.is_zero()) return make(kC06, false, "hkr(b(c)) = 0", to_json(hb), to_json(c));
    }
    const hkr::DForm lhs = hkr::hkr_map(hs::diff_B(c));
    const hkr::DForm rhs = hkr::de_rham(hkr::hkr_map(c));
    if (!(lhs == rhs)) return make(kC06, false, "hkr(B(c)) = d hkr(c)", to_json(lhs), to_json(rhs));
  }
  const Generators g{"x", "y"};
  const hs::AlgebraPtr xy = hs::poly_algebra(g);
  hs::Chain c(xy, 2);
  c.add({{0, 0}, {1, 0}, {0, 1}}, scalar(Rational(1)));
  hkr::DForm want(g);
  want.add_term({0, 1}, Poly::constant(g, Rational(1, 2)));
  const hkr::DForm got = hkr::hkr_map(c);
  if (!(got == want)) return make(kC06, false, "hkr(1 (x) x (x) y) = dx ^ dy / 2", to_json(got), to_json(want));
  return make(kC06, true,
              "hkr o b = 0 and hkr o B = d o hkr on " + std::to_string(n) +
                  " chains over 3 variables; hkr(1 (x) x (x) y) = dx ^ dy / 2");
}

Check c07(const Settings& s) {
  namespace cc = rrdq::charclass;
  // coefficients of x / (1 - e^-x)
  const std::vector<Rational> todd_root{Rational(1),        Rational(1, 2), Rational(1, 12),
                                        Rational(0),        Rational(-1, 720), Rational(0),
                                        Rational(1, 30240), Rational(0),    Rational(-1, 1209600)};
  const cc::RootCoefficients got_root = cc::todd_root_series(8);
  for (std::size_t k = 0; k < todd_root.size(); ++k)
    if (!(got_root.at(k) == todd_root[k]))
      return make(kC07, false, "Todd root coefficient " + std::to_string(k), to_json(got_root.at(k)),
                  to_json(todd_root[k]));
  const int per_root = s.scale == "full" ? 10 : 8;
  for (int d = 1; d <= 3; ++d) {
    const int D = d == 1 ? per_root : 4;
    const cc::IdentityReport rep = cc::rr_identity_check(d, D);
    if (!rep.equal) {
      const auto& x = rep.discrepancies.front();
      return make(kC07, false, "A-hat e^(c1/2) = Td, d = " + std::to_string(d) + ", " + x.basis,
                  Json{{"monomial", x.monomial}, {"value", to_json(x.lhs)}},
                  Json{{"monomial", x.monomial}, {"value", to_json(x.rhs)}});
    }
  }
  const cc::ChernRootSeries one_root = cc::a_hat(1, per_root) * cc::exp_class(cc::half_first_chern(1, per_root), per_root);
  if (!(one_root == cc::todd(1, per_root)))
    return make(kC07, false, "per-root identity", to_json(one_root.terms()), to_json(cc::todd(1, per_root).terms()));
  for (int d = 2; d <= 3; ++d) {
    const Generators g = cc::chern_gens(d);
    auto mono = [&](int e1, int e2) {
      Exponent e(static_cast<std::size_t>(d), 0);
      e[0] = e1;
      e[1] = e2;
      return e;
    };
    Poly want(g);
    want.add_term(mono(0, 0), Rational(1));
    want.add_term(mono(1, 0), Rational(1, 2));
    want.add_term(mono(2, 0), Rational(1, 12));
    want.add_term(mono(0, 1), Rational(1, 12));
    want.add_term(mono(1, 1), Rational(1, 24));
    const Poly got = cc::to_chern_basis(cc::todd(d, 3)).terms();
    if (!(got == want)) return make(kC07, false, "Td to degree 3, d = " + std::to_string(d), to_json(got), to_json(want));
  }
  return make(kC07, true,
              "per-root to degree " + std::to_string(per_root) +
                  ", c-basis for d <= 3 to degree 4; Td = 1 + c1/2 + (c1^2 + c2)/12 + c1 c2/24 + ...");
}

fd::FormalVectorField gl_field(const fd::ChartPtr& ch, const weyl::RationalMatrix& m) {
  std::vector<Poly> comps(static_cast<std::size_t>(ch->d()), Poly(ch->vf_gens()));
  for (int a = 0; a < ch->d(); ++a)
    for (int b = 0; b < ch->d(); ++b)
      comps[static_cast<std::size_t>(b)] +=
          Poly::variable(ch->vf_gens(), ch->zh(a)).scaled(m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
  return {ch, comps};
}

Check c08(const Settings& s) {
  {
    const fd::ChartPtr ch = fd::Chart::fiber_only(1);
    const Generators& r = ch->rhat_gens();
    TSeries want = make_tseries(r, -1);
    want.add_term(-1, Poly::monomial(r, {1, 1}));
    want.add_term(0, Poly::constant(r, Rational(-1, 2)));
    const fd::RHatElement got = fd::i_map(gl_field(ch, {{Rational(1)}}));
    if (!(got.value() == want)) return make(kC08, false, "i(E11) = zh xh / t - 1/2", to_json(got.value()), to_json(want));
  }
  Rng rng = stream(s, 8);
  const fd::ChartPtr ch = fd::Chart::fiber_only(2);
  const int n = corpus(s, 50);
  auto random_matrix = [&] {
    weyl::RationalMatrix m(2, std::vector<Rational>(2, Rational(0)));
    for (auto& row : m)
      for (auto& x : row) x = Rational(rng.uniform(-3, 3));
    return m;
  };
  for (int i = 0; i < n; ++i) {
    const weyl::RationalMatrix a = random_matrix(), b = random_matrix();
    weyl::RationalMatrix c(2, std::vector<Rational>(2, Rational(0)));
    for (std::size_t p = 0; p < 2; ++p)
      for (std::size_t q = 0; q < 2; ++q)
        for (std::size_t k = 0; k < 2; ++k) c[p][q] += a[p][k] * b[k][q] - b[p][k] * a[k][q];
    const fd::RHatElement lhs = fd::rhat_bracket(fd::i_map(gl_field(ch, a)), fd::i_map(gl_field(ch, b)));
    const fd::RHatElement rhs = fd::i_map(gl_field(ch, c));
    if (!agree(lhs, rhs)) return make(kC08, false, "[i(a), i(b)] = i([a, b])", to_json(lhs.value()), to_json(rhs.value()));
  }
  return make(kC08, true, "i(E11) = zh xh / t - 1/2; [i(a), i(b)] = i([a, b]) on " + std::to_string(n) +
                              " integer 2x2 pairs");
}

Check c09(const Settings&) {
  const fd::GlConnection a0 = default_connection(2);
  const fd::ChartPtr& ch = a0.chart;
  const int K = 4;
  const fd::VFForm a = fd::kazhdan_assemble(a0, K);
  const fd::VFForm flat = fd::curvature(a);
  if (!flat.is_zero()) return make(kC09, false, "Kazhdan flatness to fiber degree 4", to_json(flat), Json::array());
  fd::RForm want(ch, fd::RHatElement::zero(ch));
  want.add_term({1, 0}, fd::RHatElement::central(ch, Poly::constant(ch->base_gens(), Rational(1, 2))));
  const fd::RForm half_tr = fd::half_trace_curvature(a0);
  if (!(half_tr - want).is_zero()) return make(kC09, false, "tr((nabla^0)^2)/2 = dz2 ^ dz1 / 2", to_json(half_tr), to_json(want));
  const fd::RForm curv = fd::curvature(fd::lift_connection(a, a0, 4));
  if (!(curv - want).is_zero()) return make(kC09, false, "lifted curvature = dz2 ^ dz1 / 2", to_json(curv), to_json(want));
  return make(kC09, true,
              "A0 = z2 dz1 (x) E11: Kazhdan flat below zh-degree 4, lifted curvature = dz2 ^ dz1 / 2 (central)");
}

Check c10(const Settings&) {
  const fd::GlConnection a0 = default_connection(1);
  const fd::RForm lift = fd::lift_connection(fd::kazhdan_assemble(a0, 3), a0, 4);
  const fd::RForm before = fd::pullback_to_cotangent(fd::curvature(lift));
  const fd::RForm after = fd::curvature(fd::psi_conjugate(lift));
  if (!(after - before).is_zero()) return make(kC10, false, "curvature after Psi", to_json(after), to_json(before));
  return make(kC10, true, "d = 1, fiber truncation 3: curvature unchanged by psi_conjugate");
}

Check c11(const Settings& s) {
  Rng rng = stream(s, 11);
  const ReesPairs pairs = random_rees_pairs(rng, corpus(s, 100), std::nullopt);
  for (Check c : {rees_sigma_check(pairs), rees_iota_check(pairs)}) {
    if (!c.passed) {
      c.detail = c.id + ": " + c.detail;
      c.id = kC11;
      return c;
    }
  }
  return make(kC11, true,
              "sigma multiplicative; iota multiplicative, injective, exact round trip; order bounds on " +
                  std::to_string(pairs.size()) + " pairs");
}

std::string run_serialized(const Settings& s, const std::vector<int>& which) {
  Settings t = s;
  t.criteria = which;
  return to_json(run_suite(t)).dump();
}

Check c12_with(const Settings& s, const std::string* first_run) {
  const std::vector<int> base{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
  const std::string a = first_run ? *first_run : run_serialized(s, base);
  const std::string b = run_serialized(s, base);
  if (a != b) return make(kC12, false, "repeated suite runs differ", Json(a.size()), Json(b.size()));
  Settings m = s;
  m.mutate_moyal_sign = true;
  const Check m1 = c01(m);
  const Check m2 = c02(m);
  if (m1.passed || m2.passed)
    return make(kC12, false, "Moyal sign mutation must break criteria 1 and 2", Json(m1.passed), Json(m2.passed));
  return make(kC12, true, "criteria 1-11 byte-identical across runs; sign mutation breaks criteria 1 and 2");
}

Check c12(const Settings& s) { return c12_with(s, nullptr); }

}  // namespace

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, kC01, c01}, {2, kC02, c02}, {3, kC03, c03}, {4, kC04, c04},  {5, kC05, c05},  {6, kC06, c06},
      {7, kC07, c07}, {8, kC08, c08}, {9, kC09, c09}, {10, kC10, c10}, {11, kC11, c11}, {12, kC12, c12},
  };
  return all;
}

Report run_suite(const Settings& s) {
  if (s.scale != "small" && s.scale != "full") throw InputError("unknown --scale value \"" + s.scale + "\"");
  std::vector<int> which = s.criteria;
  if (which.empty())
    for (const auto& c : criteria()) which.push_back(c.number);
  for (int n : which)
    if (n < 1 || n > static_cast<int>(criteria().size()))
      throw InputError("unknown criterion " + std::to_string(n));
  std::sort(which.begin(), which.end());
  which.erase(std::unique(which.begin(), which.end()), which.end());

  Report r;
  r.command = "suite";
  r.seed = s.seed;
  r.precision = {{"scale", s.scale}, {"moyal_sign_mutated", s.mutate_moyal_sign}};
  for (int n : which) {
    if (n == 12) continue;
    const Criterion& c = criteria()[static_cast<std::size_t>(n - 1)];
    try {
      r.checks.push_back(c.run(s));
    } catch (const Error& e) {
      r.checks.push_back(make(c.id, false, std::string("error: ") + e.what()));
    }
  }
  if (std::find(which.begin(), which.end(), 12) != which.end()) {
    const bool have_base = which.size() == 12;
    std::string first;
    if (have_base) {
      Report base = r;
      base.canonicalize();
      first = to_json(base).dump();
    }
    // the serialized report above used criteria 1-11 only
    Settings t = s;
    try {
      r.checks.push_back(c12_with(t, have_base ? &first : nullptr));
    } catch (const Error& e) {
      r.checks.push_back(make(kC12, false, std::string("error: ") + e.what()));
    }
  }
  r.canonicalize();
  return r;
}

}  // namespace rrdq::cli
