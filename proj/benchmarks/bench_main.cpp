#include <benchmark/benchmark.h>

#include "rrdq/charclass.hpp"
#include "rrdq/fedosov.hpp"
#include "rrdq/hochschild.hpp"
#include "rrdq/random.hpp"
#include "rrdq/weyl.hpp"

using namespace rrdq;

static void BM_MoyalStar(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const int deg = static_cast<int>(state.range(1));
  Rng rng(1);
  const Generators g = weyl::darboux_gens(d);
  const auto f = weyl::WeylElement::from_poly(d, random_poly(rng, g, deg, 6), 0, 8);
  const auto h = weyl::WeylElement::from_poly(d, random_poly(rng, g, deg, 6), 0, 8);
  for (auto _ : state) benchmark::DoNotOptimize(weyl::moyal_star(f, h));
}
BENCHMARK(BM_MoyalStar)->Args({1, 4})->Args({2, 4})->Args({2, 6})->Args({3, 4});

static void BM_HochschildB(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  Rng rng(2);
  const auto alg = hochschild::weyl_algebra(2, false);
  const hochschild::Chain c = random_chain(rng, alg, p, 8, 2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(hochschild::diff_b(c));
}
BENCHMARK(BM_HochschildB)->DenseRange(1, 4);

static void BM_PhiACycle(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hochschild::diff_b(hochschild::phi_A(d)));
}
BENCHMARK(BM_PhiACycle)->DenseRange(1, 2);

static void BM_RiemannRochIdentity(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const int D = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(charclass::rr_identity_check(d, D));
}
BENCHMARK(BM_RiemannRochIdentity)->Args({1, 8})->Args({2, 6})->Args({3, 4});

static void BM_Kazhdan(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  const auto ch = fedosov::Chart::base(2);
  std::vector<fedosov::PolyMatrix> coeff(2, fedosov::PolyMatrix(2, std::vector<Poly>(2, Poly(ch->base_gens()))));
  coeff[0][0][0] = Poly::variable(ch->base_gens(), std::size_t{1});
  const fedosov::GlConnection a0 = fedosov::gl_connection(2, coeff);
  for (auto _ : state) benchmark::DoNotOptimize(fedosov::kazhdan_assemble(a0, K));
}
BENCHMARK(BM_Kazhdan)->DenseRange(2, 5);
BENCHMARK_MAIN();
