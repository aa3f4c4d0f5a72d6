#include <benchmark/benchmark.h>

#include "lagdirac/fock.hpp"
#include "lagdirac/orthogonal.hpp"
#include "lagdirac/qham.hpp"
#include "lagdirac/random.hpp"
#include "lagdirac/spectral.hpp"

using namespace lagdirac;

static void BM_ForwardImage(benchmark::State& state) {
  Rng rng(1);
  const Eigen::Index n = state.range(0);
  const DiracStructure d = random_dirac_structure(rng, n);
  const DiracMorphism m = random_strong_morphism(rng, n + 1, d);
  for (auto _ : state) benchmark::DoNotOptimize(forward_image(m, d));
}
BENCHMARK(BM_ForwardImage)->Arg(4)->Arg(16)->Arg(64);

static void BM_DictionaryRoundTrip(benchmark::State& state) {
  Rng rng(2);
  const Eigen::MatrixXd a = random_orthogonal(rng, state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        orth_from_lag(lag_from_orth(OrthogonalPoint(a))));
}
BENCHMARK(BM_DictionaryRoundTrip)->Arg(4)->Arg(16)->Arg(64);

static void BM_DiscretizedModes(benchmark::State& state) {
  const BoundaryOperator b(Eigen::MatrixXd(Eigen::MatrixXd::Identity(1, 1)));
  const auto op = discretize(b, state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(smallest_magnitude_modes(op, 6));
}
BENCHMARK(BM_DiscretizedModes)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

static void BM_HsDiagnostic(benchmark::State& state) {
  const BoundaryOperator p(Eigen::MatrixXd(Eigen::MatrixXd::Identity(1, 1)));
  const BoundaryOperator m(Eigen::MatrixXd(-Eigen::MatrixXd::Identity(1, 1)));
  for (auto _ : state)
    benchmark::DoNotOptimize(hs_divergence_diagnostic(p, m, state.range(0)));
}
BENCHMARK(BM_HsDiagnostic)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_WedgeCar(benchmark::State& state) {
  const WedgeWindow w(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    int acc = 0;
    for (std::uint64_t s = 0; s < w.dim(); ++s) {
      std::uint64_t out = 0;
      acc += w.create(0, s, &out);
    }
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_WedgeCar)->Arg(4)->Arg(8);

static void BM_Reduction(benchmark::State& state) {
  Rng rng(3);
  const GroupContext ctx = GroupContext::su2();
  const Eigen::Index m_red = state.range(0);
  const Eigen::MatrixXd wred = random_invertible_skew(rng, m_red);
  const Eigen::MatrixXd l = random_invertible(rng, m_red + 6, 0.2);
  const ReductionInstance inst = build_reduction_instance(ctx, m_red, wred, l);
  for (auto _ : state)
    benchmark::DoNotOptimize(reduction_normal_form(inst.p));
}
BENCHMARK(BM_Reduction)->Arg(4)->Arg(6);

BENCHMARK_MAIN();
