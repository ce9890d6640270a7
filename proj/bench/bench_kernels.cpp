// Serial reference vs OpenMP kernels on the two parallel axes: z-grid points and
// batch instances.

#include <benchmark/benchmark.h>

#include <random>

#include "momentforge/extrapolate.hpp"
#include "momentforge/grid.hpp"
#include "momentforge/seqkit.hpp"
#include "momentforge/solver.hpp"
#include "momentforge/verify.hpp"

using namespace momentforge;

namespace {

struct Fixture {
  Problem p;
  HerglotzExpr f;
  HerglotzExpr F;
};

Fixture make_fixture(Index q, Index kappa, std::uint64_t seed) {
  auto [seq, sigma] = random_extendable_seq(q, kappa, kappa / 2 + 3, seed);
  std::mt19937_64 rng(seed);
  Problem p = open_problem(seq);
  HerglotzExpr f = p.determinate() ? empty_parameter() : random_gallery_parameter(p.slot.r, p.parity, rng);
  HerglotzExpr F = p.determinate() ? determinate_solution(p) : solve(p, f);
  return {std::move(p), f, F};
}

const Fixture& grid_fixture() {
  static const Fixture fx = make_fixture(3, 6, 11);
  return fx;
}

void BM_eval_grid(benchmark::State& state, Exec exec) {
  const std::vector<Complex> zs =
      ray_grid(geometric_grid(0.5L, 1.1L, static_cast<int>(state.range(0))), {0.5L, 1.5L, 2.6L});
  const HerglotzExpr& F = grid_fixture().F;
  for (auto _ : state) benchmark::DoNotOptimize(eval_grid(F, zs, exec));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(zs.size()));
}

void BM_batch_roundtrip(benchmark::State& state, Exec exec) {
  const auto count = static_cast<Index>(state.range(0));
  std::vector<Fixture> batch;
  for (Index i = 0; i < count; ++i) batch.push_back(make_fixture(1 + i % 3, 2 + i % 5, 100 + static_cast<std::uint64_t>(i)));
  const std::vector<Complex> zs = standard_z_grid();
  for (auto _ : state) {
    std::vector<Real> diffs(batch.size());
    for_each_index(count, exec, [&](Index i) {
      const Fixture& fx = batch[static_cast<size_t>(i)];
      if (fx.p.determinate()) return;
      diffs[static_cast<size_t>(i)] = compare(recover_parameter(fx.p, fx.F), fx.f, zs, 1e-8L, Exec::Serial).max_diff;
    });
    benchmark::DoNotOptimize(diffs);
  }
  state.SetItemsProcessed(state.iterations() * count);
}

}  // namespace

BENCHMARK_CAPTURE(BM_eval_grid, serial, Exec::Serial)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_eval_grid, parallel, Exec::Parallel)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_batch_roundtrip, serial, Exec::Serial)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_batch_roundtrip, parallel, Exec::Parallel)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
