// Serial reference vs OpenMP wedge kernel on the products that dominate a
// cocycle evaluation: (nu^-1 ^ dnu ^ nu^-1) ^ dnu at s = 2.

#include <benchmark/benchmark.h>

#include <random>

#include "padicreg/cocycle.hpp"
#include "padicreg/kernels.hpp"

using namespace padicreg;

namespace {

struct Operands {
  FormSeries left;
  FormSeries right;
};

Operands make_operands(int degree_cap, int n, u64 p) {
  const RingParams r(p, eval_work_precision(6, 1, 2, p, EvalOptions{degree_cap, 0, false}));
  std::mt19937_64 rng(99);
  GroupTuple t{r, 2, 1, {}};
  for (int i = 0; i < 4; ++i) {
    OMatrix g = OMatrix::identity(r, n);
    for (auto& c : g.data()) c = r.add_mod(c, r.mul_mod(p, rng() % r.order()));
    t.elems.push_back(g);
  }
  const FormSeries nu = build_nu(t, degree_cap);
  const FormSeries inv = form_inverse_one_plus(nu);
  const FormSeries omega = form_wedge(inv, form_d(nu));
  return {form_wedge(omega, inv), inv};
}

void BM_WedgeReference(benchmark::State& state) {
  const auto ops = make_operands(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::wedge_reference(ops.left, ops.right));
}

void BM_WedgeParallel(benchmark::State& state) {
  const auto ops = make_operands(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::wedge_parallel(ops.left, ops.right));
}

}  // namespace

BENCHMARK(BM_WedgeReference)->Args({8, 2})->Args({11, 2})->Args({8, 3})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WedgeParallel)->Args({8, 2})->Args({11, 2})->Args({15, 2})->Args({8, 3})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
