#include <benchmark/benchmark.h>

#include "zener/erf.hpp"
#include "zener/propagator.hpp"
#include "zener/spectral.hpp"
#include "zener/transfer.hpp"

using namespace zener;

namespace {

const Potential kPower = Potential::power(0.5, 1.0, -1);

Truncation trunc(int M) {
  Truncation tr;
  tr.M = M;
  return tr;
}

void BM_Diagonalize(benchmark::State& st) {
  const FiberModel model(kPower, trunc(int(st.range(0))));
  const MatC H = model.hamiltonian(0.1);
  for (auto _ : st) benchmark::DoNotOptimize(diagonalize(H, 0.1));
}
BENCHMARK(BM_Diagonalize)->Arg(16)->Arg(32)->Arg(64);

void BM_MagnusStep(benchmark::State& st) {
  const FiberModel model(kPower, trunc(int(st.range(0))));
  const FiberHamiltonian H(model);
  for (auto _ : st)
    benchmark::DoNotOptimize(step_generator(H, 0.1, 1.0 / 512, Scheme::Magnus4));
}
BENCHMARK(BM_MagnusStep)->Arg(16)->Arg(32)->Arg(64);

void BM_TransferMatrix(benchmark::State& st) {
  const int m = int(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(transfer_matrix(kPower, m, Half::I0));
}
BENCHMARK(BM_TransferMatrix)->Arg(8)->Arg(32);

void BM_ErfComplex(benchmark::State& st) {
  const cplx z(st.range(0) / 2.0, 1.3);
  for (auto _ : st) benchmark::DoNotOptimize(erf_complex(z));
}
BENCHMARK(BM_ErfComplex)->Arg(1)->Arg(6)->Arg(16);

}  // namespace
BENCHMARK_MAIN();
