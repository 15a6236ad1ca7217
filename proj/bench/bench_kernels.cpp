// Serial reference vs OpenMP kernels on planted matrices of growing size.

#include <benchmark/benchmark.h>

#include <random>

#include "matpfd/pipeline.hpp"
#include "support/planted.hpp"

using namespace matpfd;
using namespace matpfd::testing;

namespace {

/// n x n matrix with one eigenvalue per Jordan block of size <= 2.
Planted sized(std::size_t n) {
  std::mt19937_64 rng(97 + n);
  std::vector<JordanBlock> blocks;
  std::size_t used = 0;
  long lambda = -static_cast<long>(n) / 2;
  while (used < n) {
    const int size = used + 2 <= n && used % 3 == 0 ? 2 : 1;
    blocks.push_back({Rational(lambda++, 2), size});
    used += static_cast<std::size_t>(size);
  }
  return plant(rng, blocks);
}

ExecPolicy policy_of(const benchmark::State& state) {
  return state.range(1) ? ExecPolicy::parallel : ExecPolicy::serial;
}

void label(benchmark::State& state) { state.SetLabel(state.range(1) ? "openmp" : "serial"); }

void BM_matmul(benchmark::State& state) {
  const auto p = sized(static_cast<std::size_t>(state.range(0)));
  Matrix<Rational> a = p.s * p.a;
  for (auto _ : state) benchmark::DoNotOptimize(matmul(a, p.s_inv, policy_of(state)));
  label(state);
}

void BM_faddeev_leverrier(benchmark::State& state) {
  const auto p = sized(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(faddeev_leverrier(p.a, policy_of(state)));
  label(state);
}

void BM_pfd_residue(benchmark::State& state) {
  const auto p = sized(static_cast<std::size_t>(state.range(0)));
  const auto ca = faddeev_leverrier(p.a, ExecPolicy::serial);
  const auto factors = factor_charpoly(ca.charpoly, Mode::complex);
  const auto adj = ca.adjugate.cast<Gaussian>();
  for (auto _ : state) benchmark::DoNotOptimize(pfd_residue(factors, adj, policy_of(state)));
  label(state);
}

void BM_pfd_undetermined(benchmark::State& state) {
  const auto p = sized(static_cast<std::size_t>(state.range(0)));
  const auto ca = faddeev_leverrier(p.a, ExecPolicy::serial);
  const auto factors = factor_charpoly(ca.charpoly, Mode::complex);
  const auto adj = ca.adjugate.cast<Gaussian>();
  for (auto _ : state) benchmark::DoNotOptimize(pfd_undetermined(factors, adj, policy_of(state)));
  label(state);
}

void BM_decompose(benchmark::State& state) {
  const auto p = sized(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(decompose(p.a, ModeRequest::complex, {}, policy_of(state)));
  label(state);
}

void sizes(benchmark::internal::Benchmark* b) {
  for (long n : {4, 8, 12})
    for (long par : {0, 1}) b->Args({n, par});
  b->Unit(benchmark::kMicrosecond);
}

}  // namespace

BENCHMARK(BM_matmul)->Apply(sizes);
BENCHMARK(BM_faddeev_leverrier)->Apply(sizes);
BENCHMARK(BM_pfd_residue)->Apply(sizes);
BENCHMARK(BM_pfd_undetermined)->Apply(sizes);
BENCHMARK(BM_decompose)->Apply(sizes);

BENCHMARK_MAIN();
