#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "multient/ed.hpp"
#include "multient/ggm.hpp"
#include "multient/hamiltonian.hpp"
#include "multient/kernels.hpp"

namespace {

using namespace multient;

struct SectorFixture {
  SparseHermitian H;
  Eigen::VectorXcd x;
  Eigen::VectorXcd y;

  explicit SectorFixture(int N) {
    const ChainHamiltonian ham(ChainSpec::make(N, 1.7));
    H = ham.sector_matrix(N / 2);
    x = Eigen::VectorXcd::Random(H.dim);
    y.resize(H.dim);
  }
};

void BM_ApplySerial(benchmark::State& state) {
  SectorFixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    kernels::serial::apply(f.H, as_span(f.x), as_span(f.y));
    benchmark::DoNotOptimize(f.y.data());
  }
  state.counters["nnz"] = static_cast<double>(f.H.nonzeros());
}

void BM_ApplyOmp(benchmark::State& state) {
  SectorFixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    kernels::omp::apply(f.H, as_span(f.x), as_span(f.y));
    benchmark::DoNotOptimize(f.y.data());
  }
  state.counters["nnz"] = static_cast<double>(f.H.nonzeros());
}

struct ScanFixture {
  Eigen::VectorXcd psi;
  std::vector<Bipartition> cuts;

  explicit ScanFixture(int N) {
    psi = ground_state(ChainSpec::make(N, 1.7)).vector;
    cuts = enumerate_bipartitions(N, BipartitionMode::All);
  }
};

void BM_SchmidtScanSerial(benchmark::State& state) {
  ScanFixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::max_schmidt_scan(as_span(f.psi), f.cuts));
  state.counters["cuts"] = static_cast<double>(f.cuts.size());
}

void BM_SchmidtScanOmp(benchmark::State& state) {
  ScanFixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::omp::max_schmidt_scan(as_span(f.psi), f.cuts));
  state.counters["cuts"] = static_cast<double>(f.cuts.size());
}

}  // namespace

BENCHMARK(BM_ApplySerial)->Arg(12)->Arg(14)->Arg(16)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ApplyOmp)->Arg(12)->Arg(14)->Arg(16)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SchmidtScanSerial)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SchmidtScanOmp)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
