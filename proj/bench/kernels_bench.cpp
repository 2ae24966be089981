// OpenMP kernels against their serial references. Run with e.g.
//   OMP_NUM_THREADS=4 ./kernels_bench --benchmark_filter=Commutator

#include <complex>
#include <map>
#include <memory>
#include <random>

#include <benchmark/benchmark.h>

#include "chimera/kernels.hpp"
#include "chimera/operators.hpp"

using namespace chimera;

namespace {

struct Fixture {
  explicit Fixture(int M) : g(build_chimera(M, M, 4, Boundary::periodic)), H(hamiltonian(g)) {}
  ChimeraGraph g;
  WalkHamiltonian H;
};

Fixture& fixture(int M) {
  static std::map<int, std::unique_ptr<Fixture>> cache;
  auto& slot = cache[M];
  if (!slot) slot = std::make_unique<Fixture>(M);
  return *slot;
}

Eigen::VectorXcd phases(const EigenSystem& e, double t) {
  Eigen::VectorXcd p(e.values.size());
  for (Eigen::Index i = 0; i < p.size(); ++i) p(i) = std::polar(1.0, -t * e.values(i));
  return p;
}

Eigen::VectorXcd random_state(Eigen::Index n) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> d;
  Eigen::VectorXcd psi(n);
  for (Eigen::Index i = 0; i < n; ++i) psi(i) = {d(rng), d(rng)};
  return psi.normalized();
}

template <bool Parallel>
void Commutator(benchmark::State& state) {
  auto& f = fixture(static_cast<int>(state.range(0)));
  const auto S = permutation_operator(f.g, 5).matrix;
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? kernels::commutator_maxnorm(S, f.H.matrix())
                                      : kernels::serial::commutator_maxnorm(S, f.H.matrix()));
  }
  state.counters["threads"] = kernels::thread_count();
}

template <bool Parallel>
void Projector(benchmark::State& state) {
  auto& f = fixture(static_cast<int>(state.range(0)));
  const auto& e = f.H.eigensystem();
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? kernels::projector_weights(e.vectors, e.groups, 3)
                                      : kernels::serial::projector_weights(e.vectors, e.groups, 3));
  }
}

template <bool Parallel>
void Propagate(benchmark::State& state) {
  auto& f = fixture(static_cast<int>(state.range(0)));
  const auto& e = f.H.eigensystem();
  const auto p = phases(e, 12.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? kernels::spectral_propagate(e.vectors, p, 3)
                                      : kernels::serial::spectral_propagate(e.vectors, p, 3));
  }
}

template <bool Parallel>
void Fourier(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  const auto psi = random_state(static_cast<Eigen::Index>(M * M * 8));
  const std::vector<int> offsets{0, 1, 2, 3};
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? kernels::fourier_power(psi, M, M, 8, offsets)
                                      : kernels::serial::fourier_power(psi, M, M, 8, offsets));
  }
}

}  // namespace

BENCHMARK(Commutator<true>)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(Commutator<false>)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(Projector<true>)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(Projector<false>)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(Propagate<true>)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(Propagate<false>)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(Fourier<true>)->Arg(16)->Arg(32)->Unit(benchmark::kMicrosecond);
BENCHMARK(Fourier<false>)->Arg(16)->Arg(32)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
