#include <benchmark/benchmark.h>

#include "qfa/analysis.hpp"
#include "qfa/constructions.hpp"
#include "qfa/semantics.hpp"

namespace {

void BM_RunModularCounter(benchmark::State& state) {
  const auto m = qfa::modp_qfa(static_cast<std::uint64_t>(state.range(0)), 0);
  const auto word = qfa::repeat("a", static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(qfa::run_kw(m.automaton, word).p_acc);
  state.SetItemsProcessed(state.iterations() * state.range(1));
}
BENCHMARK(BM_RunModularCounter)->Args({31, 100})->Args({97, 100})->Args({97, 1000});

void BM_RunAmplified(benchmark::State& state) {
  const auto m = qfa::modp_qfa_amplified(31, 0.6, 0);
  const auto word = qfa::repeat("a", static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qfa::run_kw(m.automaton, word).p_rej);
}
BENCHMARK(BM_RunAmplified)->Arg(31)->Arg(62);

void BM_BuildModularCounter(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(qfa::modp_qfa(static_cast<std::uint64_t>(state.range(0)), 0));
  }
}
BENCHMARK(BM_BuildModularCounter)->Arg(31)->Arg(97)->Arg(251);

void BM_Minimize(benchmark::State& state) {
  const auto d = qfa::lm_dfa(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qfa::minimize_dfa(d).size());
}
BENCHMARK(BM_Minimize)->Arg(3)->Arg(10)->Arg(40);

void BM_Reversibilize(benchmark::State& state) {
  const auto d = qfa::lm_dfa(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qfa::reversibilize(d).size());
}
BENCHMARK(BM_Reversibilize)->DenseRange(1, 5);

void BM_TransitionMonoid(benchmark::State& state) {
  const auto d = qfa::lm_dfa(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qfa::transition_monoid(d).size());
}
BENCHMARK(BM_TransitionMonoid)->DenseRange(1, 3);

void BM_ProbabilisticChain(benchmark::State& state) {
  const auto trio = qfa::parity_prfa_trio();
  for (auto _ : state) benchmark::DoNotOptimize(qfa::prfa_to_qfa(trio.prfa).dimension());
}
BENCHMARK(BM_ProbabilisticChain);

}  // namespace
BENCHMARK_MAIN();
