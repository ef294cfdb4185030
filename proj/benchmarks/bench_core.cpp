#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "freedep/closure.hpp"
#include "freedep/dependence.hpp"
#include "freedep/equations.hpp"

using namespace freedep;

namespace {

Word random_word(std::mt19937_64& rng, const Alphabet& alphabet, std::size_t length) {
  const std::vector<Letter> letters = alphabet.letters();
  std::uniform_int_distribution<std::size_t> pick(0, letters.size() - 1);
  std::vector<Letter> raw;
  while (raw.size() < length) {
    const Letter l = letters[pick(rng)];
    if (raw.empty() || raw.back() != l.inverse()) raw.push_back(l);
  }
  return Word::reduce(raw);
}

std::vector<Word> random_gens(std::size_t count, std::size_t length, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Alphabet ab("ab");
  std::vector<Word> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_word(rng, ab, length));
  return out;
}

void BM_BuildCore(benchmark::State& state) {
  const auto gens = random_gens(3, static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(build_core(gens, Alphabet("ab")));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildCore)->RangeMultiplier(4)->Range(8, 2048)->Complexity();

void BM_PairSet(benchmark::State& state) {
  const CoreGraph h = build_core(random_gens(3, static_cast<std::size_t>(state.range(0)), 2), Alphabet("ab"));
  for (auto _ : state) benchmark::DoNotOptimize(pair_set(h));
  state.counters["vertices"] = static_cast<double>(h.vertex_count());
}
BENCHMARK(BM_PairSet)->RangeMultiplier(2)->Range(4, 32);

void BM_IsDependent(benchmark::State& state) {
  const CoreGraph h = build_core(random_gens(3, static_cast<std::size_t>(state.range(0)), 3), Alphabet("ab"));
  std::mt19937_64 rng(4);
  std::vector<Word> probes;
  for (int i = 0; i < 64; ++i) probes.push_back(random_word(rng, Alphabet("ab"), 8));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(is_dependent(h, probes[i++ % probes.size()]));
}
BENCHMARK(BM_IsDependent)->RangeMultiplier(4)->Range(4, 256);

void BM_EquationBasis(benchmark::State& state) {
  const std::vector<Word> gens{Word::parse("abA"), Word::parse("b")};
  const CoreGraph h = build_core(gens, Alphabet("ab"));
  const Word g = Word::parse("a");
  for (auto _ : state) benchmark::DoNotOptimize(equation_basis(h, g));
}
BENCHMARK(BM_EquationBasis);

void BM_DependenceClosure(benchmark::State& state) {
  const std::vector<Word> gens{Word::parse("babAAA"), Word::parse("bb")};
  const CoreGraph h = build_core(gens, Alphabet("ab"));
  for (auto _ : state) benchmark::DoNotOptimize(dependence_closure(h));
}
BENCHMARK(BM_DependenceClosure);

}  // namespace

BENCHMARK_MAIN();
