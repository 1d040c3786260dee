#include <benchmark/benchmark.h>

#include "kimlab/amalgamation.hpp"
#include "kimlab/embedding.hpp"
#include "kimlab/generate.hpp"
#include "kimlab/independence.hpp"
#include "kimlab/oracle.hpp"
#include "kimlab/tree.hpp"

namespace {

using namespace kimlab;

FinStructure sample(std::size_t objects, std::uint64_t seed, int n = 1) {
  return random_structure(RandomShape{n, objects, 2, (objects + 1) / 2}, seed);
}

void BM_TreeEnumerate(benchmark::State& state) {
  const auto alpha = static_cast<tree::Level>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tree::enumerate(alpha, 3));
}
BENCHMARK(BM_TreeEnumerate)->DenseRange(2, 6);

// Two variables, one E-link to the base and one fixed-point equation.
void BM_OracleSat(benchmark::State& state) {
  const FinStructure base = sample(static_cast<std::size_t>(state.range(0)), 3);
  const ElemId b0 = base.objects().front();
  Diagram d;
  d.vars = {{"x", Sort::F}, {"y", Sort::O}};
  const Term x = Term::variable("x", Sort::F);
  const Term y = Term::variable("y", Sort::O);
  d.literals = {Literal::equiv(y, Term::constant(b0)),
                Literal::eq(y, Term::constant(b0), false),
                Literal::eq(Term::eval({x}, y), y)};
  for (auto _ : state) benchmark::DoNotOptimize(satisfiable(base, d));
}
BENCHMARK(BM_OracleSat)->DenseRange(2, 8, 2);

void BM_KInconsistency(benchmark::State& state) {
  const std::size_t m = static_cast<std::size_t>(state.range(0));
  StructureBuilder sb(1);
  for (std::uint32_t i = 0; i < m; ++i) {
    sb.add(ElemId{i}, Sort::O);
    if (i > 0) sb.unite(ElemId{0}, ElemId{i});
  }
  const FinStructure base = sb.build();
  Template t;
  t.body.vars = {{"x", Sort::F}, {"y", Sort::O}};
  const Term y = Term::variable("y", Sort::O);
  t.body.literals = {Literal::eq(Term::eval({Term::variable("x", Sort::F)}, y), y)};
  t.params = {"y"};
  ParamList params;
  for (std::uint32_t i = 0; i < m; ++i) params.push_back({ElemId{i}});
  for (auto _ : state) benchmark::DoNotOptimize(k_inconsistent(base, {t}, params, 2));
}
BENCHMARK(BM_KInconsistency)->DenseRange(2, 6);

void BM_StrongAmalgam(benchmark::State& state) {
  Rng rng(11);
  const FinStructure a = sample(static_cast<std::size_t>(state.range(0)), 5);
  const FinStructure b = random_extension(a, 4, 2, rng);
  const FinStructure c = random_extension(a, 4, 2, rng, b.next_free_id());
  for (auto _ : state) benchmark::DoNotOptimize(strong_amalgam(a, b, c));
}
BENCHMARK(BM_StrongAmalgam)->RangeMultiplier(2)->Range(2, 32);

void BM_FindEmbeddings(benchmark::State& state) {
  const FinStructure small = sample(3, 7);
  const FinStructure big = sample(static_cast<std::size_t>(state.range(0)), 9);
  for (auto _ : state) benchmark::DoNotOptimize(find_embeddings(small, big));
}
BENCHMARK(BM_FindEmbeddings)->DenseRange(4, 10, 2);

void BM_MorleySequence(benchmark::State& state) {
  const FinStructure m = sample(4, 13);
  const GenericSpec spec{closure(m, std::vector<ElemId>{m.objects().front()}),
                         {m.objects().back(), m.functions().back()}};
  const auto len = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(morley_sequence(m, spec, len));
}
BENCHMARK(BM_MorleySequence)->DenseRange(2, 8, 2);

}  // namespace

// The packaged benchmark_main archive is LTO bytecode from another compiler
// release, so the entry point is defined here.
BENCHMARK_MAIN();
