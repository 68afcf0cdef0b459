// Microbenchmarks for the hot paths: problem generation (which embeds a
// solver pass per instance), rule induction, prompt rendering and completion
// parsing.
//
//   cmake --build build && ./build/benchmarks/lsa_bench
//   ./build/benchmarks/lsa_bench --benchmark_filter=Solve

#include <cstdint>

#include "benchmark/benchmark.h"
#include "lsa/eval.hpp"
#include "lsa/prompt.hpp"
#include "lsa/solver.hpp"
#include "lsa/transform.hpp"

namespace {

using namespace lsa;

Problem sample_problem(TransformationType t, int k) {
  ProblemSpec spec;
  spec.ttype = t;
  spec.interval = k;
  spec.alphabet = Alphabet::real();
  spec.run_length = is_single_letter_edit(t) ? kDefaultChangeRunLength : kDefaultFullRunLength;
  spec.seed = 12345;
  return generate_problem(spec);
}

void BM_SyntheticAlphabet(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(Alphabet::synthetic(seed++));
  }
}
BENCHMARK(BM_SyntheticAlphabet);

void BM_GenerateProblem(benchmark::State& state) {
  const auto t = kAllTransformationTypes[static_cast<std::size_t>(state.range(0))];
  ProblemSpec spec;
  spec.ttype = t;
  spec.interval = 2;
  spec.alphabet = Alphabet::real();
  spec.run_length = is_single_letter_edit(t) ? kDefaultChangeRunLength : kDefaultFullRunLength;
  spec.seed = 0;
  for (auto _ : state) {
    spec.seed++;
    benchmark::DoNotOptimize(generate_problem(spec));
  }
}
BENCHMARK(BM_GenerateProblem)->DenseRange(0, 5);

void BM_Solve(benchmark::State& state) {
  const Problem p = sample_problem(TransformationType::FixAlphabetic, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        solve(p.source_left, p.source_right, p.target_stem, p.spec.alphabet));
  }
}
BENCHMARK(BM_Solve);

void BM_RenderPrompt(benchmark::State& state) {
  const Problem p = sample_problem(TransformationType::Successor, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(render(p, PromptStyle::AlphabetPreamble));
  }
}
BENCHMARK(BM_RenderPrompt);

void BM_ParseCompletion(benchmark::State& state) {
  const Alphabet a = Alphabet::real();
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse_completion("  m n o p]\nand more text after", a));
  }
}
BENCHMARK(BM_ParseCompletion);

void BM_GenerateConditionSet(benchmark::State& state) {
  const Condition condition = *condition_by_label("interval2_synthetic");
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        generate_condition_problems(condition, 50, static_cast<std::uint64_t>(state.iterations())));
  }
}
BENCHMARK(BM_GenerateConditionSet)->Unit(benchmark::kMillisecond);

}  // namespace

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  benchmark::RunSpecifiedBenchmarks();
  return 0;
}
