#include <benchmark/benchmark.h>

#include <numbers>
#include <random>

#include "qfloquet/qfloquet.hpp"

using namespace qfloquet;

namespace {

QMatrix random_matrix(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  QMatrix m(n, n);
  for (auto& q : m.entries()) q = {u(gen), u(gen), u(gen), u(gen)};
  return m;
}

constexpr double kPi = std::numbers::pi;

void BM_Product(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const QMatrix a = random_matrix(n, 1);
  const QMatrix b = random_matrix(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_Product)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_StandardEigenvalues(benchmark::State& state) {
  const QMatrix a = random_matrix(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(standard_eigenvalues(a));
}
BENCHMARK(BM_StandardEigenvalues)->Arg(2)->Arg(4)->Arg(8);

void BM_Expm(benchmark::State& state) {
  const QMatrix a = random_matrix(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(expm(a));
}
BENCHMARK(BM_Expm)->Arg(2)->Arg(4)->Arg(8);

void BM_LogmPrincipal(benchmark::State& state) {
  const QMatrix c = expm(0.3 * random_matrix(static_cast<std::size_t>(state.range(0)), 5));
  for (auto _ : state) benchmark::DoNotOptimize(logm(c));
}
BENCHMARK(BM_LogmPrincipal)->Arg(2)->Arg(4)->Arg(8);

void BM_LogmNegativeAxis(benchmark::State& state) {
  const QMatrix c{{Quaternion(-1), Quaternion(0.5, 0.5, -0.5, 0.5)}, {Quaternion(0), Quaternion(-1)}};
  for (auto _ : state) benchmark::DoNotOptimize(logm(c));
}
BENCHMARK(BM_LogmNegativeAxis);

void BM_ParseExpression(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parse("-1 + j*exp(cos(2*t)) + k*sin(2*t)"));
}
BENCHMARK(BM_ParseExpression);

void BM_Monodromy(benchmark::State& state) {
  const MatrixSpec spec = MatrixSpec::parse(2, {"1", "1", "0", "i + 2*exp(2*i*t)*j"}, kPi);
  for (auto _ : state) benchmark::DoNotOptimize(monodromy(spec));
}
BENCHMARK(BM_Monodromy)->Unit(benchmark::kMicrosecond);

void BM_NormalForm(benchmark::State& state) {
  const MatrixSpec spec = MatrixSpec::parse(2, {"k", "1", "0", "i + 2*exp(2*i*t)*j"}, kPi);
  for (auto _ : state) benchmark::DoNotOptimize(normal_form(spec));
}
BENCHMARK(BM_NormalForm)->Unit(benchmark::kMillisecond);

void BM_HillAnalyze(benchmark::State& state) {
  const HillProblem p = HillProblem::parse("-1 + j*exp(cos(2*t)) + k*sin(2*t)", kPi);
  for (auto _ : state) benchmark::DoNotOptimize(analyze(p));
}
BENCHMARK(BM_HillAnalyze)->Unit(benchmark::kMillisecond);

}  // namespace

// The packaged libbenchmark_main.a carries LTO bytecode from another compiler.
BENCHMARK_MAIN();
