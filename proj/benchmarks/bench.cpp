#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "gradedq/brackets.hpp"
#include "gradedq/doubles.hpp"
#include "gradedq/dsl.hpp"

using namespace gradedq;

namespace {

ChartPtr grid_chart(int even, int odd)
{
	std::vector<VariableDecl> vs;
	for (int i = 0; i < even; ++i)
		vs.push_back({"x" + std::to_string(i), 0, 0});
	for (int i = 0; i < odd; ++i)
		vs.push_back({"t" + std::to_string(i), 1, 1});
	return Chart::base("G", vs);
}

// (1 + sum of all variables)^deg, dense in every degree
SuperPolynomial dense(const ChartPtr& c, unsigned deg)
{
	auto s = SuperPolynomial::constant(c, 1);
	for (std::size_t a = 0; a < c->size(); ++a)
		s += SuperPolynomial::variable(c, a);
	return power(s, deg);
}

Model r13()
{
	return load_model(GQ_MODELS_DIR "/r13.gq");
}

}

static void BM_Multiply(benchmark::State& st)
{
	auto c = grid_chart(3, 3);
	auto f = dense(c, static_cast<unsigned>(st.range(0)));
	for (auto _ : st)
		benchmark::DoNotOptimize(f * f);
	st.counters["terms"] = static_cast<double>(f.terms().size());
}
BENCHMARK(BM_Multiply)->DenseRange(1, 3);

static void BM_PoissonBracket(benchmark::State& st)
{
	auto b = grid_chart(2, 2);
	auto T = cotangent_lift(b, GradingSystem::induced());
	auto f = dense(T, static_cast<unsigned>(st.range(0)));
	auto g = f * SuperPolynomial::variable(T, 0);
	for (auto _ : st)
		benchmark::DoNotOptimize(canonical_poisson(f, g));
}
BENCHMARK(BM_PoissonBracket)->DenseRange(1, 3);

static void BM_SchoutenBracket(benchmark::State& st)
{
	auto b = grid_chart(2, 2);
	auto P = anticotangent_lift(b, GradingSystem::induced());
	auto f = dense(P, static_cast<unsigned>(st.range(0)));
	for (auto _ : st)
		benchmark::DoNotOptimize(canonical_schouten(f, f));
}
BENCHMARK(BM_SchoutenBracket)->DenseRange(1, 3);

static void BM_ParseModel(benchmark::State& st)
{
	std::ifstream in(GQ_MODELS_DIR "/r13.gq");
	std::stringstream ss;
	ss << in.rdbuf();
	auto text = ss.str();
	for (auto _ : st)
		benchmark::DoNotOptimize(parse_model(text));
}
BENCHMARK(BM_ParseModel);

static void BM_AlmostSchouten(benchmark::State& st)
{
	auto m = r13();
	std::vector<std::string> cmd = {"sd", "Q", "S", "g", "--connection", "flat"};
	for (auto _ : st)
		benchmark::DoNotOptimize(run(cmd, m));
}
BENCHMARK(BM_AlmostSchouten)->Unit(benchmark::kMillisecond);

static void BM_DrinfeldDouble(benchmark::State& st)
{
	auto c = sl_algebra(2);
	StructureConstants b({0, 0, 0}, c.names());
	b.set_bracket(0, 2, 0, 1);
	b.set_bracket(1, 2, 1, 1);
	for (auto _ : st)
		benchmark::DoNotOptimize(drinfeld_double(c, b));
}
BENCHMARK(BM_DrinfeldDouble)->Unit(benchmark::kMillisecond);

static void BM_QCobracket(benchmark::State& st)
{
	auto q = q_algebra(static_cast<unsigned>(st.range(0)));
	for (auto _ : st)
		benchmark::DoNotOptimize(relative_double(q.c, q.part, q.pairing));
}
BENCHMARK(BM_QCobracket)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
