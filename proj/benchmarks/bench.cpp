#include <benchmark/benchmark.h>

#include "idexp/detres.hpp"
#include "idexp/reduce.hpp"

using namespace idexp;

namespace {

Pair running_example(uint32_t p) {
    Ring r(Field::prime(p), {"x", "y", "z", "t", "u", "v"});
    long p2 = static_cast<long>(p) * p;
    auto P = [&](long e) { return std::to_string(e); };
    Polynomial f1 = parse_polynomial(r, "x*y^" + P(p2) + " - x*t^3*u^" + P(p2));
    Polynomial f2 =
        parse_polynomial(r, "z^" + P(p2 - p + 1) + "*(t + u)^" + P(p) + " - v^" + P(p2 * p));
    Polynomial f3 = parse_polynomial(r, "t^" + P(p2 + 2) + " - u^" + P(p2 + 1) + "*v");
    return Pair::single(r, {f1, f2, f3}, Rat(p2 + 1), true);
}

void BM_PolyMul(benchmark::State& state) {
    Ring r(Field::rationals(), {"x", "y", "z"});
    Polynomial f = parse_polynomial(r, "(x + y + z + 1)");
    Polynomial acc = f;
    for (long i = 1; i < state.range(0); ++i) acc = acc * f;
    for (auto _ : state) benchmark::DoNotOptimize(acc * f);
}

void BM_HasseDerivative(benchmark::State& state) {
    Ring r(Field::prime(3), {"x", "y", "z"});
    Polynomial f = parse_polynomial(r, "(x + y + z)^9 + x^4*y^4*z^4");
    Exponents n{2, 1, 0};
    for (auto _ : state) benchmark::DoNotOptimize(hasse_derivative(f, n));
}

void BM_Buchberger_Minors(benchmark::State& state) {
    size_t m = static_cast<size_t>(state.range(0));
    GenericMatrixSpec spec{m, m, 2, Field::rationals()};
    Pair e = minors_pair(spec);
    for (auto _ : state)
        benchmark::DoNotOptimize(GroebnerBasis::compute(e.components()[0].gens));
}

void BM_Blowup(benchmark::State& state) {
    Ring r(Field::rationals(), {"x", "y", "z"});
    Pair e = Pair::single(r, {parse_polynomial(r, "x^3 - y^3*z^2")}, Rat(2));
    Chart chart(r);
    for (auto _ : state) benchmark::DoNotOptimize(blowup(chart, e, {0, 1}, 1));
}

void BM_RidgeDirectrix(benchmark::State& state) {
    Pair e = running_example(static_cast<uint32_t>(state.range(0)));
    for (auto _ : state) {
        TangentConePair c = tangent_cone_pair(e);
        RidgePresentation rp = ridge(c);
        benchmark::DoNotOptimize(directrix_from_ridge(c, rp));
    }
}

void BM_RidgeDecomposition(benchmark::State& state) {
    Pair e = running_example(static_cast<uint32_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(ridge_decomposition(e));
}

void BM_ResolveDeterminantal(benchmark::State& state) {
    GenericMatrixSpec spec{static_cast<size_t>(state.range(0)),
                           static_cast<size_t>(state.range(1)),
                           static_cast<size_t>(state.range(2)), Field::rationals()};
    for (auto _ : state) benchmark::DoNotOptimize(resolve_determinantal(spec));
}

}  // namespace

BENCHMARK(BM_PolyMul)->Arg(4)->Arg(8);
BENCHMARK(BM_HasseDerivative);
BENCHMARK(BM_Buchberger_Minors)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Blowup);
BENCHMARK(BM_RidgeDirectrix)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RidgeDecomposition)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ResolveDeterminantal)
    ->Args({2, 2, 2})
    ->Args({3, 3, 2})
    ->Args({3, 3, 3})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
