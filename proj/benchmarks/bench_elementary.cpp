#include <benchmark/benchmark.h>

#include <qfix/bounds.hpp>
#include <qfix/elementary.hpp>
#include <qfix/oracle.hpp>

using namespace qfix;

static void BM_MulAdd(benchmark::State& state) {
    unsigned bits = static_cast<unsigned>(state.range(0));
    FixedPoint x((BigInt(1) << bits) - 3, FpFormat{1, bits});
    FixedPoint z((BigInt(1) << (bits - 1)) + 5, FpFormat{1, bits});
    for (auto _ : state) {
        auto r = mul_add(x, x, z);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_MulAdd)->Arg(64)->Arg(256)->Arg(1024);

static void BM_Sqrt(benchmark::State& state) {
    unsigned b = static_cast<unsigned>(state.range(0));
    FixedPoint w = FixedPoint::from_integer(48, FpFormat{32, 0});
    for (auto _ : state) {
        auto r = sqrt(w, 64, 32, b);
        benchmark::DoNotOptimize(r.result);
    }
    state.SetComplexityN(b);
}
BENCHMARK(BM_Sqrt)->Arg(64)->Arg(128)->Arg(256)->Complexity();

static void BM_Ln(benchmark::State& state) {
    unsigned l = static_cast<unsigned>(state.range(0));
    FixedPoint w = FixedPoint::from_integer(96, FpFormat{32, 0});
    for (auto _ : state) {
        auto r = ln(w, 64, 32, l);
        benchmark::DoNotOptimize(r.result);
    }
}
BENCHMARK(BM_Ln)->Arg(10)->Arg(30)->Arg(50);

static void BM_FracPow(benchmark::State& state) {
    FixedPoint w = FixedPoint::from_decimal_string("76", FpFormat{32, 60});
    FixedPoint f = FixedPoint::from_decimal_string("0.7431", FpFormat{1, 64});
    for (auto _ : state) {
        auto r = frac_pow(w, f, 92, 32, 64, static_cast<unsigned>(state.range(0)));
        benchmark::DoNotOptimize(r.result);
    }
}
BENCHMARK(BM_FracPow)->Arg(20)->Arg(50);

static void BM_OracleLn(benchmark::State& state) {
    BigRat w(91338);
    for (auto _ : state) {
        auto g = oracle::ref_ln(w, static_cast<unsigned>(state.range(0)));
        benchmark::DoNotOptimize(g);
    }
}
BENCHMARK(BM_OracleLn)->Arg(128)->Arg(256)->Arg(512);

static void BM_BoundLn(benchmark::State& state) {
    for (auto _ : state) {
        auto b = bounds::bound_ln(50, 64, 32);
        benchmark::DoNotOptimize(b);
    }
}
BENCHMARK(BM_BoundLn);

BENCHMARK_MAIN();
