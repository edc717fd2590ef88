#include <benchmark/benchmark.h>

#include <cmath>

#include "qcpot/contact.hpp"
#include "qcpot/convex.hpp"
#include "qcpot/potential.hpp"
#include "qcpot/simplex.hpp"

using namespace qcpot;

namespace {

ScalarField bench_field_1d(int nodes) {
    const GridSpec g = GridSpec::make({-1.0}, {1.0}, {nodes});
    return build_field(g, [](const Vec& x) {
        return 0.7 * x[0] * x[0] + 0.3 * std::fabs(x[0] - 0.2) + 0.1 * std::sin(5.0 * x[0]);
    });
}

ScalarField bench_field_2d(int nodes) {
    const GridSpec g = GridSpec::make({-1.0, -1.0}, {1.0, 1.0}, {nodes, nodes});
    return build_field(g, [](const Vec& x) {
        return 0.5 * norm2(x, 2) + 0.2 * std::fabs(x[0]) - 0.1 * x[1];
    });
}

void BM_eig_sym3(benchmark::State& state) {
    Rng rng(1);
    SymMat A(3);
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) A.set(i, j, rng.uniform(-2.0, 2.0));
    for (auto _ : state) benchmark::DoNotOptimize(eig_sym(A));
}
BENCHMARK(BM_eig_sym3);

void BM_numeric_jet(benchmark::State& state) {
    const ScalarField f = bench_field_2d(65);
    const std::size_t k = f.spec.nearest(vec_zero());
    for (auto _ : state) benchmark::DoNotOptimize(numeric_jet(f, k));
}
BENCHMARK(BM_numeric_jet);

void BM_sup_convolve(benchmark::State& state) {
    const ScalarField f = bench_field_1d(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(sup_convolve(f, 0.1));
}
BENCHMARK(BM_sup_convolve)->Arg(101)->Arg(401)->Arg(1601);

void BM_fenchel_brute(benchmark::State& state) {
    const ScalarField f = bench_field_1d(static_cast<int>(state.range(0)));
    const GridSpec dual = auto_dual_spec(f);
    for (auto _ : state) benchmark::DoNotOptimize(fenchel_conjugate(f, dual));
}
BENCHMARK(BM_fenchel_brute)->Arg(101)->Arg(401)->Arg(1601);

void BM_fenchel_fast(benchmark::State& state) {
    const ScalarField f = bench_field_1d(static_cast<int>(state.range(0)));
    const GridSpec dual = auto_dual_spec(f);
    for (auto _ : state) benchmark::DoNotOptimize(fenchel_conjugate_1d_fast(f, dual));
}
BENCHMARK(BM_fenchel_fast)->Arg(101)->Arg(401)->Arg(1601);

void BM_halfspace_lp(benchmark::State& state) {
    Rng rng(7);
    const int m = static_cast<int>(state.range(0));
    std::vector<Vec> a;
    std::vector<double> b;
    for (int k = 0; k < m; ++k) {
        a.push_back(vec_of({rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)}));
        b.push_back(rng.uniform(0.1, 1.0));
    }
    for (auto _ : state) benchmark::DoNotOptimize(halfspace_feasible(a, b, 2, 10.0, 1e-9));
}
BENCHMARK(BM_halfspace_lp)->Arg(100)->Arg(1000);

void BM_contact_set_2d(benchmark::State& state) {
    const ScalarField f = bench_field_2d(static_cast<int>(state.range(0)));
    const SymMat A = SymMat::identity(2, 2.0);
    for (auto _ : state) benchmark::DoNotOptimize(contact_set(f, A, f.spec.box(), 1e-8));
}
BENCHMARK(BM_contact_set_2d)->Arg(11)->Arg(21)->Unit(benchmark::kMillisecond);

void BM_check_ae(benchmark::State& state) {
    const ScalarField f = bench_field_2d(65);
    const Subequation F = standard_library("pcone", 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(check_subharmonic_ae(f, F, f.spec.box(), 1e-6));
}
BENCHMARK(BM_check_ae)->Unit(benchmark::kMillisecond);

}  // namespace

int main(int argc, char** argv) {
    benchmark::Initialize(&argc, argv);
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
