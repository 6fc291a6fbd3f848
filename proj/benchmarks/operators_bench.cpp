#include <ltl/generators.hpp>
#include <ltl/operators.hpp>
#include <ltl/pde.hpp>

#include <benchmark/benchmark.h>

#include <random>

using namespace ltl;

namespace {

std::vector<double> random_field(std::size_t n)
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<double> h(n);
    for (auto& x : h) x = u(rng);
    return h;
}

void BM_Discretization(benchmark::State& state)
{
    const auto mesh = gen_icosphere(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(Discretization(mesh));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(mesh.num_vertices()));
}
BENCHMARK(BM_Discretization)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

void BM_LaplacianPipeline(benchmark::State& state)
{
    const Discretization d(gen_icosphere(static_cast<int>(state.range(0))));
    const auto h = random_field(d.num_vertices());
    for (auto _ : state) benchmark::DoNotOptimize(laplacian(d, h));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(d.num_vertices()));
}
BENCHMARK(BM_LaplacianPipeline)->DenseRange(3, 5)->Unit(benchmark::kMicrosecond);

void BM_LaplacianMatrixApply(benchmark::State& state)
{
    const Discretization d(gen_icosphere(static_cast<int>(state.range(0))));
    const LaplacianMatrix L(d);
    const auto h = random_field(d.num_vertices());
    std::vector<double> out(h.size());
    for (auto _ : state) {
        L.apply(h, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(d.num_vertices()));
}
BENCHMARK(BM_LaplacianMatrixApply)->DenseRange(3, 5)->Unit(benchmark::kMicrosecond);

void BM_Divergence(benchmark::State& state)
{
    const Discretization d(gen_torus(static_cast<int>(state.range(0)), static_cast<int>(state.range(0) / 2)));
    const auto a = random_field(d.num_vertices());
    std::vector<Vec3> X(d.num_vertices());
    for (Index v = 0; v < X.size(); ++v) X[v] = Vec3(a[v], a[(v + 1) % X.size()], a[(v + 2) % X.size()]);
    for (auto _ : state) benchmark::DoNotOptimize(divergence(d, X));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(d.num_vertices()));
}
BENCHMARK(BM_Divergence)->Arg(64)->Arg(128)->Unit(benchmark::kMicrosecond);

void BM_HeatStep(benchmark::State& state)
{
    const Discretization d(gen_icosphere(static_cast<int>(state.range(0))));
    PdeProblem p;
    p.initial = spherical_field(d.mesh(), SphericalFormula::cos_eta);
    p.t_end = 0.1;
    const PdeSolver solver(d, p);
    auto u = p.initial;
    for (auto _ : state) {
        u = solver.step(u);
        benchmark::DoNotOptimize(u.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(d.num_vertices()));
}
BENCHMARK(BM_HeatStep)->DenseRange(3, 5)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
