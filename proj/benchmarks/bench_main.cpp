#include "diracgraph/diracgraph.hpp"

#include <benchmark/benchmark.h>

#include <numbers>

using namespace diracgraph;

namespace {

// Complete digraph with loops on k vertices: k^2 edges, every vertex of degree k.
GraphPtr complete_with_loops(std::size_t k)
{
    std::vector<VertexId> vertices;
    for (std::size_t v = 0; v < k; ++v) vertices.push_back("v" + std::to_string(v));
    std::vector<EdgeRecord> edges;
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) {
            edges.push_back({"e" + std::to_string(a) + std::to_string(b), vertices[a], vertices[b], 1.0});
        }
    }
    return make_graph(std::move(vertices), std::move(edges));
}

void BM_CharPolyRose(benchmark::State& state)
{
    const auto a = build_adjacency(fixtures::rose(static_cast<std::size_t>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(char_poly(a));
}
BENCHMARK(BM_CharPolyRose)->DenseRange(4, 14, 2);

void BM_CharPolyComplete(benchmark::State& state)
{
    const auto a = build_adjacency(complete_with_loops(static_cast<std::size_t>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(char_poly(a));
}
BENCHMARK(BM_CharPolyComplete)->DenseRange(2, 3);

void BM_Collections(benchmark::State& state)
{
    const auto g = complete_with_loops(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(charpoly_via_collections(*g));
}
BENCHMARK(BM_Collections)->DenseRange(2, 4);

void BM_RealScan(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<double> lengths(n);
    for (std::size_t e = 0; e < n; ++e) lengths[e] = 1.0 + std::sqrt(2.0) * static_cast<double>(e) / static_cast<double>(n);
    const auto g = fixtures::directed_cycle(n, lengths);
    std::vector<std::size_t> succ(n);
    for (std::size_t e = 0; e < n; ++e) succ[e] = (e + 1) % n;
    const auto a = GPermutation(g, succ).endomorphism();
    SpectrumOptions options;
    options.threads = 1;
    for (auto _ : state) benchmark::DoNotOptimize(spectrum_numeric(a, Window::real(-50, 50), options));
}
BENCHMARK(BM_RealScan)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_Contour(benchmark::State& state)
{
    const auto a = build_adjacency(fixtures::rose(static_cast<std::size_t>(state.range(0))));
    for (auto _ : state) {
        benchmark::DoNotOptimize(spectrum_complex(a, Window::rect(-1, 2 * std::numbers::pi + 1, -3, 0.5)));
    }
}
BENCHMARK(BM_Contour)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
