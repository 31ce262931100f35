#include <benchmark/benchmark.h>

#include <numbers>
#include <vector>

#include "odiff/catalog.hpp"
#include "odiff/simulator.hpp"
#include "odiff/solver.hpp"
#include "odiff/spectrum.hpp"
#include "odiff/suitability.hpp"

namespace {

constexpr double kW = 120.0 * std::numbers::pi;

void BM_RunTableCell(benchmark::State& state) {
    const double h = static_cast<double>(state.range(0)) * 1e-6;
    const auto t = odiff::make_catalog(odiff::IntegratorId::F, h);
    const auto sig = odiff::Signal::cosine(kW, 1.0);
    const std::vector<double> init = {0.0};
    for (auto _ : state) {
        auto trace = odiff::run(t, sig, 1.0, init);
        benchmark::DoNotOptimize(trace.computed.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(1.0 / h));
}
BENCHMARK(BM_RunTableCell)->Arg(125)->Arg(1000)->Arg(4000);

void BM_RunStateSpace(benchmark::State& state) {
    const auto t = odiff::make_catalog(odiff::IntegratorId::BDF2, 1e-3);
    const auto sig = odiff::Signal::cosine(kW, 1.0);
    const std::vector<double> init = {0.0, 0.0};
    for (auto _ : state) {
        auto trace = odiff::run(t, sig, 1.0, init, odiff::Engine::StateSpace);
        benchmark::DoNotOptimize(trace.computed.data());
    }
}
BENCHMARK(BM_RunStateSpace);

void BM_SolveE(benchmark::State& state) {
    const auto c = odiff::integrator_e_constraints(1e-3, kW);
    for (auto _ : state) {
        auto t = odiff::solve_coefficients(c);
        benchmark::DoNotOptimize(t);
    }
}
BENCHMARK(BM_SolveE);

void BM_PolynomialRoots(benchmark::State& state) {
    odiff::CharacteristicPolynomial p;
    p.coeffs = {1.0};
    for (int q = 0; q < state.range(0); ++q) {
        p.coeffs.push_back(0.3 / (q + 1));
    }
    for (auto _ : state) {
        auto roots = odiff::polynomial_roots(p);
        benchmark::DoNotOptimize(roots.data());
    }
}
BENCHMARK(BM_PolynomialRoots)->Arg(1)->Arg(4)->Arg(8);

void BM_OriginMultiplicity(benchmark::State& state) {
    const auto t = odiff::make_catalog(odiff::IntegratorId::C, 1e-3);
    for (auto _ : state) {
        auto m = odiff::origin_multiplicity(t);
        benchmark::DoNotOptimize(m);
    }
}
BENCHMARK(BM_OriginMultiplicity);

void BM_Sweep(benchmark::State& state) {
    const auto t = odiff::make_catalog(odiff::IntegratorId::E, 1e-3, kW);
    const auto grid = odiff::make_grid(1.0, 6000.0, 1000, true);
    for (auto _ : state) {
        auto pts = odiff::sweep(t, grid);
        benchmark::DoNotOptimize(pts.data());
    }
}
BENCHMARK(BM_Sweep);

}  // namespace

BENCHMARK_MAIN();
