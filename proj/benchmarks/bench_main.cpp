#include <benchmark/benchmark.h>

#include <cmath>
#include <string>

#include "casimir/constants.hpp"
#include "casimir/engine.hpp"
#include "casimir/matsubara.hpp"

using namespace casimir;

namespace {

const std::string kData = CASIMIR_DATA_DIR;

Material shipped(const std::string& name) {
    return load_material_file(kData + "/materials/" + name + ".json");
}

LayerStack make_stack(double L_nm, const std::string& metal = "gold_drude") {
    ElectrolyteGap gap(shipped("water"), 100e-9, 3e6,
                       23.0 * constants::atomic_mass_unit, 300.0);
    return LayerStack(shipped("silica"), std::move(gap), L_nm * 1e-9, shipped(metal),
                      50e-9);
}

const QuadratureSpec kSpec{};

void BM_SlabBlock(benchmark::State& state) {
    const LayerStack stack = make_stack(100.0);
    const double xi = matsubara(1, 300.0).xi;
    const double e1 = stack.half_space.eval(xi);
    const double e2 = stack.slab.eval(xi);
    double k = 1e6;
    for (auto _ : state) {
        const WaveKinematics kin = kinematics(stack.gap, e1, e2, xi, k);
        const GapSample gs = gap_sample(stack.gap, kin);
        const InterfaceAmplitudes a = interface_amplitudes({e2, kin.kappa2, kin.K2}, gs);
        benchmark::DoNotOptimize(compose_slab(a, kin.kappa2, stack.thickness));
        k = k < 1e9 ? k * 1.01 : 1e6;
    }
}
BENCHMARK(BM_SlabBlock);

void BM_FreeEnergyN(benchmark::State& state) {
    const LayerStack stack = make_stack(100.0);
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(free_energy_n(stack, kSpec, n));
}
BENCHMARK(BM_FreeEnergyN)->Arg(1)->Arg(10)->Arg(100);

void BM_TotalFreeEnergy(benchmark::State& state) {
    const LayerStack stack = make_stack(static_cast<double>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(total_free_energy(stack, kSpec));
}
BENCHMARK(BM_TotalFreeEnergy)->Arg(10)->Arg(100)->Arg(1000);

void BM_TabulatedPermittivity(benchmark::State& state) {
    const Material gold = shipped("gold_tabulated");
    double xi = 1e13;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gold.eval(xi));
        xi = xi < 1e17 ? xi * 1.3 : 1e13;
    }
}
BENCHMARK(BM_TabulatedPermittivity);

void BM_LogdetRoundTrip(benchmark::State& state) {
    const LayerStack stack = make_stack(100.0);
    for (auto _ : state) benchmark::DoNotOptimize(logdet_roundtrip(stack, kSpec, 1));
}
BENCHMARK(BM_LogdetRoundTrip);

}  // namespace

BENCHMARK_MAIN();
