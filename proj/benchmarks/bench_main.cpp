#include <benchmark/benchmark.h>

#include "xpm/classical.hpp"
#include "xpm/params.hpp"
#include "xpm/quantum.hpp"
#include "xpm/run.hpp"
#include "xpm/scenario.hpp"

using namespace xpm;

namespace {

PolaritonRates desk()
{
    PolaritonRates r;
    r.v_p = 1;
    r.v_s = 0.02;
    r.beta = 40;
    r.eta = 3.0;
    return r;
}

void BM_DeriveRates(benchmark::State& st)
{
    const PhysicalParams p = preset("paper-sec3");
    for (auto _ : st) benchmark::DoNotOptimize(derive_rates(p));
}
BENCHMARK(BM_DeriveRates);

void BM_DesignRun(benchmark::State& st)
{
    const Scenario s = default_scenario();
    for (auto _ : st) benchmark::DoNotOptimize(run(s));
}
BENCHMARK(BM_DesignRun);

void BM_ClassicalStep(benchmark::State& st)
{
    const Grid g(static_cast<std::size_t>(st.range(0)), 1.0);
    IntegratorSettings set;
    set.dt = 0.5 * g.dz();
    ClassicalIntegrator integ(g, desk(), set);
    FieldState s = init_state(g, make_envelope({PulseShape::gaussian, 0.2, 0.1, 1, true}, g),
                              make_envelope({PulseShape::gaussian, 0.5, 0.05, 1, true}, g));
    for (auto _ : st) integ.advance(s, 100);
    st.SetItemsProcessed(st.iterations() * 100);
}
BENCHMARK(BM_ClassicalStep)->RangeMultiplier(4)->Range(64, 4096);

void BM_TrotterStep(benchmark::State& st)
{
    const Grid g(static_cast<std::size_t>(st.range(0)), 1.0);
    const auto p = SinglePhotonWavepacket::from_envelope(g, make_envelope({PulseShape::gaussian, 0.0, 0.05, 1, true}, g));
    const auto sig = SinglePhotonWavepacket::from_envelope(g, make_envelope({PulseShape::gaussian, 0.5, 0.05, 1, true}, g));
    const TwoPhotonHamiltonian h(g, desk());
    SectorState psi = product_state(g, &p, &sig);
    TrotterPropagator prop(h, psi.occupation(), 1e-3);
    for (auto _ : st) prop.advance(psi, 10);
    st.SetItemsProcessed(st.iterations() * 10);
}
BENCHMARK(BM_TrotterStep)->RangeMultiplier(2)->Range(16, 128);

void BM_CphaseVariants(benchmark::State& st)
{
    const Grid g(32, 1.0);
    const auto p = SinglePhotonWavepacket::from_envelope(g, make_envelope({PulseShape::gaussian, 0.0, 0.05, 1, true}, g));
    const auto sig = SinglePhotonWavepacket::from_envelope(g, make_envelope({PulseShape::gaussian, 0.5, 0.05, 1, true}, g));
    const TwoPhotonHamiltonian h(g, desk());
    for (auto _ : st) benchmark::DoNotOptimize(run_cphase_variants(p, sig, h, 1.02, 1e-3));
}
BENCHMARK(BM_CphaseVariants)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
