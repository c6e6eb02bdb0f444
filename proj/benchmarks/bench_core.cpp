#include <benchmark/benchmark.h>

#include "deflekt/campaign.hpp"
#include "deflekt/catalog_io.hpp"
#include "deflekt/impulse_optimizer.hpp"
#include "deflekt/lambert.hpp"
#include "deflekt/propagation.hpp"

using namespace deflekt;

namespace {

const catalog::AsteroidRecord& record(int id) {
    static const auto recs = catalog::load_builtin_catalog();
    return catalog::find_record(recs, id);
}

void BM_SolveKepler(benchmark::State& state) {
    double m = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(orbit::solve_kepler(m, 0.72));
        m += 1e-3;
    }
}
BENCHMARK(BM_SolveKepler);

void BM_TransitionMatrix(benchmark::State& state) {
    const auto& el = record(6).elements;
    for (auto _ : state) benchmark::DoNotOptimize(deviation::transition_matrix(el, 0.4, 0.0, 2.0, 700.0));
}
BENCHMARK(BM_TransitionMatrix);

void BM_OptimalDirection(benchmark::State& state) {
    const auto tm = deviation::transition_matrix(record(6).elements, 0.4, 0.0, 2.0, 700.0);
    for (auto _ : state) benchmark::DoNotOptimize(impulse::optimal_direction(tm));
}
BENCHMARK(BM_OptimalDirection);

void BM_Lambert(benchmark::State& state) {
    const Vec3 r1(kAuKm, 0, 0), r2(-0.3 * kAuKm, 1.2 * kAuKm, 0.05 * kAuKm);
    for (auto _ : state) benchmark::DoNotOptimize(mission::lambert_arc(r1, r2, seconds_from_days(250.0), kMuSun));
}
BENCHMARK(BM_Lambert);

void BM_DirectMission(benchmark::State& state) {
    const auto tg = mission::make_target(record(13));
    for (auto _ : state) benchmark::DoNotOptimize(mission::evaluate_direct_mission(4000.0, 300.0, tg, 5935.0));
}
BENCHMARK(BM_DirectMission);

void BM_PropagateOneYear(benchmark::State& state) {
    const auto& el = record(7).elements;
    const auto s = orbit::elements_to_state(el, el.epoch);
    const auto cfg = state.range(0) ? propagation::PropagationConfig::three_body() : propagation::PropagationConfig{};
    for (auto _ : state) benchmark::DoNotOptimize(propagation::propagate(s, el.epoch, el.epoch + 365.25, cfg));
}
BENCHMARK(BM_PropagateOneYear)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
