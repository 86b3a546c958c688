// Micro-benchmarks for the hot paths: quadrature, superlevel detection,
// planning, time-change evaluation, competitor construction, and a full
// convergence-study row.
#include <benchmark/benchmark.h>

#include <cmath>

#include "lavgap/energy.hpp"
#include "lavgap/problems.hpp"
#include "lavgap/quadrature.hpp"
#include "lavgap/reparam.hpp"
#include "lavgap/trajectory.hpp"

using namespace lavgap;

namespace {

const ProblemSpec& mania() {
    static const ProblemSpec spec = get_example("mania");
    return spec;
}

const ProblemSpec& baseline() {
    static const ProblemSpec spec = get_example("baseline");
    return spec;
}

void BM_quadrature_smooth(benchmark::State& state) {
    auto f = [](double s) { return std::sin(3.0 * s) + s * s; };
    for (auto _ : state) {
        auto r = integrate(f, Interval{0.0, 1.0});
        benchmark::DoNotOptimize(r.value);
    }
}
BENCHMARK(BM_quadrature_smooth);

void BM_quadrature_endpoint_singularity(benchmark::State& state) {
    auto f = [](double s) { return std::pow(s, -0.5); };
    for (auto _ : state) {
        auto r = integrate(f, Interval{0.0, 1.0});
        benchmark::DoNotOptimize(r.value);
    }
}
BENCHMARK(BM_quadrature_endpoint_singularity);

void BM_superlevel(benchmark::State& state) {
    const auto& y = mania().trajectory;
    for (auto _ : state) {
        auto set = superlevel_set(y, 4.0);
        benchmark::DoNotOptimize(set.measure());
    }
}
BENCHMARK(BM_superlevel);

void BM_make_plan_initial(benchmark::State& state) {
    const auto& spec = mania();
    for (auto _ : state) {
        auto plan = make_plan(spec.trajectory, spec.lagrangian, Anchor::initial, 4.0);
        benchmark::DoNotOptimize(plan.eps);
    }
}
BENCHMARK(BM_make_plan_initial);

void BM_make_plan_both(benchmark::State& state) {
    const auto& spec = baseline();
    PlanTuning tuning;
    tuning.lambda_bar = 2.0;
    for (auto _ : state) {
        auto plan = make_plan(spec.trajectory, spec.lagrangian, Anchor::both, 4.0, tuning);
        benchmark::DoNotOptimize(plan.mu);
    }
}
BENCHMARK(BM_make_plan_both);

void BM_time_change_eval(benchmark::State& state) {
    const auto& spec = mania();
    auto plan = make_plan(spec.trajectory, spec.lagrangian, Anchor::initial, 4.0);
    auto tc = build_time_change(plan, spec.trajectory);
    double tau = 0.0;
    for (auto _ : state) {
        tau += 1e-4;
        if (tau > 1.0) tau = 0.0;
        benchmark::DoNotOptimize(tc.eval(tau));
    }
}
BENCHMARK(BM_time_change_eval);

void BM_reparam_value_eval(benchmark::State& state) {
    const auto& spec = mania();
    auto plan = make_plan(spec.trajectory, spec.lagrangian, Anchor::initial, 4.0);
    auto tc = build_time_change(plan, spec.trajectory);
    auto ynu = reparametrize(spec.trajectory, tc);
    double tau = 0.0;
    for (auto _ : state) {
        tau += 1e-4;
        if (tau > 1.0) tau = 0.0;
        benchmark::DoNotOptimize(ynu.value(tau)[0]);
    }
}
BENCHMARK(BM_reparam_value_eval);

void BM_energy_competitor(benchmark::State& state) {
    const auto& spec = mania();
    auto plan = make_plan(spec.trajectory, spec.lagrangian, Anchor::initial, 4.0);
    auto tc = build_time_change(plan, spec.trajectory);
    auto ynu = reparametrize(spec.trajectory, tc);
    for (auto _ : state) {
        auto e = energy(spec.lagrangian, ynu);
        benchmark::DoNotOptimize(e.value);
    }
}
BENCHMARK(BM_energy_competitor);

void BM_lp_distance_deriv(benchmark::State& state) {
    const auto& spec = mania();
    auto plan = make_plan(spec.trajectory, spec.lagrangian, Anchor::initial, 4.0);
    auto tc = build_time_change(plan, spec.trajectory);
    auto ynu = reparametrize(spec.trajectory, tc);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lp_distance_deriv(ynu, spec.trajectory, 1.0));
    }
}
BENCHMARK(BM_lp_distance_deriv);

void BM_study_row(benchmark::State& state) {
    const auto& spec = baseline();
    StudyOptions opts;
    opts.anchor = Anchor::both;
    opts.schedule = NuSchedule{4.0, 2.0, 1};
    opts.tuning.lambda_bar = 2.0;
    opts.p = 2.0;
    opts.base_energy = spec.analytic.base_energy;
    opts.weight_sup = spec.analytic.weight_sup;
    opts.xi_plus = spec.analytic.xi_plus;
    opts.upsilon_minus = spec.analytic.upsilon_minus;
    opts.time_reg = spec.analytic.time_reg;
    for (auto _ : state) {
        auto report = convergence_study(spec.lagrangian, spec.trajectory, opts);
        benchmark::DoNotOptimize(report.rows.back().gap);
    }
}
BENCHMARK(BM_study_row);

} // namespace

BENCHMARK_MAIN();
