#include <benchmark/benchmark.h>

#include <random>

#include "varkit/varkit.hpp"

namespace {

varkit::SeriesPanel bench_panel(int t_obs, int m, int p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    varkit::VarProcess process;
    process.coef.reserve(static_cast<size_t>(p));
    for (int i = 0; i < p; ++i) {
        Eigen::MatrixXd a(m, m);
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) a(r, c) = (r == c ? 0.4 : 0.15 / m) / (i + 1);
        process.coef.push_back(a);
    }
    Eigen::MatrixXd g(m, m);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) g(r, c) = gauss(rng) * 0.3;
    process.shock_loading =
        Eigen::LLT<Eigen::MatrixXd>(g * g.transpose() + Eigen::MatrixXd::Identity(m, m)).matrixL();
    process.intercept = Eigen::VectorXd::Zero(m);

    const Eigen::MatrixXd values = varkit::simulate_var(process, t_obs, seed);
    std::vector<std::string> labels;
    std::vector<int> years;
    for (int j = 0; j < m; ++j) labels.push_back("S" + std::to_string(j));
    for (int t = 0; t < t_obs; ++t) years.push_back(1900 + t);
    return varkit::SeriesPanel(labels, years, values);
}

void BM_EstimateVar(benchmark::State& state) {
    const auto panel = bench_panel(static_cast<int>(state.range(0)), 5, 2, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(varkit::estimate_var(panel, 2, true));
    }
}
BENCHMARK(BM_EstimateVar)->Arg(100)->Arg(500)->Arg(2000);

void BM_LagSelection(benchmark::State& state) {
    const auto panel = bench_panel(500, 5, 2, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(varkit::lag_order_selection(panel, static_cast<int>(state.range(0)), true));
    }
}
BENCHMARK(BM_LagSelection)->Arg(4)->Arg(8);

void BM_AdfTest(benchmark::State& state) {
    const auto panel = bench_panel(static_cast<int>(state.range(0)), 1, 1, 3);
    const Eigen::VectorXd y = panel.values().col(0);
    const std::span<const double> view(y.data(), static_cast<size_t>(y.size()));
    for (auto _ : state) {
        benchmark::DoNotOptimize(varkit::adf_test(view, varkit::Deterministic::constant));
    }
}
BENCHMARK(BM_AdfTest)->Arg(200)->Arg(1000);

void BM_Johansen(benchmark::State& state) {
    const auto panel = bench_panel(400, static_cast<int>(state.range(0)), 2, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(varkit::johansen(panel, 2, varkit::VecmDeterministic::constant));
    }
}
BENCHMARK(BM_Johansen)->Arg(2)->Arg(5)->Arg(8);

void BM_IrfBands(benchmark::State& state) {
    const auto panel = bench_panel(300, 4, 2, 5);
    const auto model = varkit::estimate_var(panel, 2, true);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            varkit::irf_bands(model, 10, model.labels, static_cast<int>(state.range(0)), 11, 2));
    }
}
BENCHMARK(BM_IrfBands)->Arg(200)->Arg(999);

void BM_Fevd(benchmark::State& state) {
    const auto panel = bench_panel(300, 5, 2, 6);
    const auto model = varkit::estimate_var(panel, 2, true);
    for (auto _ : state) {
        benchmark::DoNotOptimize(varkit::fevd(model, 10, model.labels));
    }
}
BENCHMARK(BM_Fevd);

}  // namespace

BENCHMARK_MAIN();
