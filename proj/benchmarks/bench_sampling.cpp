#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "srff/kernels.hpp"
#include "srff/rff.hpp"
#include "srff/spectral.hpp"

namespace {

srff::KernelSpec preset_or_die(const char* name) {
    auto spec = srff::preset(name);
    if (!spec) std::abort();
    return *spec;
}

void BM_SampleProjections(benchmark::State& state, const char* name,
                          srff::Mode mode) {
    auto spec = preset_or_die(name);
    spec.mode = mode;
    const int d = static_cast<int>(state.range(0));
    for (auto _ : state) {
        srff::RandomStream rs(7);
        auto pset = srff::sample_projections(rs, spec, d, 4096);
        benchmark::DoNotOptimize(pset.vectors.data());
    }
    state.SetItemsProcessed(state.iterations() * 4096);
}

void BM_Evaluate(benchmark::State& state, const char* name) {
    const auto spec = preset_or_die(name);
    Eigen::VectorXd u = Eigen::VectorXd::Constant(3, 0.9);
    double acc = 0.0;
    for (auto _ : state) {
        acc += srff::evaluate(spec, u);
        u[0] = -u[0];
        benchmark::DoNotOptimize(acc);
    }
}

void BM_Embed(benchmark::State& state) {
    const auto spec = preset_or_die("gaussian");
    srff::RandomStream rs(7);
    const auto fm =
        srff::FeatureMap::from(srff::sample_projections(rs, spec, 5, 1024));
    const Eigen::MatrixXd x = Eigen::MatrixXd::Random(256, 5);
    for (auto _ : state) {
        auto z = srff::embed_rows(fm, x);
        benchmark::DoNotOptimize(z.data());
    }
    state.SetItemsProcessed(state.iterations() * 256);
}

}  // namespace

BENCHMARK_CAPTURE(BM_SampleProjections, gaussian_iso, "gaussian",
                  srff::Mode::isotropic)->Arg(2)->Arg(16)->Arg(64);
BENCHMARK_CAPTURE(BM_SampleProjections, gaussian_tensor, "gaussian",
                  srff::Mode::tensor)->Arg(2)->Arg(16)->Arg(64);
BENCHMARK_CAPTURE(BM_SampleProjections, matern_iso, "matern",
                  srff::Mode::isotropic)->Arg(2)->Arg(16)->Arg(64);
BENCHMARK_CAPTURE(BM_SampleProjections, tricomi_iso, "tricomi",
                  srff::Mode::isotropic)->Arg(2)->Arg(16)->Arg(64);

BENCHMARK_CAPTURE(BM_Evaluate, gaussian, "gaussian");
BENCHMARK_CAPTURE(BM_Evaluate, matern, "matern");
BENCHMARK_CAPTURE(BM_Evaluate, kummer, "kummer");
BENCHMARK_CAPTURE(BM_Evaluate, tricomi, "tricomi");

BENCHMARK(BM_Embed);

BENCHMARK_MAIN();
