// bench_dicke.cpp - Timings of the inner kernels and the per-point observables

#include <benchmark/benchmark.h>

#include <random>

#include <Eigen/Dense>

#include "dicke/blas_check.hpp"
#include "dicke/greens.hpp"
#include "dicke/lyapunov.hpp"
#include "dicke/observables.hpp"
#include "dicke/poles.hpp"
#include "dicke/reservoir.hpp"

using namespace dicke;

namespace {

ModelParams model(double s, double y_frac) {
    ModelParams p;
    p.bath.s = s;
    p.y = y_frac * critical_coupling(p);
    return p;
}

void BM_LevelShift(benchmark::State& st) {
    const BathParams b = model(0.8, 0.0).bath;
    double w = 0.37;
    for (auto _ : st) {
        benchmark::DoNotOptimize(level_shift_retarded(w, b));
        w += 1e-9;
    }
}
BENCHMARK(BM_LevelShift);

void BM_CorrelationSpectrum(benchmark::State& st) {
    const ModelParams p = model(0.8, 0.9);
    const Mode m = st.range(0) ? Mode::Atom : Mode::Photon;
    double w = 0.37;
    for (auto _ : st) {
        benchmark::DoNotOptimize(correlation_spectrum(m, w, p));
        w += 1e-9;
    }
}
BENCHMARK(BM_CorrelationSpectrum)->Arg(0)->Arg(1);

void BM_ExcitationNumber(benchmark::State& st) {
    const double eps = std::pow(10.0, -static_cast<double>(st.range(0)));
    const ModelParams p = model(0.8, 1.0 - eps);
    for (auto _ : st)
        benchmark::DoNotOptimize(excitation_number(Mode::Photon, p).n_a);
}
BENCHMARK(BM_ExcitationNumber)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_FindPole(benchmark::State& st) {
    const ModelParams p = model(0.8, 0.5);
    for (auto _ : st)
        benchmark::DoNotOptimize(find_pole({0.6, -0.2}, p));
}
BENCHMARK(BM_FindPole)->Unit(benchmark::kMicrosecond);

void BM_TraceSoftMode(benchmark::State& st) {
    const ModelParams p = model(0.8, 0.0);
    const std::vector<double> grid = soft_mode_grid(p, 400, 1e-6);
    for (auto _ : st)
        benchmark::DoNotOptimize(trace_soft_mode(p, grid).points.size());
}
BENCHMARK(BM_TraceSoftMode)->Unit(benchmark::kMillisecond);

void BM_Lyapunov(benchmark::State& st) {
    const auto n = static_cast<Eigen::Index>(st.range(0));
    std::mt19937 rng(1);
    std::normal_distribution<double> nd;
    Eigen::MatrixXd a(n, n);
    for (Eigen::Index i = 0; i < a.size(); ++i)
        a.data()[i] = nd(rng) / std::sqrt(static_cast<double>(n));
    a -= (a.eigenvalues().real().maxCoeff() + 0.1) * Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd q = Eigen::MatrixXd::Identity(n, n);
    for (auto _ : st)
        benchmark::DoNotOptimize(solve_lyapunov(a, q).data());
}
BENCHMARK(BM_Lyapunov)->Arg(64)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

} // namespace

int main(int argc, char** argv) {
    relaunch_if_blas_broken(argv);
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv))
        return 1;
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
