// Microbenchmarks of the hot paths: special functions, quadrature-rule
// construction, the rate evaluators, and Monte Carlo throughput.
#include <benchmark/benchmark.h>

#include "irsnoma/chanstats.hpp"
#include "irsnoma/downlink.hpp"
#include "irsnoma/mcsim.hpp"
#include "irsnoma/model.hpp"
#include "irsnoma/specfun.hpp"
#include "irsnoma/uplink.hpp"

namespace {

using namespace irsnoma;

const DerivedConstants& ref() {
    static const DerivedConstants d = derive(SystemParams{});
    return d;
}

void bm_ln_gamma(benchmark::State& state) {
    double x = 0.7;
    for (auto _ : state) {
        benchmark::DoNotOptimize(specfun::ln_gamma(x));
        x += 0.1;
        if (x > 150.0) x = 0.7;
    }
}
BENCHMARK(bm_ln_gamma);

void bm_reg_lower_gamma(benchmark::State& state) {
    double x = 0.05;
    for (auto _ : state) {
        benchmark::DoNotOptimize(specfun::reg_lower_gamma(2.5, x));
        x += 0.37;
        if (x > 40.0) x = 0.05;
    }
}
BENCHMARK(bm_reg_lower_gamma);

void bm_marcum_q_half(benchmark::State& state) {
    double b = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(specfun::marcum_q_half(5.976, b));
        b += 0.21;
        if (b > 20.0) b = 0.1;
    }
}
BENCHMARK(bm_marcum_q_half);

void bm_clt_cdf(benchmark::State& state) {
    const chanstats::CascadeLawCLT law{ref().lambda};
    double x = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(chanstats::clt_cdf_x(x, law));
        x += 1.7;
        if (x > 200.0) x = 0.5;
    }
}
BENCHMARK(bm_clt_cdf);

void bm_make_gauss_laguerre(benchmark::State& state) {
    const auto u = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(specfun::make_gauss_laguerre(u));
    }
}
BENCHMARK(bm_make_gauss_laguerre)->Arg(50)->Arg(100)->Arg(200);

void bm_er_dl_noma_far(benchmark::State& state) {
    const auto cg = specfun::make_chebyshev_gauss(static_cast<std::size_t>(state.range(0)));
    const double rho = db_to_linear(40.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(downlink::er_dl_noma_far(rho, ref(), cg));
    }
}
BENCHMARK(bm_er_dl_noma_far)->Arg(100)->Arg(200);

void bm_er_ul_noma_near(benchmark::State& state) {
    const auto gl = specfun::make_gauss_laguerre(static_cast<std::size_t>(state.range(0)));
    const double rho = db_to_linear(40.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(uplink::er_ul_noma_near(rho, ref(), gl));
    }
}
BENCHMARK(bm_er_ul_noma_near)->Arg(100)->Arg(200);

void bm_op_ul_noma(benchmark::State& state) {
    const double rho = db_to_linear(40.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(uplink::op_ul_noma(rho, ref()));
    }
}
BENCHMARK(bm_op_ul_noma);

void bm_simulate_dl(benchmark::State& state) {
    SystemParams p;
    mcsim::McConfig cfg;
    cfg.trials = static_cast<std::uint64_t>(state.range(0));
    cfg.seed = 17;
    const double rho = db_to_linear(30.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mcsim::simulate_dl(p, Scheme::Noma, rho, cfg));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_simulate_dl)->Arg(10000)->Unit(benchmark::kMillisecond);

void bm_simulate_fdr(benchmark::State& state) {
    SystemParams p;
    mcsim::McConfig cfg;
    cfg.trials = static_cast<std::uint64_t>(state.range(0));
    cfg.seed = 17;
    const mcsim::FdrParams fdr;
    const double rho = db_to_linear(30.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            mcsim::simulate_fdr(p, fdr, Direction::Downlink, rho, cfg));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_simulate_fdr)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
