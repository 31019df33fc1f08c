// Monte Carlo simulator: reproducibility contract (bit-identical under any
// worker split), sampler moments, error-bar scaling, agreement with closed
// forms at the edges, and the relay baseline's qualitative behaviour.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "irsnoma/mcsim.hpp"
#include "irsnoma/model.hpp"
#include "irsnoma/specfun.hpp"
#include "irsnoma/uplink.hpp"

using namespace irsnoma;
using namespace irsnoma::mcsim;

namespace {
double mc_tol(const McEstimate& e) {
    return 3.0 * e.std_error + 3.0 / static_cast<double>(e.trials);
}

// CDF of the sum of two product gains at its 1e-3 quantile, hop shapes
// (3, 1.5): frozen from a grid-converged numeric convolution.
constexpr double kConvZ0 = 0.37541;
constexpr double kConvCdfAtZ0 = 9.999291483e-4;
}  // namespace

TEST_CASE("estimates are bit-identical for any worker count") {
    SystemParams p;
    p.n_elements = 6;
    McConfig one;
    one.trials = 10000;
    one.seed = 7;
    one.workers = 1;
    McConfig three = one;
    three.workers = 3;
    const double rho = db_to_linear(30.0);

    const auto a = simulate_dl(p, Scheme::Noma, rho, one);
    const auto b = simulate_dl(p, Scheme::Noma, rho, three);
    CHECK(a.op_near.mean == b.op_near.mean);
    CHECK(a.op_far.mean == b.op_far.mean);
    CHECK(a.er_near.mean == b.er_near.mean);
    CHECK(a.er_far.mean == b.er_far.mean);
    CHECK(a.er_far_joint.mean == b.er_far_joint.mean);
    CHECK(a.op_near.std_error == b.op_near.std_error);
    CHECK(a.er_far.std_error == b.er_far.std_error);

    const auto u1 = simulate_ul(p, Scheme::Noma, rho, one);
    const auto u3 = simulate_ul(p, Scheme::Noma, rho, three);
    CHECK(u1.op_far.mean == u3.op_far.mean);
    CHECK(u1.er_near.mean == u3.er_near.mean);

    // a different seed must move the estimates
    McConfig other = one;
    other.seed = 8;
    const auto c = simulate_dl(p, Scheme::Noma, rho, other);
    CHECK(a.er_near.mean != c.er_near.mean);

    CHECK(resolve_workers(3) == 3);
    CHECK(resolve_workers(1) == 1);
    CHECK(resolve_workers(0) >= 1);
}

TEST_CASE("per-trial streams decorrelate and the error bar scales as 1/sqrt(n)") {
    SystemParams p;
    p.n_elements = 6;
    McConfig small;
    small.trials = 10000;
    small.seed = 3;
    McConfig big = small;
    big.trials = 40000;
    const double rho = db_to_linear(30.0);
    const auto s = simulate_dl(p, Scheme::Noma, rho, small);
    const auto b = simulate_dl(p, Scheme::Noma, rho, big);
    const double ratio = b.er_near.std_error / s.er_near.std_error;
    CHECK(ratio > 0.4);
    CHECK(ratio < 0.6);
    CHECK(s.op_near.trials == 10000);
    CHECK(b.op_near.trials == 40000);
}

TEST_CASE("antithetic pairing keeps estimates valid and deterministic") {
    SystemParams p;
    p.n_elements = 6;
    McConfig cfg;
    cfg.trials = 20000;
    cfg.seed = 11;
    cfg.antithetic = true;
    const double rho = db_to_linear(30.0);
    const auto a = simulate_dl(p, Scheme::Noma, rho, cfg);
    const auto b = simulate_dl(p, Scheme::Noma, rho, cfg);
    CHECK(a.op_far.mean == b.op_far.mean);  // still deterministic
    CHECK(a.op_far.mean >= 0.0);
    CHECK(a.op_far.mean <= 1.0);
    // agreement with the plain estimator within joint error bars
    McConfig plain = cfg;
    plain.antithetic = false;
    const auto c = simulate_dl(p, Scheme::Noma, rho, plain);
    CHECK(std::fabs(a.op_far.mean - c.op_far.mean) <
          5.0 * std::sqrt(a.op_far.std_error * a.op_far.std_error +
                          c.op_far.std_error * c.op_far.std_error) +
              1e-3);
}

TEST_CASE("Nakagami sampler: unit mean square and exact amplitude mean") {
    for (double m : {1.0, 1.5, 3.0}) {
        Rng rng(99, 0);
        const int n = 200000;
        double sum_a = 0.0, sum_p = 0.0, sum_p2 = 0.0;
        for (int i = 0; i < n; ++i) {
            const double a = sample_nakagami(m, rng);
            sum_a += a;
            sum_p += a * a;
            sum_p2 += a * a * a * a;
        }
        const double mean_p = sum_p / n;
        const double se_p = std::sqrt((sum_p2 / n - mean_p * mean_p) / n);
        CHECK(std::fabs(mean_p - 1.0) < 4.0 * se_p);  // E[amp^2] = 1
        // E[amp] = Gamma(m + 1/2) / (Gamma(m) sqrt(m))
        const double want =
            std::exp(specfun::ln_gamma(m + 0.5) - specfun::ln_gamma(m)) / std::sqrt(m);
        CHECK(std::fabs(sum_a / n - want) < 4.0 * 0.5 / std::sqrt(static_cast<double>(n)));
    }
}

TEST_CASE("uniform and normal generators hit their basic moments") {
    Rng rng(5, 1);
    const int n = 200000;
    double su = 0.0, sn = 0.0, sn2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        CHECK(u > 0.0);
        CHECK(u <= 1.0);
        su += u;
        const double z = rng.normal();
        sn += z;
        sn2 += z * z;
    }
    CHECK(std::fabs(su / n - 0.5) < 0.005);
    CHECK(std::fabs(sn / n) < 0.01);
    CHECK(std::fabs(sn2 / n - 1.0) < 0.02);
}

TEST_CASE("degenerate SNR and unreachable targets saturate the outage") {
    SystemParams p;
    p.n_elements = 4;
    McConfig cfg;
    cfg.trials = 2000;
    cfg.seed = 2;
    const auto dead = simulate_dl(p, Scheme::Noma, 1e-12, cfg);
    CHECK(dead.op_near.mean == 1.0);
    CHECK(dead.op_far.mean == 1.0);

    // far-user target above the interference-limited SINR ceiling
    SystemParams hopeless = p;
    hopeless.rate_far_bps = 1.0e7;  // threshold 2^10 - 1 >> alpha_far/alpha_near
    const auto sat = simulate_dl(hopeless, Scheme::Noma, db_to_linear(40.0), cfg);
    CHECK(sat.op_far.mean == 1.0);
}

TEST_CASE("uplink simulation approaches the analytic floor") {
    SystemParams p;  // reference setup
    const auto d = derive(p);
    McConfig cfg;
    cfg.trials = 100000;
    cfg.seed = 31;
    const double rho = db_to_linear(70.0);
    const auto mc = simulate_ul(p, Scheme::Noma, rho, cfg);
    const auto an = uplink::op_ul_noma(rho, d);
    CHECK(std::fabs(mc.op_near.mean - an.near_user.value) < mc_tol(mc.op_near));
    CHECK(std::fabs(mc.op_far.mean - an.far_user.value) < mc_tol(mc.op_far));
    // the floor itself is within the same tolerance this deep into the SNR range
    CHECK(std::fabs(mc.op_far.mean - uplink::op_ul_floor(d)) <
          mc_tol(mc.op_far) + 1e-3);
}

TEST_CASE("uplink near-user rate saturates at the analytic ceiling") {
    SystemParams p;
    const auto d = derive(p);
    const auto gl = specfun::make_gauss_laguerre(100);
    McConfig cfg;
    cfg.trials = 1000000;
    cfg.seed = 57;
    const auto mc = simulate_ul(p, Scheme::Noma, db_to_linear(80.0), cfg);
    CHECK(std::fabs(mc.er_near.mean - uplink::er_ul_noma_near_ceiling(d, gl)) < 0.01);
}

TEST_CASE("sampled cascade tail matches the exact convolution law") {
    // Two elements, hop shapes (3, 1.5): the probability that the summed
    // product gain stays below its 1e-3 quantile, against the frozen
    // convolution value. Tolerance: 5% model/grid slack plus counting noise.
    McConfig cfg;
    cfg.trials = 2500000;
    cfg.seed = 12;
    const auto emp = empirical_cascade_law(3.0, 1.5, 2, cfg);
    const double x0 = kConvZ0 * kConvZ0 / emp.z_scale;
    const double phat = emp.cdf(x0);
    const double se = std::sqrt(kConvCdfAtZ0 * (1.0 - kConvCdfAtZ0) /
                                static_cast<double>(cfg.trials));
    CHECK(std::fabs(phat - kConvCdfAtZ0) < 0.05 * kConvCdfAtZ0 + 3.0 * se);
}

TEST_CASE("relay baseline: self-interference level orders the estimates") {
    SystemParams p;
    p.n_elements = 8;
    McConfig cfg;
    cfg.trials = 50000;
    cfg.seed = 21;
    const double rho = db_to_linear(30.0);
    FdrParams ideal;
    ideal.si_residual_gain = 0.0;  // perfect cancellation: classic DF bound
    FdrParams leaky;               // defaults: residual gain 1e-3
    const auto a = simulate_fdr(p, ideal, Direction::Downlink, rho, cfg);
    const auto b = simulate_fdr(p, leaky, Direction::Downlink, rho, cfg);
    CHECK(a.op_far.mean <= b.op_far.mean + 1e-12);
    CHECK(a.er_far.mean >= b.er_far.mean - 3.0 * (a.er_far.std_error + b.er_far.std_error));
    // residual interference costs real rate at high SNR
    const double rho_hi = db_to_linear(60.0);
    const auto c = simulate_fdr(p, ideal, Direction::Downlink, rho_hi, cfg);
    const auto e = simulate_fdr(p, leaky, Direction::Downlink, rho_hi, cfg);
    CHECK(c.er_far.mean > e.er_far.mean);
    // determinism holds for the relay path too
    const auto b2 = simulate_fdr(p, leaky, Direction::Downlink, rho, cfg);
    CHECK(b.op_far.mean == b2.op_far.mean);
    CHECK(b.er_near.mean == b2.er_near.mean);
}
