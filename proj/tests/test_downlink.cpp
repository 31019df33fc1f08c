// Downlink closed forms: decode thresholds and feasibility, outage
// probabilities and their high-SNR power laws, and the ergodic-rate
// evaluators with their asymptotes, bounds, and quadrature behaviour.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "irsnoma/chanstats.hpp"
#include "irsnoma/downlink.hpp"
#include "irsnoma/mcsim.hpp"
#include "irsnoma/model.hpp"
#include "irsnoma/specfun.hpp"

using namespace irsnoma;
using namespace irsnoma::downlink;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kLn2 = 0.69314718055994530941723212145818;

// Ergodic rates of the reference setup at 40 dB, frozen from an
// arbitrary-precision integration of the noncentral chi-square law.
constexpr double kErNomaNear40 = 0.36214979887715909;
constexpr double kErNomaFar40 = 0.23579900526862201;
constexpr double kErOmaNear40 = 0.85798709253370261;
constexpr double kErOmaFar40 = 0.13240142860705598;

double mc_tol(const mcsim::McEstimate& e) {
    return 3.0 * e.std_error + 3.0 / static_cast<double>(e.trials);
}

// The far-user outage law rests on a central-limit model of the combined
// reflected channel; at n_elements = 8 that model carries roughly 1%
// absolute error in the tail, which dominates Monte Carlo noise at these
// trial counts. Near-user forms are exact in distribution, so they keep
// the strict statistical tolerance.
double mc_tol_model(const mcsim::McEstimate& e) {
    return 0.02 + 3.0 * e.std_error;
}

SystemParams infeasible_setup() {
    // far-user threshold above alpha_far/alpha_near: SIC target unreachable
    SystemParams p;
    p.alpha_near = 0.45;
    p.alpha_far = 0.55;
    p.rate_far_bps = 1.2e6;  // thr_far = 2^{1.2} - 1 > 0.55/0.45
    return p;
}
}  // namespace

TEST_CASE("decode thresholds: values and feasibility flag") {
    const auto d = derive(SystemParams{});
    const double rho = 1e4;
    const auto t = dl_noma_thresholds(rho, d);
    CHECK(t.feasible);
    const double den = d.alpha_far - d.alpha_near * d.thr_far;
    CHECK(t.rho_tilde_m ==
          doctest::Approx(std::max(d.thr_far / (den * d.a * rho),
                                   d.thr_near / (d.a * d.alpha_near * rho)))
              .epsilon(1e-14));
    CHECK(t.rho_tilde == doctest::Approx(d.thr_far / (den * d.b * rho)).epsilon(1e-14));

    const auto bad = dl_noma_thresholds(rho, derive(infeasible_setup()));
    CHECK_FALSE(bad.feasible);
}

TEST_CASE("infeasible power split saturates every outage at one") {
    const auto d = derive(infeasible_setup());
    for (double rho_db : {20.0, 60.0}) {
        const double rho = db_to_linear(rho_db);
        const auto near = op_dl_noma_near(rho, d);
        const auto far = op_dl_noma_far(rho, d);
        CHECK(near.value == 1.0);
        CHECK(near.infeasible);
        CHECK(far.value == 1.0);
        CHECK(far.infeasible);
        const auto asym = op_dl_noma_asymptotic(rho, d);
        CHECK(asym.far_user.value == 1.0);
        CHECK(asym.far_user.infeasible);
    }
}

TEST_CASE("outage closed forms match their distribution-law building blocks") {
    const auto d = derive(SystemParams{});
    const auto law = chanstats::clt_law(d);
    for (double rho_db : {10.0, 30.0, 50.0}) {
        const double rho = db_to_linear(rho_db);
        const auto t = dl_noma_thresholds(rho, d);
        CHECK(op_dl_noma_near(rho, d).value ==
              doctest::Approx(-std::expm1(-t.rho_tilde_m)).epsilon(1e-14));
        CHECK(op_dl_noma_far(rho, d).value ==
              doctest::Approx(chanstats::clt_cdf_x(t.rho_tilde, law)).epsilon(1e-14));
        const auto oma = op_dl_oma(rho, d);
        CHECK(oma.near_user.value ==
              doctest::Approx(-std::expm1(-d.thr_near_oma / (d.a * rho))).epsilon(1e-14));
        CHECK(oma.far_user.value ==
              doctest::Approx(chanstats::clt_cdf_x(d.thr_far_oma / (d.b * rho), law))
                  .epsilon(1e-14));
    }
}

TEST_CASE("outage limits and monotonicity in SNR") {
    const auto d = derive(SystemParams{});
    CHECK(op_dl_noma_near(1e-12, d).value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(op_dl_noma_far(1e-12, d).value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(op_dl_noma_near(1e12, d).value < 1e-8);
    CHECK(op_dl_noma_far(1e12, d).value < 1e-8);
    double prev_n = 2.0, prev_f = 2.0;
    for (double rho_db = 0.0; rho_db <= 60.0; rho_db += 5.0) {
        const double rho = db_to_linear(rho_db);
        const double n = op_dl_noma_near(rho, d).value;
        const double f = op_dl_noma_far(rho, d).value;
        CHECK(n <= prev_n);
        CHECK(f <= prev_f + 1e-15);
        prev_n = n;
        prev_f = f;
    }
}

TEST_CASE("far-user outage asymptote carries the full diversity order") {
    const auto d = derive(SystemParams{});  // m_small*K = 15
    const double r1 = op_dl_noma_asymptotic(1e6, d).far_user.value;
    const double r4 = op_dl_noma_asymptotic(4e6, d).far_user.value;
    CHECK(r1 / r4 == doctest::Approx(std::pow(4.0, 15.0)).epsilon(1e-9));
    const double o1 = op_dl_oma_asymptotic(1e6, d).far_user.value;
    const double o4 = op_dl_oma_asymptotic(4e6, d).far_user.value;
    CHECK(o1 / o4 == doctest::Approx(std::pow(4.0, 15.0)).epsilon(1e-9));
    // near-user asymptote decays with plain diversity one
    const double n1 = op_dl_noma_asymptotic(1e6, d).near_user.value;
    const double n4 = op_dl_noma_asymptotic(4e6, d).near_user.value;
    CHECK(n1 / n4 == doctest::Approx(4.0).epsilon(1e-12));
    // and matches the exact form to first order at high SNR
    const double rho = db_to_linear(50.0);
    const double exact = op_dl_noma_near(rho, d).value;
    const double asym = op_dl_noma_asymptotic(rho, d).near_user.value;
    CHECK(std::fabs(exact - asym) / exact < 2.0 * asym);

    const auto div_n = diversity_dl(d, Scheme::Noma);
    const auto div_o = diversity_dl(d, Scheme::Oma);
    CHECK(div_n.near_user == 1.0);
    CHECK(div_n.far_user == 15.0);
    CHECK(div_o.near_user == 1.0);
    CHECK(div_o.far_user == 15.0);
}

TEST_CASE("ergodic rates at 40 dB match the independent reference values") {
    const auto d = derive(SystemParams{});
    const double rho = db_to_linear(40.0);
    const auto cg = specfun::make_chebyshev_gauss(100);
    const auto gl = specfun::make_gauss_laguerre(100);
    CHECK(std::fabs(er_dl_noma_near(rho, d) - kErNomaNear40) < 1e-10);
    CHECK(std::fabs(er_dl_noma_far(rho, d, cg) - kErNomaFar40) < 5e-8);
    const auto oma = er_dl_oma(rho, d, gl);
    CHECK(std::fabs(oma.near_user - kErOmaNear40) < 1e-10);
    CHECK(std::fabs(oma.far_user - kErOmaFar40) < 1e-9);
}

TEST_CASE("far-rate series evaluator equals the Marcum-form integrand") {
    // The evaluator runs a Poisson mixture of regularized lower gammas at
    // every quadrature node. Summing that mixture first and integrating the
    // resulting distribution function must give the same rate: the inner
    // sum telescopes to the noncentral chi-square law at twice the argument.
    const auto d = derive(SystemParams{});
    const auto cg = specfun::make_chebyshev_gauss(100);
    const chanstats::CascadeLawCLT law{d.lambda};
    const double alpha_t = d.alpha_far / d.alpha_near;
    for (double rho_db : {20.0, 40.0}) {
        const double rho = db_to_linear(rho_db);
        double total = 0.0;
        for (std::size_t l = 0; l < cg.order; ++l) {
            const double s = cg.nodes[l];
            const double t = std::sin(0.5 * kPi * s);
            const double cot = 1.0 / std::tan(0.25 * kPi * (1.0 - s));
            const double arg = cot * cot / (2.0 * d.b * rho * d.alpha_near);
            const double alg = cg.weights[l] * std::sqrt(1.0 - s * s) * 0.5 * kPi *
                               std::cos(0.5 * kPi * s) / (1.0 + 2.0 / alpha_t + t);
            total += alg * chanstats::clt_cdf_x(2.0 * arg, law);
        }
        const double alt = std::log2(1.0 + alpha_t) - total / kLn2;
        CHECK(std::fabs(alt - er_dl_noma_far(rho, d, cg)) < 1e-9);
    }
}

TEST_CASE("far-rate reparametrization stays near the plainly applied rule") {
    // Applying the Chebyshev-Gauss rule directly to the rate integral (no
    // sine reparametrization) carries an O(u^-2) endpoint error. The two
    // evaluations must agree to that accuracy scale — and the reparametrized
    // form must be the convergent one under order doubling.
    const auto d = derive(SystemParams{});
    const auto cg = specfun::make_chebyshev_gauss(100);
    const chanstats::CascadeLawCLT law{d.lambda};
    const double alpha_t = d.alpha_far / d.alpha_near;
    const double rho = db_to_linear(40.0);
    double total = 0.0;
    for (std::size_t l = 0; l < cg.order; ++l) {
        const double t = cg.nodes[l];
        const double y = (1.0 + t) / ((1.0 - t) * 2.0 * d.b * rho * d.alpha_near);
        total += cg.weights[l] * std::sqrt(1.0 - t * t) * chanstats::clt_cdf_x(2.0 * y, law) /
                 (1.0 + 2.0 / alpha_t + t);
    }
    const double plain = std::log2(1.0 + alpha_t) - total / kLn2;
    CHECK(std::fabs(plain - er_dl_noma_far(rho, d, cg)) < 5e-5);

    const auto cg200 = specfun::make_chebyshev_gauss(200);
    CHECK(std::fabs(er_dl_noma_far(rho, d, cg200) - er_dl_noma_far(rho, d, cg)) < 1e-6);
}

TEST_CASE("rate evaluators reject a rule of the wrong family") {
    const auto d = derive(SystemParams{});
    const auto cg = specfun::make_chebyshev_gauss(50);
    const auto gl = specfun::make_gauss_laguerre(50);
    CHECK_THROWS(er_dl_noma_far(100.0, d, gl));
    CHECK_THROWS(er_dl_oma(100.0, d, cg));
}

TEST_CASE("rate asymptotes, ceiling, and Jensen bound") {
    const auto d = derive(SystemParams{});
    const auto cg = specfun::make_chebyshev_gauss(100);
    const auto gl = specfun::make_gauss_laguerre(100);
    const double rho = db_to_linear(80.0);

    // near-user rate approaches log2(a alpha_near rho) - Ec/ln2
    const auto asym = er_dl_noma_asymptotic(rho, d);
    CHECK(std::fabs(er_dl_noma_near(rho, d) - asym.near_user) < 0.01);
    // far-user rate approaches the interference ceiling log2(1 + 9)
    CHECK(er_dl_noma_far_ceiling(d) == doctest::Approx(std::log2(10.0)).epsilon(1e-14));
    CHECK(asym.far_user == er_dl_noma_far_ceiling(d));
    CHECK(std::fabs(er_dl_noma_far(rho, d, cg) - er_dl_noma_far_ceiling(d)) < 0.01);
    // ceiling is approached from below
    CHECK(er_dl_noma_far(rho, d, cg) < er_dl_noma_far_ceiling(d));

    // OMA far user: exact <= Jensen bound; both collapse onto the log-slope
    // asymptote at high SNR.
    const auto oma = er_dl_oma(rho, d, gl);
    const double jensen = er_dl_oma_far_jensen_bound(rho, d);
    const auto oma_asym = er_dl_oma_asymptotic(rho, d);
    CHECK(oma.far_user < jensen);
    CHECK(std::fabs(oma.far_user - oma_asym.far_user) < 0.06);
    CHECK(std::fabs(jensen - oma_asym.far_user) < 1e-3);
    CHECK(std::fabs(oma.near_user - oma_asym.near_user) < 0.01);

    // monotone increasing in SNR
    CHECK(er_dl_noma_near(rho, d) > er_dl_noma_near(rho / 10.0, d));
    CHECK(er_dl_oma(rho, d, gl).far_user > er_dl_oma(rho / 10.0, d, gl).far_user);

    CHECK(slopes_dl(Scheme::Noma).near_user == 1.0);
    CHECK(slopes_dl(Scheme::Noma).far_user == 0.0);
    CHECK(slopes_dl(Scheme::Oma).near_user == 0.5);
    CHECK(slopes_dl(Scheme::Oma).far_user == 0.5);
}

TEST_CASE("closed forms track a simulation of the fading model") {
    SystemParams p;
    p.n_elements = 8;
    const auto d = derive(p);
    mcsim::McConfig cfg;
    cfg.trials = 100000;
    cfg.seed = 4242;

    {  // operating points where both outages are informative
        const double rho = db_to_linear(35.0);
        const auto mc = mcsim::simulate_dl(p, Scheme::Noma, rho, cfg);
        CHECK(std::fabs(op_dl_noma_near(rho, d).value - mc.op_near.mean) < mc_tol(mc.op_near));
        CHECK(std::fabs(op_dl_noma_far(rho, d).value - mc.op_far.mean) < mc_tol_model(mc.op_far));
    }
    {
        const double rho = db_to_linear(45.0);
        const auto mc = mcsim::simulate_dl(p, Scheme::Oma, rho, cfg);
        const auto an = op_dl_oma(rho, d);
        CHECK(std::fabs(an.near_user.value - mc.op_near.mean) < mc_tol(mc.op_near));
        CHECK(std::fabs(an.far_user.value - mc.op_far.mean) < mc_tol_model(mc.op_far));
    }
    {  // rates at the reference SNR
        const double rho = db_to_linear(40.0);
        const auto cg = specfun::make_chebyshev_gauss(100);
        const auto gl = specfun::make_gauss_laguerre(100);
        const auto mn = mcsim::simulate_dl(p, Scheme::Noma, rho, cfg);
        CHECK(std::fabs(er_dl_noma_near(rho, d) - mn.er_near.mean) < 0.02);
        CHECK(std::fabs(er_dl_noma_far(rho, d, cg) - mn.er_far.mean) < 0.02);
        // keeping the near-user decode inside the min can only lower the rate
        CHECK(mn.er_far_joint.mean <= mn.er_far.mean + 1e-12);
        const auto mo = mcsim::simulate_dl(p, Scheme::Oma, rho, cfg);
        const auto an = er_dl_oma(rho, d, gl);
        CHECK(std::fabs(an.near_user - mo.er_near.mean) < 0.02);
        CHECK(std::fabs(an.far_user - mo.er_far.mean) < 0.02);
    }
}
