#include "irsnoma/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "json.hpp"

#include "irsnoma/chanstats.hpp"
#include "irsnoma/downlink.hpp"
#include "irsnoma/mcsim.hpp"
#include "irsnoma/specfun.hpp"
#include "irsnoma/uplink.hpp"

namespace irsnoma::validation {
namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(const char* f, ...) {
    char buf[768];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

std::uint64_t pick_trials(Profile p, std::uint64_t full, std::uint64_t quick) {
    return p == Profile::Full ? full : quick;
}

// Distinct salt per simulation call site, so every Monte Carlo run in the
// suite draws from an independent stream while staying a pure function of
// the user-chosen base seed.
mcsim::McConfig mc_cfg(const ValidationOptions& o, std::uint64_t trials, std::uint64_t salt) {
    mcsim::McConfig c;
    c.trials = trials;
    c.seed = o.seed + salt;
    c.workers = o.workers;
    c.antithetic = false;
    return c;
}

// Comparator for simulation-vs-analytic probabilities and means: three
// standard errors plus a 3/n guard so zero-variance estimates (all trials
// identical) still get a nonzero band.
double mc_tolerance(const mcsim::McEstimate& e) {
    return 3.0 * e.std_error + 3.0 / static_cast<double>(e.trials);
}

// Log-log slope of a positive decreasing function between two abscissae.
double loglog_slope(double f1, double f2, double x1, double x2) {
    return (std::log(f2) - std::log(f1)) / (std::log(x2) - std::log(x1));
}

// ---------------------------------------------------------------------------
// 1. CLT cascade law vs simulation (K=30, shapes 3 / 2): Kolmogorov-Smirnov
//    distance of the empirical law of X under 0.02 and mean within 3 se.
// ---------------------------------------------------------------------------
ValidationCheck check_cascade_law(const SystemParams& base, const ValidationOptions& opts) {
    ValidationCheck c{1, "cascade-law-vs-simulation", false, ""};
    SystemParams p = base;
    p.m_bs_irs = 3.0;
    p.m_irs_far = 2.0;
    p.n_elements = 30;
    const auto cfg = mc_cfg(opts, pick_trials(opts.profile, 1000000, 200000), 11);
    const auto emp = mcsim::empirical_cascade_law(p.m_bs_irs, p.m_irs_far, p.n_elements, cfg);
    const auto law = chanstats::clt_law(derive(p));

    const double n = static_cast<double>(emp.sorted_x.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < emp.sorted_x.size(); ++i) {
        const double f = chanstats::clt_cdf_x(emp.sorted_x[i], law);
        const double lo = f - static_cast<double>(i) / n;
        const double hi = static_cast<double>(i + 1) / n - f;
        ks = std::max({ks, lo, hi});
    }
    const double mean_target = 1.0 + law.lambda;
    const double dev = std::abs(emp.mean - mean_target);
    const double band = 3.0 * emp.std_error;
    c.pass = ks < 0.02 && dev <= band;
    c.detail = fmt("KS=%.4f (limit 0.02); mean %.4f vs %.4f, |dev|=%.2e <= 3se=%.2e; n=%llu",
                   ks, emp.mean, mean_target, dev, band,
                   static_cast<unsigned long long>(cfg.trials));
    return c;
}

// ---------------------------------------------------------------------------
// 2. Exact constants: xi(3,1.5)=25/32, xi(1,1)=pi^2/16, and the default
//    profile's noncentrality 250/7, all to 1e-12 absolute.
// ---------------------------------------------------------------------------
ValidationCheck check_exact_constants(const SystemParams& base, const ValidationOptions&) {
    ValidationCheck c{2, "exact-constants", false, ""};
    const double e1 = std::abs(xi(3.0, 1.5) - 0.78125);
    const double e2 = std::abs(xi(1.0, 1.0) - kPi * kPi / 16.0);
    SystemParams p = base;
    p.m_bs_irs = 3.0;
    p.m_irs_far = 1.5;
    p.n_elements = 10;
    const double e3 = std::abs(derive(p).lambda - 250.0 / 7.0);
    c.pass = e1 <= 1e-12 && e2 <= 1e-12 && e3 <= 1e-12;
    c.detail = fmt("|xi(3,1.5)-0.78125|=%.2e, |xi(1,1)-pi^2/16|=%.2e, "
                   "|lambda(K=10)-250/7|=%.2e (limits 1e-12)",
                   e1, e2, e3);
    return c;
}

// ---------------------------------------------------------------------------
// 3. Distribution-function identity: the Poisson-mixture series route and the
//    Marcum closed form must agree to 1e-9 absolute on a 50-point grid for
//    noncentralities {1, default-profile, 130}. The corrupt_xi knob perturbs
//    the fluctuation parameter feeding the SERIES route only, so any nonzero
//    value must break the agreement (negative control).
// ---------------------------------------------------------------------------
ValidationCheck check_series_identity(const SystemParams& base, const ValidationOptions& opts) {
    ValidationCheck c{3, "series-vs-marcum-identity", false, ""};
    SystemParams p = base;
    p.m_bs_irs = 3.0;
    p.m_irs_far = 1.5;
    p.n_elements = 10;
    const auto d = derive(p);

    double lam_mid_series = d.lambda;
    if (opts.corrupt_xi != 0.0) {
        const double xc = d.xi + opts.corrupt_xi;
        if (xc <= 0.0 || xc >= 1.0) {
            c.detail = fmt("corrupted fluctuation parameter %.4f outside (0,1)", xc);
            return c;
        }
        lam_mid_series = static_cast<double>(p.n_elements) * xc / (1.0 - xc);
    }

    const double lams[3] = {1.0, d.lambda, 130.0};
    const double lams_series[3] = {1.0, lam_mid_series, 130.0};
    double worst = 0.0;
    for (int k = 0; k < 3; ++k) {
        chanstats::CascadeLawCLT marcum_law{lams[k]};
        chanstats::CascadeLawCLT series_law{lams_series[k]};
        const double lo = 0.01 * (1.0 + lams[k]);
        const double hi = 5.0 * (1.0 + lams[k]);
        for (int i = 0; i < 50; ++i) {
            const double x = lo * std::pow(hi / lo, i / 49.0);
            const double diff = std::abs(chanstats::clt_cdf_x(x, marcum_law) -
                                         chanstats::clt_cdf_x_series(x, series_law));
            worst = std::max(worst, diff);
        }
    }
    c.pass = worst <= 1e-9;
    c.detail = fmt("max |series - closed form| = %.2e over 3 laws x 50 points (limit 1e-9)%s",
                   worst, opts.corrupt_xi != 0.0 ? "; series route corrupted on purpose" : "");
    return c;
}

// ---------------------------------------------------------------------------
// 4. Downlink outage vs simulation: K=8, power split 0.1/0.9, rho in
//    {10,20,30} dB; all four probabilities (both schemes x both users) within
//    3 standard errors wherever the analytic value is at least 1e-4.
// ---------------------------------------------------------------------------
ValidationCheck check_dl_outage_vs_mc(const SystemParams& base, const ValidationOptions& opts) {
    ValidationCheck c{4, "downlink-outage-vs-simulation", false, ""};
    SystemParams p = base;
    p.n_elements = 8;
    p.alpha_near = 0.1;
    p.alpha_far = 0.9;
    const auto d = derive(p);
    const std::uint64_t trials = pick_trials(opts.profile, 10000000, 200000);

    bool pass = true;
    int cells = 0;
    double worst_ratio = 0.0;
    std::string worst_label = "(none)";
    int snrs[3] = {10, 20, 30};
    for (int i = 0; i < 3; ++i) {
        const double rho = db_to_linear(snrs[i]);
        const auto mc_noma = mcsim::simulate_dl(p, Scheme::Noma, rho, mc_cfg(opts, trials, 21 + 2 * i));
        const auto mc_oma = mcsim::simulate_dl(p, Scheme::Oma, rho, mc_cfg(opts, trials, 22 + 2 * i));
        const auto oma = downlink::op_dl_oma(rho, d);
        const struct {
            const char* label;
            double analytic;
            const mcsim::McEstimate* est;
        } rows[4] = {
            {"noma near", downlink::op_dl_noma_near(rho, d).value, &mc_noma.op_near},
            {"noma far", downlink::op_dl_noma_far(rho, d).value, &mc_noma.op_far},
            {"oma near", oma.near_user.value, &mc_oma.op_near},
            {"oma far", oma.far_user.value, &mc_oma.op_far},
        };
        for (const auto& r : rows) {
            if (r.analytic < 1e-4) continue;
            ++cells;
            const double diff = std::abs(r.analytic - r.est->mean);
            const double tol = mc_tolerance(*r.est);
            if (diff > tol) pass = false;
            if (tol > 0.0 && diff / tol > worst_ratio) {
                worst_ratio = diff / tol;
                worst_label = fmt("%s @ %d dB: |%.3e - %.3e| = %.2e vs tol %.2e",
                                  r.label, snrs[i], r.analytic, r.est->mean, diff, tol);
            }
        }
    }
    c.pass = pass && cells > 0;
    c.detail = fmt("%d cells with OP >= 1e-4 at %llu trials; worst: %s",
                   cells, static_cast<unsigned long long>(trials), worst_label.c_str());
    return c;
}

// ---------------------------------------------------------------------------
// 5. Outage diversity. (A) The far-user high-SNR forms must fit a log-log
//    slope of exactly -m_small*K (1e-6) for both schemes. (B) For K=2 the
//    EXACT small-gain-regime far outage, fitted over its last reliable decade
//    (probabilities 1e-9 down to 1e-12), must give -3 +/- 0.15.
// ---------------------------------------------------------------------------
ValidationCheck check_diversity(const SystemParams& base, const ValidationOptions&) {
    ValidationCheck c{5, "outage-diversity-slopes", false, ""};
    const auto d = derive(base);
    if (!d.has_tail_coeff) {
        c.detail = "hop shapes coincide: no small-gain tail law, cannot fit diversity";
        return c;
    }
    const double target = -d.m_small * static_cast<double>(d.n_elements);
    const double r1 = 1e6, r2 = 1e8;
    const double s_noma = loglog_slope(downlink::op_dl_noma_asymptotic(r1, d).far_user.value,
                                       downlink::op_dl_noma_asymptotic(r2, d).far_user.value, r1, r2);
    const double s_oma = loglog_slope(downlink::op_dl_oma_asymptotic(r1, d).far_user.value,
                                      downlink::op_dl_oma_asymptotic(r2, d).far_user.value, r1, r2);
    const bool pass_a = std::abs(s_noma - target) <= 1e-6 && std::abs(s_oma - target) <= 1e-6;

    SystemParams p2 = base;
    p2.n_elements = 2;
    p2.m_bs_irs = 3.0;
    p2.m_irs_far = 1.5;
    const auto d2 = derive(p2);
    const auto nz = chanstats::near_zero_law(d2);
    const double den = d2.alpha_far - d2.alpha_near * d2.thr_far;
    const auto op_far_exact = [&](double rho) {
        return chanstats::nearzero_cdf_z(std::sqrt(d2.thr_far / (den * d2.c * rho)), nz);
    };
    // Outage is strictly decreasing in rho; bisect the SNRs hitting the two
    // decade endpoints in log10-rho space.
    const auto solve = [&](double target_op) {
        double lo = 0.0, hi = 40.0;
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            (op_far_exact(std::pow(10.0, mid)) > target_op ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };
    const double l9 = solve(1e-9), l12 = solve(1e-12);
    const double s_fit = -3.0 / (l12 - l9);
    const bool pass_b = std::abs(s_fit + 3.0) <= 0.15;

    c.pass = pass_a && pass_b;
    c.detail = fmt("asymptotic slopes: noma %.8f, oma %.8f vs %.1f (tol 1e-6); "
                   "K=2 exact-law fit over probabilities [1e-12,1e-9]: %.4f vs -3 (tol 0.15)",
                   s_noma, s_oma, target, s_fit);
    return c;
}

// ---------------------------------------------------------------------------
// 6. High-SNR rate slopes: difference quotient between 70 and 80 dB (upper
//    decade of the 60-80 dB window) must match (1,0) / (0.5,0.5) / (0,1)
//    within 0.05, and the downlink cascade-user rate must sit within 0.01
//    bits of its interference ceiling at 80 dB.
// ---------------------------------------------------------------------------
ValidationCheck check_rate_slopes(const SystemParams& base, const ValidationOptions&) {
    ValidationCheck c{6, "rate-slopes-and-ceiling", false, ""};
    const auto d = derive(base);
    const auto cg = specfun::make_chebyshev_gauss(100);
    const auto gl = specfun::make_gauss_laguerre(100);
    const double r60 = db_to_linear(60), r70 = db_to_linear(70), r80 = db_to_linear(80);
    const double dec = std::log2(10.0);

    const double nn = (downlink::er_dl_noma_near(r80, d) - downlink::er_dl_noma_near(r70, d)) / dec;
    const double nf80 = downlink::er_dl_noma_far(r80, d, cg);
    const double nf = (nf80 - downlink::er_dl_noma_far(r70, d, cg)) / dec;
    const double nf_low = (downlink::er_dl_noma_far(r70, d, cg) -
                           downlink::er_dl_noma_far(r60, d, cg)) / dec;
    const auto o70 = downlink::er_dl_oma(r70, d, gl);
    const auto o80 = downlink::er_dl_oma(r80, d, gl);
    const double on = (o80.near_user - o70.near_user) / dec;
    const double of = (o80.far_user - o70.far_user) / dec;
    const double un = (uplink::er_ul_noma_near(r80, d, gl) - uplink::er_ul_noma_near(r70, d, gl)) / dec;
    const double uf = (uplink::er_ul_noma_far(r80, d, gl) - uplink::er_ul_noma_far(r70, d, gl)) / dec;
    const double gap = std::abs(nf80 - downlink::er_dl_noma_far_ceiling(d));

    const bool pass = std::abs(nn - 1.0) <= 0.05 && std::abs(nf) <= 0.05 &&
                      std::abs(on - 0.5) <= 0.05 && std::abs(of - 0.5) <= 0.05 &&
                      std::abs(un) <= 0.05 && std::abs(uf - 1.0) <= 0.05 && gap <= 0.01;
    c.pass = pass;
    c.detail = fmt("slopes 70->80 dB: dl-noma (%.3f, %.3f), oma (%.3f, %.3f), ul-noma (%.3f, %.3f) "
                   "vs (1,0)/(0.5,0.5)/(0,1) tol 0.05; ceiling gap %.4f (limit 0.01); "
                   "dl-noma far 60->70 slope %.3f",
                   nn, nf, on, of, un, uf, gap, nf_low);
    return c;
}

// ---------------------------------------------------------------------------
// 7. Ergodic rates vs simulation: all six rate formulas at 40 dB within 0.02
//    bits/s/Hz of Monte Carlo.
// ---------------------------------------------------------------------------
ValidationCheck check_rates_vs_mc(const SystemParams& base, const ValidationOptions& opts) {
    ValidationCheck c{7, "rates-vs-simulation", false, ""};
    const auto d = derive(base);
    const auto cg = specfun::make_chebyshev_gauss(100);
    const auto gl = specfun::make_gauss_laguerre(100);
    const double rho = db_to_linear(40);
    const std::uint64_t trials = pick_trials(opts.profile, 1000000, 100000);

    const auto mc_noma = mcsim::simulate_dl(base, Scheme::Noma, rho, mc_cfg(opts, trials, 31));
    const auto mc_oma = mcsim::simulate_dl(base, Scheme::Oma, rho, mc_cfg(opts, trials, 32));
    const auto mc_ul = mcsim::simulate_ul(base, Scheme::Noma, rho, mc_cfg(opts, trials, 33));
    const auto oma = downlink::er_dl_oma(rho, d, gl);

    const struct {
        const char* label;
        double analytic;
        double mc;
    } rows[6] = {
        {"dl-noma near", downlink::er_dl_noma_near(rho, d), mc_noma.er_near.mean},
        {"dl-noma far", downlink::er_dl_noma_far(rho, d, cg), mc_noma.er_far.mean},
        {"dl-oma near", oma.near_user, mc_oma.er_near.mean},
        {"dl-oma far", oma.far_user, mc_oma.er_far.mean},
        {"ul-noma near", uplink::er_ul_noma_near(rho, d, gl), mc_ul.er_near.mean},
        {"ul-noma far", uplink::er_ul_noma_far(rho, d, gl), mc_ul.er_far.mean},
    };
    bool pass = true;
    double worst = 0.0;
    const char* worst_label = "";
    for (const auto& r : rows) {
        const double diff = std::abs(r.analytic - r.mc);
        if (diff > 0.02) pass = false;
        if (diff > worst) {
            worst = diff;
            worst_label = r.label;
        }
    }
    c.pass = pass;
    c.detail = fmt("six rates at 40 dB, %llu trials: worst |analytic - mc| = %.4f (%s), limit 0.02",
                   static_cast<unsigned long long>(trials), worst, worst_label);
    return c;
}

// ---------------------------------------------------------------------------
// 8. Uplink outage floor: simulation at 70 dB within 3 standard errors of the
//    closed-form floor; analytic outage at 80 dB within 1e-3 of it.
// ---------------------------------------------------------------------------
ValidationCheck check_ul_floor(const SystemParams& base, const ValidationOptions& opts) {
    ValidationCheck c{8, "uplink-outage-floor", false, ""};
    const auto d = derive(base);
    const double floor_val = uplink::op_ul_floor(d);
    const std::uint64_t trials = pick_trials(opts.profile, 1000000, 200000);

    const auto mc = mcsim::simulate_ul(base, Scheme::Noma, db_to_linear(70), mc_cfg(opts, trials, 41));
    const double dev_n = std::abs(mc.op_near.mean - floor_val);
    const double dev_f = std::abs(mc.op_far.mean - floor_val);
    const double tol_n = mc_tolerance(mc.op_near);
    const double tol_f = mc_tolerance(mc.op_far);

    const auto op80 = uplink::op_ul_noma(db_to_linear(80), d);
    const double gap_n = std::abs(op80.near_user.value - floor_val);
    const double gap_f = std::abs(op80.far_user.value - floor_val);

    c.pass = dev_n <= tol_n && dev_f <= tol_f && gap_n <= 1e-3 && gap_f <= 1e-3;
    c.detail = fmt("floor %.6f; mc@70dB devs %.2e / %.2e (tols %.2e / %.2e); "
                   "analytic@80dB gaps %.2e / %.2e (limit 1e-3)",
                   floor_val, dev_n, dev_f, tol_n, tol_f, gap_n, gap_f);
    return c;
}

// ---------------------------------------------------------------------------
// 9. Small-gain tail accuracy, K=2, shapes 3 / 1.5. An independent numeric
//    convolution of the two element-gain product densities supplies the true
//    law of Z; at the z where the true CDF is 1e-3 the small-gain closed form
//    must sit within 5% relative while the CLT law must be off by more than
//    50% (the regime where only the tail law is trustworthy).
//
//    The 5% leg measures the approximation itself, not numerics: the check
//    reports the measured relative error and the z-range where the closed
//    form does track the truth to 5%.
// ---------------------------------------------------------------------------

// Adaptive Simpson in 'a' for the product-gain density integrand.
template <typename F>
double simpson_rec(const F& f, double a, double b, double fa, double fm, double fb,
                   double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol) {
    if (!(b > a)) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 28);
}

ValidationCheck check_tail_accuracy(const SystemParams& base, const ValidationOptions&) {
    ValidationCheck c{9, "small-gain-tail-accuracy", false, ""};
    SystemParams p = base;
    p.n_elements = 2;
    p.m_bs_irs = 3.0;
    p.m_irs_far = 1.5;
    const auto d = derive(p);
    const auto nz = chanstats::near_zero_law(d);
    const chanstats::CascadeLawCLT clt{d.lambda};

    // Amplitude density of a unit-mean-square Nakagami variate.
    const double ma = p.m_bs_irs, mb = p.m_irs_far;
    const double ca = std::exp(std::log(2.0) + ma * std::log(ma) - specfun::ln_gamma(ma));
    const double cb = std::exp(std::log(2.0) + mb * std::log(mb) - specfun::ln_gamma(mb));
    const auto pdf_a = [&](double x) { return ca * std::pow(x, 2.0 * ma - 1.0) * std::exp(-ma * x * x); };
    const auto pdf_b = [&](double x) { return cb * std::pow(x, 2.0 * mb - 1.0) * std::exp(-mb * x * x); };

    // Density of one product term Q = |G||g| by direct integration, tabulated
    // on a uniform grid wide enough to cover the probed quantile.
    const double h = 1e-4;
    const int n_grid = 6001;  // covers [0, 0.6]
    std::vector<double> fq(n_grid, 0.0), cq(n_grid, 0.0), fz(n_grid, 0.0);
    for (int k = 1; k < n_grid; ++k) {
        const double q = k * h;
        const auto integrand = [&](double a) { return pdf_a(a) * pdf_b(q / a) / a; };
        fq[k] = adaptive_simpson(integrand, std::max(q / 8.0, 1e-12), 5.0, 1e-12);
    }
    for (int k = 1; k < n_grid; ++k)  // distribution of Q, cumulative trapezoid
        cq[k] = cq[k - 1] + 0.5 * h * (fq[k - 1] + fq[k]);
    for (int k = 1; k < n_grid; ++k) {  // Z = Q1 + Q2: F_Z(z) = int f_Q(t) F_Q(z-t) dt
        double acc = 0.5 * (fq[0] * cq[k] + fq[k] * cq[0]);
        for (int j = 1; j < k; ++j) acc += fq[j] * cq[k - j];
        fz[k] = acc * h;
    }

    // z0: the quantile where the true CDF crosses 1e-3.
    int k0 = -1;
    for (int k = 1; k < n_grid; ++k) {
        if (fz[k] >= 1e-3) {
            k0 = k;
            break;
        }
    }
    if (k0 <= 0) {
        c.detail = "convolution oracle never reaches CDF 1e-3 on [0, 0.6]";
        return c;
    }
    const double z0 = (k0 - 1) * h + h * (1e-3 - fz[k0 - 1]) / (fz[k0] - fz[k0 - 1]);
    if (z0 < 0.30 || z0 > 0.45) {
        c.detail = fmt("convolution oracle quantile z0=%.4f outside sanity range [0.30, 0.45]", z0);
        return c;
    }

    const double tail_val = chanstats::nearzero_cdf_z(z0, nz);
    const double rel_tail = tail_val / 1e-3 - 1.0;
    const double x0 = z0 * z0 / (d.b / d.c);  // b/c = K(1-xi), the Z->X scale
    const double clt_val = chanstats::clt_cdf_x(x0, clt);
    const double rel_clt = clt_val / 1e-3 - 1.0;

    // Where DOES the closed form track the truth to 5%? Scan down from z0.
    double z_ok = 0.0, cdf_ok = 0.0;
    for (int k = k0; k >= 1; --k) {
        if (fz[k] <= 0.0) break;
        const double rel = chanstats::nearzero_cdf_z(k * h, nz) / fz[k] - 1.0;
        if (std::abs(rel) <= 0.05) {
            z_ok = k * h;
            cdf_ok = fz[k];
            break;
        }
    }

    c.pass = std::abs(rel_tail) <= 0.05 && std::abs(rel_clt) > 0.5;
    c.detail = fmt("true CDF hits 1e-3 at z0=%.5f; small-gain law rel err %+.1f%% (limit 5%%), "
                   "CLT law rel err %+.0f%% (must exceed 50%%); law within 5%% only for z <= %.4f "
                   "(CDF <= %.1e)",
                   z0, 100.0 * rel_tail, 100.0 * rel_clt, z_ok, cdf_ok);
    return c;
}

// ---------------------------------------------------------------------------
// 10. Power-split sensitivity: growing the near-user share moves the two
//     users' metrics in opposite directions at every probed SNR, while the
//     fitted diversity order and rate slopes keep their targets.
// ---------------------------------------------------------------------------
ValidationCheck check_power_split(const SystemParams& base, const ValidationOptions&) {
    ValidationCheck c{10, "power-split-sensitivity", false, ""};
    SystemParams pa = base;
    pa.alpha_near = 0.1;
    pa.alpha_far = 0.9;
    SystemParams pb = base;  // outage comparison split
    pb.alpha_near = 0.3;
    pb.alpha_far = 0.7;
    SystemParams pc = base;  // rate comparison split
    pc.alpha_near = 0.2;
    pc.alpha_far = 0.8;
    const auto da = derive(pa), db = derive(pb), dc = derive(pc);
    const auto cg = specfun::make_chebyshev_gauss(100);

    // Outage grid sits where neither value saturates at 1 in double precision.
    bool op_dirs = true;
    for (int s : {35, 40, 45}) {
        const double rho = db_to_linear(s);
        op_dirs = op_dirs &&
                  downlink::op_dl_noma_near(rho, db).value < downlink::op_dl_noma_near(rho, da).value &&
                  downlink::op_dl_noma_far(rho, db).value > downlink::op_dl_noma_far(rho, da).value;
    }
    bool er_dirs = true;
    for (int s : {30, 35, 40}) {
        const double rho = db_to_linear(s);
        er_dirs = er_dirs &&
                  downlink::er_dl_noma_near(rho, dc) > downlink::er_dl_noma_near(rho, da) &&
                  downlink::er_dl_noma_far(rho, dc, cg) < downlink::er_dl_noma_far(rho, da, cg);
    }

    // Invariance of the fitted orders under the changed splits. The scheme
    // without a split (orthogonal access) and the uplink are untouched by
    // construction, so only the split-dependent fits are redone.
    const double target = -db.m_small * static_cast<double>(db.n_elements);
    const double s_div = loglog_slope(downlink::op_dl_noma_asymptotic(1e6, db).far_user.value,
                                      downlink::op_dl_noma_asymptotic(1e8, db).far_user.value, 1e6, 1e8);
    const double dec = std::log2(10.0);
    const double r70 = db_to_linear(70), r80 = db_to_linear(80);
    const double sn = (downlink::er_dl_noma_near(r80, dc) - downlink::er_dl_noma_near(r70, dc)) / dec;
    const double sf = (downlink::er_dl_noma_far(r80, dc, cg) - downlink::er_dl_noma_far(r70, dc, cg)) / dec;
    const bool invariant = std::abs(s_div - target) <= 1e-6 &&
                           std::abs(sn - 1.0) <= 0.05 && std::abs(sf) <= 0.05;

    c.pass = op_dirs && er_dirs && invariant;
    c.detail = fmt("split 0.1->0.3: near OP down / far OP up at 35,40,45 dB: %s; "
                   "split 0.1->0.2: near rate up / far rate down at 30,35,40 dB: %s; "
                   "diversity fit %.8f vs %.1f, rate slopes (%.3f, %.3f) vs (1,0)",
                   op_dirs ? "yes" : "NO", er_dirs ? "yes" : "NO", s_div, target, sn, sf);
    return c;
}

// ---------------------------------------------------------------------------
// 11. Relay baseline contrast (simulation-only baseline): the relay's far-user
//     outage and rates saturate with SNR while the surface-aided curves keep
//     improving, and the two far-user downlink outage curves cross exactly
//     once on a 0-40 dB grid.
// ---------------------------------------------------------------------------
ValidationCheck check_relay_contrast(const SystemParams& base, const ValidationOptions& opts) {
    ValidationCheck c{11, "relay-baseline-contrast", false, ""};
    SystemParams p = base;
    p.n_elements = 8;
    const auto d = derive(p);
    const mcsim::FdrParams fdr;  // defaults define the baseline
    const auto gl = specfun::make_gauss_laguerre(100);
    const std::uint64_t trials = pick_trials(opts.profile, 1000000, 100000);

    // Flatness is probed over the settled decade 70->80 dB: the uplink
    // relay's self-interference-limited regime settles about a decade later
    // than the downlink's, but by 70 dB every relay curve has converged.
    const auto f70 = mcsim::simulate_fdr(p, fdr, Direction::Downlink, db_to_linear(70),
                                         mc_cfg(opts, trials, 51));
    const auto f80 = mcsim::simulate_fdr(p, fdr, Direction::Downlink, db_to_linear(80),
                                         mc_cfg(opts, trials, 52));
    const auto u70 = mcsim::simulate_fdr(p, fdr, Direction::Uplink, db_to_linear(70),
                                         mc_cfg(opts, trials, 53));
    const auto u80 = mcsim::simulate_fdr(p, fdr, Direction::Uplink, db_to_linear(80),
                                         mc_cfg(opts, trials, 54));

    // (a) relay outage floor vs surface-aided decay
    const double op_flat = std::abs(f80.op_far.mean - f70.op_far.mean);
    const double irs35 = downlink::op_dl_noma_far(db_to_linear(35), d).value;
    const double irs40 = downlink::op_dl_noma_far(db_to_linear(40), d).value;
    const bool a_ok = op_flat <= 0.05 && irs40 <= 0.25 * irs35;
    // (b) relay downlink rate ceiling vs orthogonal-access far rate growth
    const double er_flat = std::abs(f80.er_far.mean - f70.er_far.mean);
    const double oma_growth = downlink::er_dl_oma(db_to_linear(80), d, gl).far_user -
                              downlink::er_dl_oma(db_to_linear(70), d, gl).far_user;
    const bool b_ok = er_flat <= 0.1 && oma_growth >= 1.0;
    // (c) same contrast on the uplink
    const double ul_flat = std::abs(u80.er_far.mean - u70.er_far.mean);
    const double ul_growth = uplink::er_ul_noma_far(db_to_linear(80), d, gl) -
                             uplink::er_ul_noma_far(db_to_linear(70), d, gl);
    const bool c_ok = ul_flat <= 0.1 && ul_growth >= 1.0;
    // (d) exactly one sign change of (surface OP - relay OP) on the grid
    int sign_changes = 0, prev = 0;
    double cross_db = -1.0;
    for (int s = 0; s <= 40; s += 5) {
        const double rho = db_to_linear(s);
        const auto fm = mcsim::simulate_fdr(p, fdr, Direction::Downlink, rho,
                                            mc_cfg(opts, trials, 60 + static_cast<std::uint64_t>(s)));
        const double diff = downlink::op_dl_noma_far(rho, d).value - fm.op_far.mean;
        if (diff == 0.0) continue;  // exact tie (both saturated): no sign information
        const int sg = diff > 0.0 ? 1 : -1;
        if (prev != 0 && sg != prev) {
            ++sign_changes;
            cross_db = s;
        }
        prev = sg;
    }
    const bool d_ok = sign_changes == 1;

    c.pass = a_ok && b_ok && c_ok && d_ok;
    c.detail = fmt("relay far OP drift 70->80 dB %.4f (<=0.05) vs surface decay x%.3f (<=0.25): %s; "
                   "relay DL rate drift %.4f (<=0.1) vs +%.2f bits growth (>=1): %s; "
                   "relay UL rate drift %.4f vs +%.2f bits: %s; crossings=%d (last near %.0f dB)",
                   op_flat, irs35 > 0 ? irs40 / irs35 : 0.0, a_ok ? "ok" : "NO",
                   er_flat, oma_growth, b_ok ? "ok" : "NO",
                   ul_flat, ul_growth, c_ok ? "ok" : "NO", sign_changes, cross_db);
    return c;
}

// ---------------------------------------------------------------------------
// 12. Quadrature convergence: every quadrature-backed rate moves by less than
//     1e-6 when the rule order doubles from 100 to 200.
// ---------------------------------------------------------------------------
ValidationCheck check_quadrature(const SystemParams& base, const ValidationOptions&) {
    ValidationCheck c{12, "quadrature-convergence", false, ""};
    const auto d = derive(base);
    const auto cg1 = specfun::make_chebyshev_gauss(100), cg2 = specfun::make_chebyshev_gauss(200);
    const auto gl1 = specfun::make_gauss_laguerre(100), gl2 = specfun::make_gauss_laguerre(200);
    const double rho = db_to_linear(40);

    const struct {
        const char* label;
        double v1, v2;
    } rows[5] = {
        {"dl-noma far", downlink::er_dl_noma_far(rho, d, cg1), downlink::er_dl_noma_far(rho, d, cg2)},
        {"dl-oma far", downlink::er_dl_oma(rho, d, gl1).far_user, downlink::er_dl_oma(rho, d, gl2).far_user},
        {"ul-noma near", uplink::er_ul_noma_near(rho, d, gl1), uplink::er_ul_noma_near(rho, d, gl2)},
        {"ul-noma far", uplink::er_ul_noma_far(rho, d, gl1), uplink::er_ul_noma_far(rho, d, gl2)},
        {"ul-noma near ceiling", uplink::er_ul_noma_near_ceiling(d, gl1),
         uplink::er_ul_noma_near_ceiling(d, gl2)},
    };
    bool pass = true;
    double worst = 0.0;
    const char* worst_label = "";
    for (const auto& r : rows) {
        const double diff = std::abs(r.v1 - r.v2);
        if (!(diff < 1e-6)) pass = false;
        if (diff > worst) {
            worst = diff;
            worst_label = r.label;
        }
    }
    c.pass = pass;
    c.detail = fmt("five rate evaluators at 40 dB, order 100 vs 200: worst shift %.2e (%s), limit 1e-6",
                   worst, worst_label);
    return c;
}

}  // namespace

bool ValidationReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const ValidationCheck& c) { return c.pass; });
}

ValidationCheck run_validation_check(int id, const SystemParams& base,
                                     const ValidationOptions& opts) {
    try {
        switch (id) {
            case 1: return check_cascade_law(base, opts);
            case 2: return check_exact_constants(base, opts);
            case 3: return check_series_identity(base, opts);
            case 4: return check_dl_outage_vs_mc(base, opts);
            case 5: return check_diversity(base, opts);
            case 6: return check_rate_slopes(base, opts);
            case 7: return check_rates_vs_mc(base, opts);
            case 8: return check_ul_floor(base, opts);
            case 9: return check_tail_accuracy(base, opts);
            case 10: return check_power_split(base, opts);
            case 11: return check_relay_contrast(base, opts);
            case 12: return check_quadrature(base, opts);
            default: break;
        }
        return ValidationCheck{id, "unknown", false, fmt("no check with id %d (valid: 1..12)", id)};
    } catch (const std::exception& e) {
        return ValidationCheck{id, "error", false, fmt("check aborted: %s", e.what())};
    }
}

ValidationReport run_validation(const SystemParams& base, const ValidationOptions& opts) {
    ValidationReport r;
    r.checks.reserve(12);
    for (int id = 1; id <= 12; ++id) r.checks.push_back(run_validation_check(id, base, opts));
    return r;
}

std::string report_to_json(const ValidationReport& report, const ValidationOptions& opts) {
    nlohmann::json j;
    j["profile"] = opts.profile == Profile::Full ? "full" : "quick";
    j["seed"] = opts.seed;
    j["corrupt_xi"] = opts.corrupt_xi;
    j["checks"] = nlohmann::json::array();
    for (const auto& c : report.checks)
        j["checks"].push_back({{"id", c.id}, {"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    j["all_pass"] = report.all_pass();
    return j.dump(2) + "\n";
}

}  // namespace irsnoma::validation
