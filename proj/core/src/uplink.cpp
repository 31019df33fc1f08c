#include "irsnoma/uplink.hpp"

#include <cmath>
#include <vector>

#include "cascade_rate.hpp"
#include "irsnoma/chanstats.hpp"

namespace irsnoma::uplink {

namespace {

constexpr double kLn2 = 0.69314718055994530941723212145818;

// log of the i-th series term:
//   lambda^i / (i! 2^{2i+1/2} base^{i+1/2}) * e^{-lambda/2}
double log_series_term(std::size_t i, double log_lambda, double log_base, double lambda) {
    const double di = static_cast<double>(i);
    return di * log_lambda - specfun::ln_gamma(di + 1.0) - (2.0 * di + 0.5) * kLn2 -
           (di + 0.5) * log_base - 0.5 * lambda;
}

}  // namespace

UlSeriesTerms ul_series_terms(const DerivedConstants& d) {
    UlSeriesTerms t;
    t.base = d.b * d.thr_near / d.a + 0.5;
    t.poisson_scale = d.lambda / (4.0 * t.base);
    t.max_terms = chanstats::poisson_term_count(t.poisson_scale);
    return t;
}

OutagePair op_ul_noma(double rho_prime, const DerivedConstants& d) {
    return op_ul_noma(rho_prime, d, ul_series_terms(d));
}

OutagePair op_ul_noma(double rho_prime, const DerivedConstants& d,
                      const UlSeriesTerms& terms) {
    const double log_lambda = std::log(d.lambda);
    const double log_base = std::log(terms.base);
    const double qarg = d.thr_near * d.thr_far / (d.a * rho_prime) +
                        d.thr_far / (2.0 * d.b * rho_prime);
    double sum_near = 0.0;
    double sum_far = 0.0;
    for (std::size_t i = 0; i < terms.max_terms; ++i) {
        const double term = std::exp(log_series_term(i, log_lambda, log_base, d.lambda));
        sum_near += term;
        sum_far += term * specfun::reg_upper_gamma(static_cast<double>(i) + 0.5, qarg);
        if (term < 1e-16 * sum_near && static_cast<double>(i) > terms.poisson_scale) break;
    }
    const double decode_near = std::exp(-d.thr_near / (d.a * rho_prime));
    OutagePair out;
    out.near_user = {std::min(1.0, std::max(0.0, 1.0 - decode_near * sum_near)), false};
    out.far_user = {std::min(1.0, std::max(0.0, 1.0 - decode_near * sum_far)), false};
    return out;
}

double op_ul_floor(const DerivedConstants& d) {
    return op_ul_floor(d, ul_series_terms(d));
}

double op_ul_floor(const DerivedConstants& d, const UlSeriesTerms& terms) {
    const double log_lambda = std::log(d.lambda);
    const double log_base = std::log(terms.base);
    double sum = 0.0;
    for (std::size_t i = 0; i < terms.max_terms; ++i) {
        const double term = std::exp(log_series_term(i, log_lambda, log_base, d.lambda));
        sum += term;
        if (term < 1e-16 * sum && static_cast<double>(i) > terms.poisson_scale) break;
    }
    return std::min(1.0, std::max(0.0, 1.0 - sum));
}

UserPair diversity_ul_noma() { return {0.0, 0.0}; }

namespace {

// Shared kernel of the near-user rate and its ceiling. `eps` is the inverse
// received SNR 1/(a*rho'); the ceiling is the eps = 0 limit. The outer
// e^{1/(a rho')} factor cancels against the scaled exponential integral, so
// the exponent below is eps-free.
double er_ul_near_kernel(double eps, const DerivedConstants& d,
                         const specfun::QuadratureRule& rule) {
    detail::require_rule(rule, specfun::QuadratureKind::GaussLaguerre, "er_ul_noma_near");
    const double ratio = d.b / d.a;
    const double quarter_log_lambda = 0.25 * std::log(d.lambda);
    double sum = 0.0;
    for (std::size_t l = 0; l < rule.nodes.size(); ++l) {
        const double x = rule.nodes[l];
        const double z = std::sqrt(d.lambda * x);
        const double expo = rule.log_weights[l] + 0.5 * x + z - 0.5 * d.lambda +
                            quarter_log_lambda - 0.25 * std::log(x);
        sum += std::exp(expo) * specfun::expint_ei_neg_scaled(ratio * x + eps) *
               specfun::bessel_i_mhalf_scaled(z);
    }
    return -sum / (2.0 * kLn2);
}

}  // namespace

double er_ul_noma_near(double rho_prime, const DerivedConstants& d,
                       const specfun::QuadratureRule& rule) {
    return er_ul_near_kernel(1.0 / (d.a * rho_prime), d, rule);
}

double er_ul_noma_near_ceiling(const DerivedConstants& d,
                               const specfun::QuadratureRule& rule) {
    return er_ul_near_kernel(0.0, d, rule);
}

double er_ul_noma_far(double rho_prime, const DerivedConstants& d,
                      const specfun::QuadratureRule& rule) {
    detail::require_rule(rule, specfun::QuadratureKind::GaussLaguerre, "er_ul_noma_far");
    return detail::cascade_rate_mean(d.b * rho_prime, d.lambda, rule);
}

double er_ul_noma_far_asymptote(double rho_prime, const DerivedConstants& d) {
    return std::log2(d.b * rho_prime * (1.0 + d.lambda));
}

double er_ul_noma_far_jensen_bound(double rho_prime, const DerivedConstants& d) {
    return std::log2(1.0 + d.b * rho_prime * (1.0 + d.lambda));
}

UserPair slopes_ul_noma() { return {0.0, 1.0}; }

UlOmaMetrics ul_oma(double rho_prime, const DerivedConstants& d,
                    const specfun::QuadratureRule& gl_rule) {
    UlOmaMetrics m;
    m.op = downlink::op_dl_oma(rho_prime, d);
    m.op_asymptotic = downlink::op_dl_oma_asymptotic(rho_prime, d);
    m.er = downlink::er_dl_oma(rho_prime, d, gl_rule);
    m.er_asymptotic = downlink::er_dl_oma_asymptotic(rho_prime, d);
    return m;
}

}  // namespace irsnoma::uplink
