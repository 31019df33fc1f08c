#include "irsnoma/chanstats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "irsnoma/specfun.hpp"

namespace irsnoma::chanstats {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

CascadeLawCLT clt_law(const DerivedConstants& d) { return CascadeLawCLT{d.lambda}; }

NearZeroLaw near_zero_law(const DerivedConstants& d) {
    if (!d.has_tail_coeff)
        throw std::domain_error("near_zero_law: small-gain tail law requires distinct hop shapes");
    return NearZeroLaw{d.m_small, d.m_large, d.tail_coeff, static_cast<int>(d.n_elements)};
}

std::vector<double> optimal_phases(const std::vector<double>& arg_bs_irs,
                                   const std::vector<double>& arg_irs_user,
                                   double theta_tilde) {
    if (arg_bs_irs.size() != arg_irs_user.size())
        throw std::invalid_argument("optimal_phases: argument arrays differ in length");
    std::vector<double> out(arg_bs_irs.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        double th = theta_tilde - arg_bs_irs[k] - arg_irs_user[k];
        th = std::fmod(th, kTwoPi);
        if (th < 0) th += kTwoPi;
        if (th >= kTwoPi) th = 0.0;  // guard against fmod rounding at the seam
        out[k] = th;
    }
    return out;
}

double clt_pdf_x(double x, const CascadeLawCLT& law) {
    if (x < 0) return 0.0;
    if (x == 0) return std::numeric_limits<double>::infinity();
    // X = Y^2 with Y ~ Normal(sqrt(lambda), 1):
    // f(x) = [phi(sqrt(x)-sqrt(lambda)) + phi(sqrt(x)+sqrt(lambda))] / (2 sqrt(x)),
    // an exponent-safe rewrite of the Bessel closed form.
    const double sx = std::sqrt(x);
    const double sl = std::sqrt(law.lambda);
    const double inv_sqrt_2pi = 0.39894228040143267793994605993438;
    double g1 = std::exp(-0.5 * (sx - sl) * (sx - sl));
    double g2 = std::exp(-0.5 * (sx + sl) * (sx + sl));
    return inv_sqrt_2pi * (g1 + g2) / (2.0 * sx);
}

double clt_cdf_x(double x, const CascadeLawCLT& law) {
    if (x <= 0) return 0.0;
    return 1.0 - specfun::marcum_q_half(std::sqrt(law.lambda), std::sqrt(x));
}

std::size_t poisson_term_count(double rate) {
    double bound = std::max(rate + 12.0 * std::sqrt(std::max(rate, 0.0)), 40.0);
    return static_cast<std::size_t>(std::ceil(bound)) + 1;
}

double clt_cdf_x_series(double x, const CascadeLawCLT& law, std::size_t max_terms) {
    if (x <= 0) return 0.0;
    const double half_lambda = 0.5 * law.lambda;
    const std::size_t n = max_terms ? max_terms : poisson_term_count(half_lambda);
    const double log_hl = std::log(half_lambda);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double di = static_cast<double>(i);
        double log_w = di * log_hl - specfun::ln_gamma(di + 1.0) - half_lambda;
        double term = std::exp(log_w) * specfun::reg_lower_gamma(di + 0.5, 0.5 * x);
        sum += term;
        if (term < 1e-16 * sum && di > half_lambda) break;
    }
    return std::min(sum, 1.0);
}

namespace {

void check_law(const NearZeroLaw& law) {
    if (!(law.m_small < law.m_large))
        throw std::domain_error("near-zero law: hop shapes must be distinct");
    if (law.n_elements < 1) throw std::domain_error("near-zero law: need at least one element");
}

}  // namespace

double nearzero_pdf_z(double z, const NearZeroLaw& law) {
    check_law(law);
    if (z < 0) return 0.0;
    const double s = 2.0 * law.m_small * law.n_elements;  // local power-law exponent
    if (z == 0) {
        if (s > 1.0) return 0.0;
        if (s == 1.0) return std::exp(law.n_elements * std::log(law.tail_coeff));
        return std::numeric_limits<double>::infinity();
    }
    double log_f = law.n_elements * std::log(law.tail_coeff) - specfun::ln_gamma(s) +
                   (s - 1.0) * std::log(z) - 2.0 * std::sqrt(law.m_small * law.m_large) * z;
    return std::exp(log_f);
}

double nearzero_cdf_z(double z, const NearZeroLaw& law) {
    check_law(law);
    if (z <= 0) return 0.0;
    const double s = 2.0 * law.m_small * law.n_elements;
    const double rate = 2.0 * std::sqrt(law.m_small * law.m_large);
    // coeff^K (4 m_s m_l)^(-m_s K) * gamma_lower(s, rate*z), written with the
    // regularized lower gamma so the plain Gamma(s) never materializes.
    double log_pref = law.n_elements * std::log(law.tail_coeff) -
                      (s / 2.0) * std::log(4.0 * law.m_small * law.m_large);
    return std::exp(log_pref) * specfun::reg_lower_gamma(s, rate * z);
}

double nearzero_cdf_leading(double z, const NearZeroLaw& law) {
    check_law(law);
    if (z <= 0) return 0.0;
    const double s = 2.0 * law.m_small * law.n_elements;
    double log_f = law.n_elements * std::log(law.tail_coeff) + s * std::log(z) -
                   specfun::ln_gamma(s + 1.0);
    return std::exp(log_f);
}

}  // namespace irsnoma::chanstats
