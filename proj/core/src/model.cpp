#include "irsnoma/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "irsnoma/specfun.hpp"

namespace irsnoma {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("SystemParams: ") + what);
}

}  // namespace

void SystemParams::validate() const {
    require(dist_near > 0, "dist_near must be positive");
    require(dist_bs_irs > 0, "dist_bs_irs must be positive");
    require(dist_irs_far > 0, "dist_irs_far must be positive");
    require(pl_exp_near > 0, "pl_exp_near must be positive");
    require(pl_exp_bs_irs > 0, "pl_exp_bs_irs must be positive");
    require(pl_exp_irs_far > 0, "pl_exp_irs_far must be positive");
    require(m_bs_irs >= 0.5, "m_bs_irs must be >= 0.5");
    require(m_irs_far >= 0.5, "m_irs_far must be >= 0.5");
    require(n_elements >= 1, "n_elements must be >= 1");
    require(amp_reflect > 0 && amp_reflect <= 1, "amp_reflect must be in (0,1]");
    require(std::fabs(alpha_near + alpha_far - 1.0) < 1e-12,
            "power-allocation coefficients must sum to 1");
    require(alpha_near < alpha_far, "alpha_near must be below alpha_far");
    require(alpha_near >= 0, "alpha_near must be nonnegative");
    require(rate_near_bps > 0, "rate_near_bps must be positive");
    require(rate_far_bps > 0, "rate_far_bps must be positive");
    require(bandwidth_hz > 0, "bandwidth_hz must be positive");
}

double xi(double m_bs_irs, double m_irs_far) {
    if (!(m_bs_irs >= 0.5) || !(m_irs_far >= 0.5))
        throw std::domain_error("xi: shapes must be >= 0.5");
    using specfun::ln_gamma;
    double lg =
        ln_gamma(m_bs_irs + 0.5) - ln_gamma(m_bs_irs) + ln_gamma(m_irs_far + 0.5) - ln_gamma(m_irs_far);
    return std::exp(2.0 * lg - std::log(m_bs_irs) - std::log(m_irs_far));
}

DerivedConstants derive(const SystemParams& p) {
    p.validate();
    using specfun::ln_gamma;
    DerivedConstants d;
    d.a = std::pow(p.dist_near, -p.pl_exp_near);
    d.xi = xi(p.m_bs_irs, p.m_irs_far);
    d.c = p.amp_reflect * p.amp_reflect * std::pow(p.dist_bs_irs, -p.pl_exp_bs_irs) *
          std::pow(p.dist_irs_far, -p.pl_exp_irs_far);
    d.b = static_cast<double>(p.n_elements) * (1.0 - d.xi) * d.c;
    d.lambda = static_cast<double>(p.n_elements) * d.xi / (1.0 - d.xi);
    d.m_small = std::min(p.m_bs_irs, p.m_irs_far);
    d.m_large = std::max(p.m_bs_irs, p.m_irs_far);
    if (p.m_bs_irs != p.m_irs_far) {
        constexpr double pi = 3.14159265358979323846264338327950;
        double ms = d.m_small, ml = d.m_large;
        double lt = 0.5 * std::log(pi) + (ms - ml + 1.0) * std::log(4.0) +
                    ms * std::log(ms * ml) + ln_gamma(2.0 * ms) + ln_gamma(2.0 * ml - 2.0 * ms) -
                    ln_gamma(ms) - ln_gamma(ml) - ln_gamma(ml - ms + 0.5);
        d.tail_coeff = std::exp(lt);
        d.has_tail_coeff = true;
    } else {
        // small-gain tail law undefined for equal shapes; callers must check
        d.tail_coeff = std::numeric_limits<double>::quiet_NaN();
        d.has_tail_coeff = false;
    }
    double rn = p.rate_near_bps / p.bandwidth_hz;
    double rf = p.rate_far_bps / p.bandwidth_hz;
    d.thr_near = std::exp2(rn) - 1.0;
    d.thr_far = std::exp2(rf) - 1.0;
    d.thr_near_oma = std::exp2(2.0 * rn) - 1.0;
    d.thr_far_oma = std::exp2(2.0 * rf) - 1.0;
    d.alpha_near = p.alpha_near;
    d.alpha_far = p.alpha_far;
    d.n_elements = p.n_elements;
    return d;
}

void SnrAxis::validate() const {
    if (points_db.empty()) throw std::invalid_argument("SnrAxis: empty grid");
    for (std::size_t i = 1; i < points_db.size(); ++i)
        if (!(points_db[i] > points_db[i - 1]))
            throw std::invalid_argument("SnrAxis: grid must be strictly increasing");
}

}  // namespace irsnoma
