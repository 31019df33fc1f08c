#pragma once

#include <cstddef>
#include <vector>

#include "irsnoma/model.hpp"

namespace irsnoma::chanstats {

// Law of the normalized squared cascade gain X = (sum_k |G_k||g_k|)^2 / (K(1-xi))
// under the central-limit approximation: noncentral chi-square, one degree of
// freedom, noncentrality `lambda`.
struct CascadeLawCLT {
    double lambda = 0.0;
    static constexpr int dof = 1;
};

// Exact small-argument law of the raw cascade gain Z = sum_k |G_k||g_k|,
// valid as z -> 0+. Defined only for distinct hop shapes.
struct NearZeroLaw {
    double m_small = 0.0;      // min of the two hop shapes
    double m_large = 0.0;      // max of the two hop shapes
    double tail_coeff = 0.0;   // per-element small-gain coefficient
    int n_elements = 0;        // number of reflecting elements K
};

CascadeLawCLT clt_law(const DerivedConstants& d);
// Throws std::domain_error when the two hop shapes coincide (no tail law).
NearZeroLaw near_zero_law(const DerivedConstants& d);

// Reflection phases that co-align every cascade term to the common angle
// theta_tilde: theta_k = theta_tilde - arg_bs_irs[k] - arg_irs_user[k],
// wrapped to [0, 2*pi). With these phases the cascaded sum has magnitude
// sum_k |G_k||g_k| regardless of theta_tilde.
std::vector<double> optimal_phases(const std::vector<double>& arg_bs_irs,
                                   const std::vector<double>& arg_irs_user,
                                   double theta_tilde = 0.0);

// Density of X. Returns +infinity at x = 0 (integrable endpoint singularity),
// 0 for x < 0.
double clt_pdf_x(double x, const CascadeLawCLT& law);

// Distribution function of X via the Marcum-Q closed form. 0 at x <= 0.
double clt_cdf_x(double x, const CascadeLawCLT& law);

// Independent series evaluation of the same distribution function (Poisson
// mixture of central chi-square laws), kept as a cross-check oracle for the
// closed form. `max_terms` = 0 selects the built-in truncation policy.
double clt_cdf_x_series(double x, const CascadeLawCLT& law, std::size_t max_terms = 0);

// Poisson-weight truncation policy shared by every series in the library:
// index bound max(rate + 12*sqrt(rate), 40), with early exit once a term
// drops below 1e-16 of the accumulated sum.
std::size_t poisson_term_count(double rate);

// Small-z density/distribution of Z (z -> 0+ approximations; cdf(0) = 0).
double nearzero_pdf_z(double z, const NearZeroLaw& law);
double nearzero_cdf_z(double z, const NearZeroLaw& law);
// Leading-order term of the small-z distribution: coeff^K z^(2*m_small*K) / (2*m_small*K)!.
double nearzero_cdf_leading(double z, const NearZeroLaw& law);

}  // namespace irsnoma::chanstats
