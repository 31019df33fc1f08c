#pragma once

#include "irsnoma/downlink.hpp"
#include "irsnoma/model.hpp"
#include "irsnoma/specfun.hpp"

namespace irsnoma::uplink {

using downlink::Outage;
using downlink::OutagePair;
using downlink::UserPair;

// Recurring quantities of the uplink outage series. The terms form a
// Poisson-like sequence with effective rate `poisson_scale`; `max_terms`
// is the index bound from the shared truncation policy.
struct UlSeriesTerms {
    double base = 0.0;           // b*thr_near/a + 1/2, the shared denominator
    double poisson_scale = 0.0;  // lambda / (4*base)
    std::size_t max_terms = 0;
};

UlSeriesTerms ul_series_terms(const DerivedConstants& d);

// Outage of the NOMA pair: the near user is decoded first against the
// far-user cascade as interference; the far user additionally needs that
// decode to succeed. near <= far pointwise, and both converge to the same
// rho-independent floor. Flags are always false (no power split to violate).
OutagePair op_ul_noma(double rho_prime, const DerivedConstants& d);
OutagePair op_ul_noma(double rho_prime, const DerivedConstants& d,
                      const UlSeriesTerms& terms);

// Shared high-SNR outage floor (independent of rho_prime).
double op_ul_floor(const DerivedConstants& d);
double op_ul_floor(const DerivedConstants& d, const UlSeriesTerms& terms);

// Both uplink NOMA diversity orders vanish (floor-limited): (0, 0).
UserPair diversity_ul_noma();

// Near-user rate (interference-limited; Gauss-Laguerre rule) and its
// rho_prime -> infinity ceiling.
double er_ul_noma_near(double rho_prime, const DerivedConstants& d,
                       const specfun::QuadratureRule& rule);
double er_ul_noma_near_ceiling(const DerivedConstants& d,
                               const specfun::QuadratureRule& rule);

// Far-user rate after SIC (Gauss-Laguerre rule), its high-SNR asymptote
// log2(b*rho'*(1+lambda)), and the concavity (Jensen) upper bound.
double er_ul_noma_far(double rho_prime, const DerivedConstants& d,
                      const specfun::QuadratureRule& rule);
double er_ul_noma_far_asymptote(double rho_prime, const DerivedConstants& d);
double er_ul_noma_far_jensen_bound(double rho_prime, const DerivedConstants& d);

// High-SNR rate slopes: (0, 1).
UserPair slopes_ul_noma();

// Uplink OMA equals downlink OMA evaluated at the user-side transmit SNR.
// The OP asymptote needs distinct hop shapes (small-gain tail law).
struct UlOmaMetrics {
    OutagePair op;
    OutagePair op_asymptotic;
    UserPair er;
    UserPair er_asymptotic;
};

UlOmaMetrics ul_oma(double rho_prime, const DerivedConstants& d,
                    const specfun::QuadratureRule& gl_rule);

}  // namespace irsnoma::uplink
