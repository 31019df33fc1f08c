#pragma once

#include "irsnoma/model.hpp"
#include "irsnoma/specfun.hpp"

namespace irsnoma::downlink {

// SIC decode thresholds of the NOMA pair, normalized by transmit SNR.
// `feasible` is false when the power split cannot meet the far-user target
// (alpha_far <= alpha_near * thr_far), in which case the far SINR saturates
// below threshold and every outage probability is 1.
struct DlNomaThresholds {
    double rho_tilde_m = 0.0;  // near user: max of its two decode requirements
    double rho_tilde = 0.0;    // far user: cascade-power requirement
    bool feasible = false;
};

DlNomaThresholds dl_noma_thresholds(double rho, const DerivedConstants& d);

// Probability plus the power-split feasibility flag (flag true => value 1).
struct Outage {
    double value = 1.0;
    bool infeasible = false;
};

struct OutagePair {
    Outage near_user;
    Outage far_user;
};

struct UserPair {
    double near_user = 0.0;
    double far_user = 0.0;
};

// --- NOMA outage -----------------------------------------------------------
Outage op_dl_noma_near(double rho, const DerivedConstants& d);
Outage op_dl_noma_far(double rho, const DerivedConstants& d);
// High-SNR forms: near ~ rho_tilde_m; far ~ power law rho^{-m_small*K}.
// The far form needs the small-gain tail law (distinct hop shapes).
OutagePair op_dl_noma_asymptotic(double rho, const DerivedConstants& d);

// Diversity orders (identical for NOMA and OMA): (1, m_small*K).
UserPair diversity_dl(const DerivedConstants& d, Scheme scheme);

// --- NOMA ergodic rate, bits/s/Hz ------------------------------------------
double er_dl_noma_near(double rho, const DerivedConstants& d);
// Far-user rate via the Chebyshev-Gauss rule (kind must match).
double er_dl_noma_far(double rho, const DerivedConstants& d,
                      const specfun::QuadratureRule& rule);
// Interference-limited ceiling log2(1 + alpha_far/alpha_near).
double er_dl_noma_far_ceiling(const DerivedConstants& d);
// High-SNR forms: near ~ log2(a*alpha_near*rho) - Ec/ln2; far = ceiling.
UserPair er_dl_noma_asymptotic(double rho, const DerivedConstants& d);

// --- OMA (half resource block each, full power) ----------------------------
OutagePair op_dl_oma(double rho, const DerivedConstants& d);
OutagePair op_dl_oma_asymptotic(double rho, const DerivedConstants& d);
// Rates via the Gauss-Laguerre rule for the far user; near is closed-form.
UserPair er_dl_oma(double rho, const DerivedConstants& d,
                   const specfun::QuadratureRule& rule);
UserPair er_dl_oma_asymptotic(double rho, const DerivedConstants& d);
// Concavity (Jensen) bound on the far-user OMA rate: 0.5*log2(1+b*rho*(1+lambda)).
double er_dl_oma_far_jensen_bound(double rho, const DerivedConstants& d);

// High-SNR rate slopes: NOMA (1, 0); OMA (0.5, 0.5).
UserPair slopes_dl(Scheme scheme);

}  // namespace irsnoma::downlink
