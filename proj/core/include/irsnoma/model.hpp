#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace irsnoma {

// Physical inputs of the two-user link: a direct BS to near-user path and a
// BS to surface to far-user cascade. Defaults reproduce the reference setup
// used throughout the test corpus.
struct SystemParams {
    double dist_near = 10.0;      // BS to near user, meters
    double dist_bs_irs = 40.0;    // BS to surface, meters
    double dist_irs_far = 10.0;   // surface to far user, meters
    double pl_exp_near = 3.5;     // path-loss exponent of the direct link
    double pl_exp_bs_irs = 2.5;
    double pl_exp_irs_far = 2.5;
    double m_bs_irs = 3.0;        // Nakagami shape, BS-surface hop
    double m_irs_far = 1.5;       // Nakagami shape, surface-user hop
    std::size_t n_elements = 10;  // reflecting elements K
    double amp_reflect = 0.9;     // amplitude-reflection coefficient
    double alpha_near = 0.1;      // power split, near user
    double alpha_far = 0.9;       // power split, far user
    double rate_near_bps = 1.0e5; // fixed-rate targets, bits/s
    double rate_far_bps = 1.0e5;
    double bandwidth_hz = 1.0e6;

    // throws std::invalid_argument naming the offending field
    void validate() const;
};

// Mean amplitude-product factor of one reflecting element:
// (E|G||g|)^2 / E(|G|^2|g|^2) for unit-power Nakagami shapes. In (0,1).
double xi(double m_bs_irs, double m_irs_far);

// Constants every closed form shares; pure function of SystemParams.
struct DerivedConstants {
    double a = 0;   // direct-link gain d_near^{-pl}
    double b = 0;   // normalized cascade gain K beta^2 (1-xi) prod d^{-pl}
    double c = 0;   // per-cascade gain beta^2 prod d^{-pl} (b without K(1-xi))
    double xi = 0;
    double lambda = 0;   // noncentrality K xi / (1 - xi)
    double m_small = 0;  // min of the two Nakagami shapes
    double m_large = 0;
    double tail_coeff = 0;        // per-element small-gain law coefficient
    bool has_tail_coeff = false;  // false when the two shapes coincide
    double thr_near = 0;     // 2^{R/B} - 1 rate thresholds
    double thr_far = 0;
    double thr_near_oma = 0; // 2^{2R/B} - 1 (half resource block)
    double thr_far_oma = 0;
    double alpha_near = 0;
    double alpha_far = 0;
    std::size_t n_elements = 0;
};

DerivedConstants derive(const SystemParams& p);

enum class Scheme { Noma, Oma };
enum class Direction { Downlink, Uplink };

enum class SnrAxisKind { DownlinkRho, UplinkRhoPrime };

struct SnrAxis {
    SnrAxisKind kind = SnrAxisKind::DownlinkRho;
    std::vector<double> points_db;

    void validate() const;  // nonempty, strictly increasing
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

}  // namespace irsnoma
