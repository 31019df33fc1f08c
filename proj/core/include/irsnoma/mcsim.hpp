#pragma once

#include <cstdint>
#include <vector>

#include "irsnoma/model.hpp"

namespace irsnoma::mcsim {

// Reproducibility contract: for fixed (seed, trials) the estimates are
// bit-identical for ANY worker count — per-trial random streams are derived
// from (seed, trial index) and block partials are reduced in a fixed order.
struct McConfig {
    std::uint64_t trials = 1000000;
    std::uint64_t seed = 1;
    unsigned workers = 1;     // 0 = resolve from environment / hardware
    bool antithetic = false;  // odd trials mirror the preceding even trial's draws
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;
};

// Full-duplex decode-and-forward relay baseline, deployed at the surface's
// position. The residual self-interference after imperfect cancellation is
// Nakagami-faded with shape si_m and average power si_residual_gain relative
// to the relay transmit power.
struct FdrParams {
    double power_split = 0.5;       // fraction of the budget at each of the two transmitters
    double si_m = 1.0;              // Nakagami shape of the self-interference channel
    double si_residual_gain = 1e-3; // residual loop gain after cancellation
};

// Counter-based per-trial random stream (splitmix64 core). Cheap to
// construct: one per trial.
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream, bool mirror = false);

    double uniform();  // (0, 1]
    double normal();   // standard normal, Box-Muller pair cache
    // Gamma(shape, 1) variate, shape >= 0.5 (Marsaglia-Tsang squeeze).
    double gamma(double shape);

private:
    std::uint64_t state_;
    double cached_normal_ = 0.0;
    bool has_cached_ = false;
    bool mirror_ = false;
};

// Nakagami-m amplitude with unit mean square: sqrt(Gamma(m, 1/m)).
double sample_nakagami(double m, Rng& rng);

unsigned resolve_workers(unsigned requested);

struct DlMetrics {
    McEstimate op_near, op_far;
    McEstimate er_near, er_far;
    // Far-user rate with the near-user decode constraint kept inside the min;
    // measures how much the interference-only far SINR overstates the rate.
    McEstimate er_far_joint;
};

struct UlMetrics {
    McEstimate op_near, op_far;
    McEstimate er_near, er_far;
};

struct FdrMetrics {
    McEstimate op_near, op_far;
    McEstimate er_near, er_far;
};

DlMetrics simulate_dl(const SystemParams& p, Scheme scheme, double rho, const McConfig& cfg);
UlMetrics simulate_ul(const SystemParams& p, Scheme scheme, double rho_prime,
                      const McConfig& cfg);
FdrMetrics simulate_fdr(const SystemParams& p, const FdrParams& fdr, Direction dir,
                        double rho, const McConfig& cfg);

// Sampled law of the normalized squared cascade gain
// X = (sum_k |G_k||g_k|)^2 / (K(1-xi)). `sorted_x` enables exact empirical
// CDF / Kolmogorov-Smirnov queries; the histogram covers [0, max sample].
struct EmpiricalLaw {
    std::vector<double> sorted_x;
    std::vector<double> bin_edges;    // bins+1 edges
    std::vector<double> bin_density;  // normalized to integrate to 1
    double mean = 0.0;
    double std_error = 0.0;  // of the mean
    double z_scale = 0.0;    // K(1-xi): Z = sqrt(X * z_scale)

    double cdf(double x) const;  // exact empirical CDF
};

EmpiricalLaw empirical_cascade_law(double m_bs_irs, double m_irs_far, std::size_t n_elements,
                                   const McConfig& cfg, std::size_t bins = 200);

}  // namespace irsnoma::mcsim
