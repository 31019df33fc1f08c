#include "irsnoma/mcsim.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>
#include <utility>

namespace irsnoma::mcsim {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950;
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kBlockSize = 4096;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream, bool mirror)
    : state_(mix64(seed ^ mix64(stream + kGolden))), mirror_(mirror) {}

double Rng::uniform() {
    state_ += kGolden;
    const std::uint64_t z = mix64(state_);
    // (k + 1/2) * 2^-53 lies strictly inside (0,1) and mirrors exactly.
    const double u = (static_cast<double>(z >> 11) + 0.5) * 0x1.0p-53;
    return mirror_ ? 1.0 - u : u;
}

double Rng::normal() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_normal_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double th = 2.0 * kPi * u2;
    cached_normal_ = r * std::sin(th);
    has_cached_ = true;
    return r * std::cos(th);
}

double Rng::gamma(double shape) {
    if (shape < 1.0) {
        // boost through shape+1, then scale back by a uniform power
        const double u = uniform();
        return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    // Marsaglia-Tsang squeeze
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double sample_nakagami(double m, Rng& rng) {
    if (!(m >= 0.5)) throw std::domain_error("sample_nakagami: shape must be >= 0.5");
    return std::sqrt(rng.gamma(m) / m);
}

unsigned resolve_workers(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("IRSNOMA_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? hc : 1;
}

namespace {

// Runs `fn` once per trial with a per-trial random stream, accumulating value
// and squared-value sums. Block partials are reduced in index order, so the
// result is bit-identical for any worker count.
template <std::size_t N, typename Fn>
std::pair<std::array<double, N>, std::array<double, N>> run_trials(const McConfig& cfg,
                                                                   Fn&& fn) {
    if (cfg.trials < 1) throw std::invalid_argument("mc: trials must be >= 1");
    const unsigned workers = resolve_workers(cfg.workers);
    const std::uint64_t n_blocks = (cfg.trials + kBlockSize - 1) / kBlockSize;

    struct Partial {
        std::array<double, N> s{}, q{};
    };
    std::vector<Partial> parts(n_blocks);
    std::atomic<std::uint64_t> next{0};

    auto work = [&]() {
        std::array<double, N> v;
        for (;;) {
            const std::uint64_t b = next.fetch_add(1, std::memory_order_relaxed);
            if (b >= n_blocks) return;
            Partial loc;
            const std::uint64_t lo = b * kBlockSize;
            const std::uint64_t hi = std::min<std::uint64_t>(cfg.trials, lo + kBlockSize);
            for (std::uint64_t t = lo; t < hi; ++t) {
                const std::uint64_t stream = cfg.antithetic ? (t >> 1) : t;
                const bool mirror = cfg.antithetic && (t & 1ULL);
                Rng rng(cfg.seed, stream, mirror);
                v.fill(0.0);
                fn(rng, v);
                for (std::size_t i = 0; i < N; ++i) {
                    loc.s[i] += v[i];
                    loc.q[i] += v[i] * v[i];
                }
            }
            parts[b] = loc;
        }
    };

    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    std::array<double, N> s{}, q{};
    for (const auto& pt : parts)
        for (std::size_t i = 0; i < N; ++i) {
            s[i] += pt.s[i];
            q[i] += pt.q[i];
        }
    return {s, q};
}

McEstimate make_estimate(double s, double q, std::uint64_t n) {
    McEstimate e;
    e.trials = n;
    e.mean = s / static_cast<double>(n);
    double var = q / static_cast<double>(n) - e.mean * e.mean;
    var = std::max(0.0, var);
    if (n > 1) var *= static_cast<double>(n) / static_cast<double>(n - 1);
    e.std_error = std::sqrt(var / static_cast<double>(n));
    return e;
}

// Raw per-link quantities recomputed from first principles here so the
// simulator shares no derivation path with the closed forms it checks.
struct RawLink {
    double gain_direct;  // d_near^-pl
    double pl_cascade;   // beta^2 * d1^-pl1 * d2^-pl2
    double thr_near, thr_far;          // 2^{R/B} - 1
    double thr_near_oma, thr_far_oma;  // 2^{2R/B} - 1
};

RawLink raw_link(const SystemParams& p) {
    RawLink r;
    r.gain_direct = std::pow(p.dist_near, -p.pl_exp_near);
    r.pl_cascade = p.amp_reflect * p.amp_reflect * std::pow(p.dist_bs_irs, -p.pl_exp_bs_irs) *
                   std::pow(p.dist_irs_far, -p.pl_exp_irs_far);
    const double rn = p.rate_near_bps / p.bandwidth_hz;
    const double rf = p.rate_far_bps / p.bandwidth_hz;
    r.thr_near = std::exp2(rn) - 1.0;
    r.thr_far = std::exp2(rf) - 1.0;
    r.thr_near_oma = std::exp2(2.0 * rn) - 1.0;
    r.thr_far_oma = std::exp2(2.0 * rf) - 1.0;
    return r;
}

double rayleigh_power(Rng& rng) {
    const double n1 = rng.normal();
    const double n2 = rng.normal();
    return 0.5 * (n1 * n1 + n2 * n2);
}

double cascade_power(const SystemParams& p, const RawLink& r, Rng& rng) {
    double zsum = 0.0;
    for (std::size_t k = 0; k < p.n_elements; ++k)
        zsum += sample_nakagami(p.m_bs_irs, rng) * sample_nakagami(p.m_irs_far, rng);
    return r.pl_cascade * zsum * zsum;
}

}  // namespace

DlMetrics simulate_dl(const SystemParams& p, Scheme scheme, double rho, const McConfig& cfg) {
    p.validate();
    const RawLink r = raw_link(p);
    const double a1 = p.alpha_near;
    const double a2 = p.alpha_far;

    auto trial = [&](Rng& rng, std::array<double, 5>& v) {
        const double gd = r.gain_direct * rayleigh_power(rng);
        const double wc = cascade_power(p, r, rng);
        if (scheme == Scheme::Noma) {
            const double sinr_nf = a2 * rho * gd / (a1 * rho * gd + 1.0);
            const double snr_n = a1 * rho * gd;
            const double sinr_f = a2 * rho * wc / (a1 * rho * wc + 1.0);
            v[0] = !(sinr_nf >= r.thr_far && snr_n >= r.thr_near) ? 1.0 : 0.0;
            v[1] = sinr_f < r.thr_far ? 1.0 : 0.0;
            v[2] = std::log2(1.0 + snr_n);
            v[3] = std::log2(1.0 + sinr_f);
            v[4] = std::log2(1.0 + std::min(sinr_nf, sinr_f));
        } else {
            const double snr_n = rho * gd;
            const double snr_f = rho * wc;
            v[0] = snr_n < r.thr_near_oma ? 1.0 : 0.0;
            v[1] = snr_f < r.thr_far_oma ? 1.0 : 0.0;
            v[2] = 0.5 * std::log2(1.0 + snr_n);
            v[3] = 0.5 * std::log2(1.0 + snr_f);
            v[4] = v[3];
        }
    };

    const auto [s, q] = run_trials<5>(cfg, trial);
    DlMetrics m;
    m.op_near = make_estimate(s[0], q[0], cfg.trials);
    m.op_far = make_estimate(s[1], q[1], cfg.trials);
    m.er_near = make_estimate(s[2], q[2], cfg.trials);
    m.er_far = make_estimate(s[3], q[3], cfg.trials);
    m.er_far_joint = make_estimate(s[4], q[4], cfg.trials);
    return m;
}

UlMetrics simulate_ul(const SystemParams& p, Scheme scheme, double rho_prime,
                      const McConfig& cfg) {
    p.validate();
    const RawLink r = raw_link(p);

    auto trial = [&](Rng& rng, std::array<double, 4>& v) {
        const double gd = r.gain_direct * rayleigh_power(rng);
        const double wc = cascade_power(p, r, rng);
        if (scheme == Scheme::Noma) {
            // near decoded first against the far cascade, far after SIC
            const double sinr_n = rho_prime * gd / (rho_prime * wc + 1.0);
            const double snr_f = rho_prime * wc;
            v[0] = sinr_n < r.thr_near ? 1.0 : 0.0;
            v[1] = !(sinr_n >= r.thr_near && snr_f >= r.thr_far) ? 1.0 : 0.0;
            v[2] = std::log2(1.0 + sinr_n);
            v[3] = std::log2(1.0 + snr_f);
        } else {
            const double snr_n = rho_prime * gd;
            const double snr_f = rho_prime * wc;
            v[0] = snr_n < r.thr_near_oma ? 1.0 : 0.0;
            v[1] = snr_f < r.thr_far_oma ? 1.0 : 0.0;
            v[2] = 0.5 * std::log2(1.0 + snr_n);
            v[3] = 0.5 * std::log2(1.0 + snr_f);
        }
    };

    const auto [s, q] = run_trials<4>(cfg, trial);
    UlMetrics m;
    m.op_near = make_estimate(s[0], q[0], cfg.trials);
    m.op_far = make_estimate(s[1], q[1], cfg.trials);
    m.er_near = make_estimate(s[2], q[2], cfg.trials);
    m.er_far = make_estimate(s[3], q[3], cfg.trials);
    return m;
}

FdrMetrics simulate_fdr(const SystemParams& p, const FdrParams& fdr, Direction dir,
                        double rho, const McConfig& cfg) {
    p.validate();
    if (!(fdr.power_split > 0.0 && fdr.power_split < 1.0))
        throw std::invalid_argument("FdrParams: power_split must lie in (0,1)");
    if (!(fdr.si_residual_gain >= 0.0))
        throw std::invalid_argument("FdrParams: si_residual_gain must be >= 0");
    if (!(fdr.si_m >= 0.5)) throw std::invalid_argument("FdrParams: si_m must be >= 0.5");

    const RawLink r = raw_link(p);
    const double pl_hop_bs = std::pow(p.dist_bs_irs, -p.pl_exp_bs_irs);    // BS <-> relay
    const double pl_hop_user = std::pow(p.dist_irs_far, -p.pl_exp_irs_far);  // relay <-> far
    const double a1 = p.alpha_near;
    const double a2 = p.alpha_far;

    auto trial_dl = [&](Rng& rng, std::array<double, 4>& v) {
        // BS sends the superposed pair at split power; the relay decodes the
        // far symbol (near symbol + residual loop as interference) and
        // forwards it at split power.
        const double rho_r = fdr.power_split * rho;
        const double gd = r.gain_direct * rayleigh_power(rng);
        double amp = sample_nakagami(p.m_bs_irs, rng);
        const double g_hop1 = amp * amp * pl_hop_bs;
        amp = sample_nakagami(p.m_irs_far, rng);
        const double g_hop2 = amp * amp * pl_hop_user;
        amp = sample_nakagami(fdr.si_m, rng);
        const double si = fdr.si_residual_gain * rho_r * amp * amp;

        const double sinr_nf = a2 * rho_r * gd / (a1 * rho_r * gd + 1.0);
        const double snr_n = a1 * rho_r * gd;
        const double sinr_hop1 = a2 * rho_r * g_hop1 / (a1 * rho_r * g_hop1 + si + 1.0);
        const double snr_hop2 = rho_r * g_hop2;
        const double sinr_far = std::min(sinr_hop1, snr_hop2);

        v[0] = !(sinr_nf >= r.thr_far && snr_n >= r.thr_near) ? 1.0 : 0.0;
        v[1] = sinr_far < r.thr_far ? 1.0 : 0.0;
        v[2] = std::log2(1.0 + snr_n);
        v[3] = std::log2(1.0 + sinr_far);
    };

    auto trial_ul = [&](Rng& rng, std::array<double, 4>& v) {
        // Far user reaches the relay at split power (residual loop at the
        // relay); the relay forwards at split power. The BS decodes the near
        // user first, treating the relay signal as interference.
        const double rho_r = fdr.power_split * rho;
        const double gd = r.gain_direct * rayleigh_power(rng);
        double amp = sample_nakagami(p.m_irs_far, rng);
        const double g_hop1 = amp * amp * pl_hop_user;  // far -> relay
        amp = sample_nakagami(p.m_bs_irs, rng);
        const double g_hop2 = amp * amp * pl_hop_bs;  // relay -> BS
        amp = sample_nakagami(fdr.si_m, rng);
        const double si = fdr.si_residual_gain * rho_r * amp * amp;

        const double sinr_hop1 = rho_r * g_hop1 / (si + 1.0);
        const double snr_relay_bs = rho_r * g_hop2;
        const double sinr_n = rho * gd / (snr_relay_bs + 1.0);
        const double sinr_far = std::min(sinr_hop1, snr_relay_bs);

        v[0] = sinr_n < r.thr_near ? 1.0 : 0.0;
        v[1] = !(sinr_hop1 >= r.thr_far && sinr_n >= r.thr_near && snr_relay_bs >= r.thr_far)
                   ? 1.0
                   : 0.0;
        v[2] = std::log2(1.0 + sinr_n);
        v[3] = std::log2(1.0 + sinr_far);
    };

    std::pair<std::array<double, 4>, std::array<double, 4>> sums =
        dir == Direction::Downlink ? run_trials<4>(cfg, trial_dl)
                                   : run_trials<4>(cfg, trial_ul);
    const auto& [s, q] = sums;
    FdrMetrics m;
    m.op_near = make_estimate(s[0], q[0], cfg.trials);
    m.op_far = make_estimate(s[1], q[1], cfg.trials);
    m.er_near = make_estimate(s[2], q[2], cfg.trials);
    m.er_far = make_estimate(s[3], q[3], cfg.trials);
    return m;
}

double EmpiricalLaw::cdf(double x) const {
    const auto it = std::upper_bound(sorted_x.begin(), sorted_x.end(), x);
    return static_cast<double>(it - sorted_x.begin()) / static_cast<double>(sorted_x.size());
}

EmpiricalLaw empirical_cascade_law(double m_bs_irs, double m_irs_far, std::size_t n_elements,
                                   const McConfig& cfg, std::size_t bins) {
    if (!(m_bs_irs >= 0.5) || !(m_irs_far >= 0.5))
        throw std::domain_error("empirical_cascade_law: shapes must be >= 0.5");
    if (n_elements < 1 || bins < 1)
        throw std::invalid_argument("empirical_cascade_law: need elements >= 1, bins >= 1");
    if (cfg.trials < 2) throw std::invalid_argument("empirical_cascade_law: trials must be >= 2");

    // Normalization constant recomputed locally (std::lgamma) to keep this
    // oracle independent of the analytic modules.
    const double lg = std::lgamma(m_bs_irs + 0.5) - std::lgamma(m_bs_irs) +
                      std::lgamma(m_irs_far + 0.5) - std::lgamma(m_irs_far);
    const double xi_loc =
        std::exp(2.0 * lg - std::log(m_bs_irs) - std::log(m_irs_far));
    const double z_scale = static_cast<double>(n_elements) * (1.0 - xi_loc);

    EmpiricalLaw law;
    law.z_scale = z_scale;
    law.sorted_x.assign(cfg.trials, 0.0);

    const unsigned workers = resolve_workers(cfg.workers);
    const std::uint64_t n_blocks = (cfg.trials + kBlockSize - 1) / kBlockSize;
    std::atomic<std::uint64_t> next{0};
    auto work = [&]() {
        for (;;) {
            const std::uint64_t b = next.fetch_add(1, std::memory_order_relaxed);
            if (b >= n_blocks) return;
            const std::uint64_t lo = b * kBlockSize;
            const std::uint64_t hi = std::min<std::uint64_t>(cfg.trials, lo + kBlockSize);
            for (std::uint64_t t = lo; t < hi; ++t) {
                const std::uint64_t stream = cfg.antithetic ? (t >> 1) : t;
                const bool mirror = cfg.antithetic && (t & 1ULL);
                Rng rng(cfg.seed, stream, mirror);
                double zsum = 0.0;
                for (std::size_t k = 0; k < n_elements; ++k)
                    zsum += sample_nakagami(m_bs_irs, rng) * sample_nakagami(m_irs_far, rng);
                law.sorted_x[t] = zsum * zsum / z_scale;
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    double s = 0.0, q = 0.0;
    for (double x : law.sorted_x) {
        s += x;
        q += x * x;
    }
    const McEstimate est = make_estimate(s, q, cfg.trials);
    law.mean = est.mean;
    law.std_error = est.std_error;

    std::sort(law.sorted_x.begin(), law.sorted_x.end());

    const double xmax = law.sorted_x.back();
    const double width = xmax / static_cast<double>(bins);
    law.bin_edges.resize(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i)
        law.bin_edges[i] = width * static_cast<double>(i);
    law.bin_density.assign(bins, 0.0);
    for (double x : law.sorted_x) {
        std::size_t idx = width > 0 ? static_cast<std::size_t>(x / width) : 0;
        if (idx >= bins) idx = bins - 1;
        law.bin_density[idx] += 1.0;
    }
    const double norm = 1.0 / (static_cast<double>(cfg.trials) * width);
    for (double& d : law.bin_density) d *= norm;
    return law;
}

}  // namespace irsnoma::mcsim
