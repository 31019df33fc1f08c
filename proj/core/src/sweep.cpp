#include "irsnoma/sweep.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "irsnoma/downlink.hpp"
#include "irsnoma/mcsim.hpp"
#include "irsnoma/specfun.hpp"
#include "irsnoma/uplink.hpp"

namespace irsnoma::sweep {
namespace {

// Shortest exact decimal representation; locale-independent and
// round-trip safe, so reruns of the same sweep are byte-identical.
std::string fmt(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : "NA"; }

constexpr int kNear = 0, kFar = 1;
constexpr int kOp = 0, kEr = 1;

struct Cell {
    std::optional<double> analytic;
    std::optional<double> asymptotic;
    std::optional<double> mc_mean;
    std::optional<double> mc_stderr;
    bool infeasible = false;
};

// One (scheme, SNR point) evaluation: cells indexed [near/far][op/er].
struct Block {
    Cell cell[2][2];
};

void put_mc(Cell& c, const mcsim::McEstimate& est) {
    c.mc_mean = est.mean;
    c.mc_stderr = est.std_error;
}

Block eval_dl_noma(double rho, const DerivedConstants& d, const cli::MetricSet& m,
                   const specfun::QuadratureRule& cg) {
    Block b;
    if (m.op) {
        const auto near = downlink::op_dl_noma_near(rho, d);
        const auto far = downlink::op_dl_noma_far(rho, d);
        b.cell[kNear][kOp].analytic = near.value;
        b.cell[kNear][kOp].infeasible = near.infeasible;
        b.cell[kFar][kOp].analytic = far.value;
        b.cell[kFar][kOp].infeasible = far.infeasible;
    }
    if (m.asymptote && d.has_tail_coeff) {
        const auto asym = downlink::op_dl_noma_asymptotic(rho, d);
        b.cell[kNear][kOp].asymptotic = asym.near_user.value;
        b.cell[kFar][kOp].asymptotic = asym.far_user.value;
        b.cell[kNear][kOp].infeasible |= asym.near_user.infeasible;
        b.cell[kFar][kOp].infeasible |= asym.far_user.infeasible;
    }
    if (m.er) {
        b.cell[kNear][kEr].analytic = downlink::er_dl_noma_near(rho, d);
        b.cell[kFar][kEr].analytic = downlink::er_dl_noma_far(rho, d, cg);
    }
    if (m.asymptote || m.ceiling) {
        const auto asym = downlink::er_dl_noma_asymptotic(rho, d);
        if (m.asymptote) b.cell[kNear][kEr].asymptotic = asym.near_user;
        // The far-user high-SNR form is the interference ceiling itself.
        b.cell[kFar][kEr].asymptotic = asym.far_user;
    }
    return b;
}

Block eval_dl_oma(double rho, const DerivedConstants& d, const cli::MetricSet& m,
                  const specfun::QuadratureRule& gl) {
    Block b;
    if (m.op) {
        const auto op = downlink::op_dl_oma(rho, d);
        b.cell[kNear][kOp].analytic = op.near_user.value;
        b.cell[kFar][kOp].analytic = op.far_user.value;
    }
    if (m.asymptote && d.has_tail_coeff) {
        const auto asym = downlink::op_dl_oma_asymptotic(rho, d);
        b.cell[kNear][kOp].asymptotic = asym.near_user.value;
        b.cell[kFar][kOp].asymptotic = asym.far_user.value;
    }
    if (m.er) {
        const auto er = downlink::er_dl_oma(rho, d, gl);
        b.cell[kNear][kEr].analytic = er.near_user;
        b.cell[kFar][kEr].analytic = er.far_user;
    }
    if (m.asymptote) {
        const auto asym = downlink::er_dl_oma_asymptotic(rho, d);
        b.cell[kNear][kEr].asymptotic = asym.near_user;
        b.cell[kFar][kEr].asymptotic = asym.far_user;
    }
    return b;
}

Block eval_ul_noma(double rho_prime, const DerivedConstants& d, const cli::MetricSet& m,
                   const specfun::QuadratureRule& gl, const uplink::UlSeriesTerms& terms) {
    Block b;
    if (m.op) {
        const auto op = uplink::op_ul_noma(rho_prime, d, terms);
        b.cell[kNear][kOp].analytic = op.near_user.value;
        b.cell[kFar][kOp].analytic = op.far_user.value;
    }
    if (m.asymptote || m.floor) {
        // Both uplink outages share one SNR-independent floor: that floor is
        // the entire high-SNR story (diversity orders vanish).
        const double floor = uplink::op_ul_floor(d, terms);
        b.cell[kNear][kOp].asymptotic = floor;
        b.cell[kFar][kOp].asymptotic = floor;
    }
    if (m.er) {
        b.cell[kNear][kEr].analytic = uplink::er_ul_noma_near(rho_prime, d, gl);
        b.cell[kFar][kEr].analytic = uplink::er_ul_noma_far(rho_prime, d, gl);
    }
    if (m.asymptote || m.ceiling) {
        b.cell[kNear][kEr].asymptotic = uplink::er_ul_noma_near_ceiling(d, gl);
    }
    if (m.asymptote) {
        b.cell[kFar][kEr].asymptotic = uplink::er_ul_noma_far_asymptote(rho_prime, d);
    }
    return b;
}

Block eval_ul_oma(double rho_prime, const DerivedConstants& d, const cli::MetricSet& m,
                  const specfun::QuadratureRule& gl) {
    // Uplink OMA reuses the downlink OMA forms at the user-side SNR; call
    // them piecewise so the tail-law guard can skip just the asymptotes.
    Block b;
    if (m.op) {
        const auto op = downlink::op_dl_oma(rho_prime, d);
        b.cell[kNear][kOp].analytic = op.near_user.value;
        b.cell[kFar][kOp].analytic = op.far_user.value;
    }
    if (m.asymptote && d.has_tail_coeff) {
        const auto asym = downlink::op_dl_oma_asymptotic(rho_prime, d);
        b.cell[kNear][kOp].asymptotic = asym.near_user.value;
        b.cell[kFar][kOp].asymptotic = asym.far_user.value;
    }
    if (m.er) {
        const auto er = downlink::er_dl_oma(rho_prime, d, gl);
        b.cell[kNear][kEr].analytic = er.near_user;
        b.cell[kFar][kEr].analytic = er.far_user;
    }
    if (m.asymptote) {
        const auto asym = downlink::er_dl_oma_asymptotic(rho_prime, d);
        b.cell[kNear][kEr].asymptotic = asym.near_user;
        b.cell[kFar][kEr].asymptotic = asym.far_user;
    }
    return b;
}

void fill_mc_dl(Block& b, const mcsim::DlMetrics& r) {
    put_mc(b.cell[kNear][kOp], r.op_near);
    put_mc(b.cell[kFar][kOp], r.op_far);
    put_mc(b.cell[kNear][kEr], r.er_near);
    put_mc(b.cell[kFar][kEr], r.er_far);
}

void fill_mc_ul(Block& b, const mcsim::UlMetrics& r) {
    put_mc(b.cell[kNear][kOp], r.op_near);
    put_mc(b.cell[kFar][kOp], r.op_far);
    put_mc(b.cell[kNear][kEr], r.er_near);
    put_mc(b.cell[kFar][kEr], r.er_far);
}

void fill_mc_fdr(Block& b, const mcsim::FdrMetrics& r) {
    put_mc(b.cell[kNear][kOp], r.op_near);
    put_mc(b.cell[kFar][kOp], r.op_far);
    put_mc(b.cell[kNear][kEr], r.er_near);
    put_mc(b.cell[kFar][kEr], r.er_far);
}

}  // namespace

SweepResult run_sweep(const cli::AppConfig& cfg) {
    cfg.params.validate();
    cfg.sweep.validate();
    const auto& spec = cfg.sweep;
    const DerivedConstants d = derive(cfg.params);

    const bool want_op = spec.metrics.op || spec.metrics.asymptote || spec.metrics.floor;
    const bool want_er = spec.metrics.er || spec.metrics.asymptote || spec.metrics.ceiling;

    const auto cg = specfun::make_chebyshev_gauss(spec.quad_order);
    const auto gl = specfun::make_gauss_laguerre(spec.quad_order);
    const auto ul_terms = uplink::ul_series_terms(d);

    const bool is_dl = spec.direction == Direction::Downlink;
    const std::string dir_name = cli::to_string(spec.direction);

    SweepResult out;
    for (double snr_db : spec.snr_grid.points_db) {
        const double rho = db_to_linear(snr_db);
        for (cli::SweepScheme sch : spec.schemes) {
            Block b;
            switch (sch) {
                case cli::SweepScheme::Noma:
                    b = is_dl ? eval_dl_noma(rho, d, spec.metrics, cg)
                              : eval_ul_noma(rho, d, spec.metrics, gl, ul_terms);
                    if (spec.mc) {
                        if (is_dl) fill_mc_dl(b, mcsim::simulate_dl(cfg.params, Scheme::Noma,
                                                                    rho, *spec.mc));
                        else fill_mc_ul(b, mcsim::simulate_ul(cfg.params, Scheme::Noma, rho,
                                                              *spec.mc));
                    }
                    break;
                case cli::SweepScheme::Oma:
                    b = is_dl ? eval_dl_oma(rho, d, spec.metrics, gl)
                              : eval_ul_oma(rho, d, spec.metrics, gl);
                    if (spec.mc) {
                        if (is_dl) fill_mc_dl(b, mcsim::simulate_dl(cfg.params, Scheme::Oma,
                                                                    rho, *spec.mc));
                        else fill_mc_ul(b, mcsim::simulate_ul(cfg.params, Scheme::Oma, rho,
                                                              *spec.mc));
                    }
                    break;
                case cli::SweepScheme::Fdr:
                    // No closed form: Monte Carlo columns only (mc presence is
                    // enforced by SweepSpec::validate).
                    fill_mc_fdr(b, mcsim::simulate_fdr(cfg.params, spec.fdr, spec.direction,
                                                       rho, *spec.mc));
                    break;
            }

            const char* scheme_name = cli::to_string(sch);
            for (int user = kNear; user <= kFar; ++user) {
                for (int metric = kOp; metric <= kEr; ++metric) {
                    if (metric == kOp && !want_op) continue;
                    if (metric == kEr && !want_er) continue;
                    const Cell& c = b.cell[user][metric];
                    MetricPoint p;
                    p.snr_db = snr_db;
                    p.scheme = scheme_name;
                    p.direction = dir_name;
                    p.user = user == kNear ? "near" : "far";
                    p.metric = metric == kOp ? "op" : "er";
                    p.analytic = c.analytic;
                    p.asymptotic = c.asymptotic;
                    p.mc_mean = c.mc_mean;
                    p.mc_stderr = c.mc_stderr;
                    p.infeasible = c.infeasible;
                    out.points.push_back(std::move(p));
                }
            }
        }
    }
    return out;
}

std::string to_csv(const SweepResult& result) {
    std::string out =
        "snr_db,scheme,direction,user,metric,analytic,asymptotic,mc_mean,mc_stderr,infeasible\n";
    for (const auto& p : result.points) {
        out += fmt(p.snr_db);
        out += ',';
        out += p.scheme;
        out += ',';
        out += p.direction;
        out += ',';
        out += p.user;
        out += ',';
        out += p.metric;
        out += ',';
        out += fmt(p.analytic);
        out += ',';
        out += fmt(p.asymptotic);
        out += ',';
        out += fmt(p.mc_mean);
        out += ',';
        out += fmt(p.mc_stderr);
        out += ',';
        out += p.infeasible ? '1' : '0';
        out += '\n';
    }
    return out;
}

std::string to_json(const SweepResult& result) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& p : result.points) {
        nlohmann::json row;
        row["snr_db"] = p.snr_db;
        row["scheme"] = p.scheme;
        row["direction"] = p.direction;
        row["user"] = p.user;
        row["metric"] = p.metric;
        row["analytic"] = p.analytic ? nlohmann::json(*p.analytic) : nlohmann::json(nullptr);
        row["asymptotic"] = p.asymptotic ? nlohmann::json(*p.asymptotic) : nlohmann::json(nullptr);
        row["mc_mean"] = p.mc_mean ? nlohmann::json(*p.mc_mean) : nlohmann::json(nullptr);
        row["mc_stderr"] = p.mc_stderr ? nlohmann::json(*p.mc_stderr) : nlohmann::json(nullptr);
        row["infeasible"] = p.infeasible;
        rows.push_back(std::move(row));
    }
    return rows.dump(2) + "\n";
}

std::vector<std::string> write_outputs(const SweepResult& result, const std::string& output_base) {
    const std::string csv_path = output_base + ".csv";
    const std::string json_path = output_base + ".json";
    {
        std::ofstream f(csv_path, std::ios::binary);
        f << to_csv(result);
        if (!f) throw std::runtime_error("sweep: cannot write " + csv_path);
    }
    {
        std::ofstream f(json_path, std::ios::binary);
        f << to_json(result);
        if (!f) throw std::runtime_error("sweep: cannot write " + json_path);
    }
    return {csv_path, json_path};
}

std::string render_table(const SystemParams& params, std::size_t quad_order) {
    params.validate();
    if (quad_order == 0) throw std::invalid_argument("render_table: quad_order must be >= 1");
    const DerivedConstants d = derive(params);
    const auto gl = specfun::make_gauss_laguerre(quad_order);

    const auto div_dl = downlink::diversity_dl(d, Scheme::Noma);
    const auto div_ul = uplink::diversity_ul_noma();
    const auto sl_noma = downlink::slopes_dl(Scheme::Noma);
    const auto sl_oma = downlink::slopes_dl(Scheme::Oma);
    const auto sl_ul = uplink::slopes_ul_noma();

    std::string out;
    char buf[256];
    auto line = [&](const char* fmt_str, auto... args) {
        if constexpr (sizeof...(args) == 0) {
            out += fmt_str;
        } else {
            std::snprintf(buf, sizeof buf, fmt_str, args...);
            out += buf;
        }
        out += '\n';
    };

    line("derived constants");
    line("  direct-link gain a           = %.10g", d.a);
    line("  cascade gain b               = %.10g", d.b);
    line("  per-cascade gain c           = %.10g", d.c);
    line("  mean-product factor xi       = %.10g", d.xi);
    line("  noncentrality lambda         = %.10g", d.lambda);
    line("  hop shapes (small, large)    = (%g, %g)", d.m_small, d.m_large);
    line("  reflecting elements K        = %zu", d.n_elements);
    out += '\n';
    line("%-16s %-24s %s", "scheme", "diversity (near, far)", "rate slope (near, far)");
    line("%-16s (%g, %g)%*s(%g, %g)", "downlink NOMA", div_dl.near_user, div_dl.far_user, 14, "",
         sl_noma.near_user, sl_noma.far_user);
    line("%-16s (%g, %g)%*s(%g, %g)", "downlink OMA", div_dl.near_user, div_dl.far_user, 14, "",
         sl_oma.near_user, sl_oma.far_user);
    line("%-16s (%g, %g)%*s(%g, %g)", "uplink NOMA", div_ul.near_user, div_ul.far_user, 16, "",
         sl_ul.near_user, sl_ul.far_user);
    out += '\n';
    line("high-SNR levels");
    line("  uplink NOMA outage floor        = %.10g", uplink::op_ul_floor(d));
    line("  uplink NOMA near-rate ceiling   = %.10g bits/s/Hz",
         uplink::er_ul_noma_near_ceiling(d, gl));
    line("  downlink NOMA far-rate ceiling  = %.10g bits/s/Hz",
         downlink::er_dl_noma_far_ceiling(d));
    if (!d.has_tail_coeff) {
        line("  note: equal hop shapes; small-gain outage asymptote unavailable");
    }
    return out;
}

}  // namespace irsnoma::sweep
