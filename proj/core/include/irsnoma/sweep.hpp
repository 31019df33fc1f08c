#pragma once

#include <optional>
#include <string>
#include <vector>

#include "irsnoma/config.hpp"
#include "irsnoma/model.hpp"

namespace irsnoma::sweep {

/// One evaluated metric at one SNR point for one scheme/user combination.
///
/// Absent columns (e.g. no Monte Carlo requested, or no closed form exists
/// for the scheme) are left disengaged and serialize as "NA" in CSV / null
/// in JSON.
struct MetricPoint {
    double snr_db = 0.0;
    std::string scheme;     ///< "noma", "oma", or "fdr"
    std::string direction;  ///< "downlink" or "uplink"
    std::string user;       ///< "near" or "far"
    std::string metric;     ///< "op" or "er"
    std::optional<double> analytic;
    std::optional<double> asymptotic;
    std::optional<double> mc_mean;
    std::optional<double> mc_stderr;
    bool infeasible = false;
};

/// Result of a sweep: the evaluated grid plus the column layout used for
/// serialization.
struct SweepResult {
    std::vector<MetricPoint> points;
};

/// Evaluates every requested metric over the SNR grid.
///
/// Rows are generated in a fixed order: SNR ascending, then scheme in
/// canonical order (NOMA, OMA, FDR), then user (near, far), then metric
/// (outage before rate).  Monte Carlo columns are filled only when the sweep
/// configuration carries a Monte Carlo block; FDR rows are Monte Carlo only.
/// Outage asymptote cells stay absent when the two hop shapes coincide
/// (the high-SNR outage law needs the small-gain tail law, which requires
/// distinct shapes).
SweepResult run_sweep(const cli::AppConfig& cfg);

/// Serializes a sweep to CSV with a fixed header:
///   snr_db,scheme,direction,user,metric,analytic,asymptotic,mc_mean,mc_stderr,infeasible
/// Values are printed with %.17g so a round-trip preserves every bit;
/// absent values print as NA and the infeasible flag prints as 0/1.
std::string to_csv(const SweepResult& result);

/// Serializes a sweep to a JSON array of row objects mirroring the CSV
/// columns; absent values serialize as null.
std::string to_json(const SweepResult& result);

/// Writes both serializations next to each other as <base>.csv and
/// <base>.json.  Returns the two paths written.
std::vector<std::string> write_outputs(const SweepResult& result, const std::string& output_base);

/// Renders a plain-text summary table of the derived constants, diversity
/// orders, high-SNR slopes, and uplink floor/ceiling levels for a parameter
/// set.  Quadrature order controls the rate integrals used for the ceiling
/// values.
std::string render_table(const SystemParams& params, std::size_t quad_order = 100);

}  // namespace irsnoma::sweep
