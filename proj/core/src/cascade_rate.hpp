#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "irsnoma/specfun.hpp"

// Internal helpers shared by the downlink and uplink rate evaluators.
namespace irsnoma::detail {

inline void require_rule(const specfun::QuadratureRule& rule, specfun::QuadratureKind kind,
                         const char* where) {
    if (rule.kind != kind || rule.nodes.empty())
        throw std::invalid_argument(std::string(where) +
                                    ": quadrature rule of wrong kind or empty");
}

// E[log2(1 + gain*X)] for X following the CLT cascade law, by Gauss-Laguerre
// quadrature. Every exponential factor is combined in log space before a
// single exp; the quadrature weight enters through its logarithm so the
// largest-node weights (below DBL_MIN at high orders) stay usable.
inline double cascade_rate_mean(double gain, double lambda,
                                const specfun::QuadratureRule& rule) {
    const double quarter_log_lambda = 0.25 * std::log(lambda);
    double sum = 0.0;
    for (std::size_t l = 0; l < rule.nodes.size(); ++l) {
        const double x = rule.nodes[l];
        const double z = std::sqrt(lambda * x);
        const double expo = rule.log_weights[l] + 0.5 * x + z - 0.5 * lambda +
                            quarter_log_lambda - 0.25 * std::log(x);
        sum += std::exp(expo) * specfun::bessel_i_mhalf_scaled(z) *
               std::log2(1.0 + gain * x);
    }
    return 0.5 * sum;
}

}  // namespace irsnoma::detail
