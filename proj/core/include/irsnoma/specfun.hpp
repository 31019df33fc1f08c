#pragma once

#include <cstddef>
#include <vector>

namespace irsnoma::specfun {

// ln Gamma(x) for x > 0. Relative error below 1e-13.
double ln_gamma(double x);

// Regularized incomplete gamma functions, P(s,x) + Q(s,x) = 1.
// P is computed by series for x < s+1 and as 1-Q otherwise; Q uses the
// continued fraction directly so large-x values keep full relative accuracy.
double reg_lower_gamma(double s, double x);
double reg_upper_gamma(double s, double x);

// Marcum Q-function of order 1/2 via the stable half-integer identity
//   Q_{1/2}(a,b) = (erfc((b-a)/sqrt(2)) + erfc((b+a)/sqrt(2))) / 2.
double marcum_q_half(double a, double b);

// e^{-z} I_{-1/2}(z) = sqrt(2/(pi z)) * (1 + e^{-2z}) / 2.
// Finite for every z > 0; the unscaled Bessel overflows past z ~ 709.
double bessel_i_mhalf_scaled(double z);

// Ei(-x) for x > 0 (always negative), plus the scaled form e^{x} Ei(-x)
// which stays bounded for large x and is the quantity integrands need.
double expint_ei_neg(double x);
double expint_ei_neg_scaled(double x);

enum class QuadratureKind { ChebyshevGauss, GaussLaguerre };

// Nodes/weights of a fixed-order rule. log_weights always holds ln(weight);
// at high Gauss-Laguerre orders the raw tail weights underflow double range,
// so summations that matter run off log_weights.
struct QuadratureRule {
    QuadratureKind kind;
    std::size_t order;
    std::vector<double> nodes;
    std::vector<double> weights;
    std::vector<double> log_weights;
};

// t_l = cos((2l-1) pi / (2u)), weight pi/u. Nodes strictly decreasing.
QuadratureRule make_chebyshev_gauss(std::size_t u);

// Roots of the Laguerre polynomial L_u with weights
// x_l / ((u+1)^2 L_{u+1}(x_l)^2); integrates p(x) e^{-x} on [0,inf)
// exactly for deg p <= 2u-1. Supports u up to 200.
QuadratureRule make_gauss_laguerre(std::size_t u);

}  // namespace irsnoma::specfun
