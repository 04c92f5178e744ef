#pragma once

#include <array>
#include <cmath>

#include "ficogarch/errors.hpp"
#include "ficogarch/kernels.hpp"
#include "ficogarch/quadrature.hpp"

namespace ficogarch {

namespace detail {

inline void check_cov_params(double a, double d) {
    if (!(a > 0.0)) throw spec_error("covariance: a must be positive");
    if (!(d > -0.5 && d < 0.0)) throw spec_error("covariance: d must lie in (-0.5, 0)");
}

/// Full-negative-axis squared-kernel constant
///   D_d = int_{-inf}^{1} [(1-y)_+^d - (-y)_+^d]^2 dy
///       = Gamma(1+d)^2 / (Gamma(2+2d) cos(pi d)),
/// obtained from the Plancherel identity for the fractional kernel.
inline double full_line_sq_constant(double d) {
    return std::exp(2.0 * std::lgamma(1.0 + d) - std::lgamma(2.0 + 2.0 * d)) /
           std::cos(M_PI * d);
}

}  // namespace detail

/// c(t) = int_{-inf}^{-a/t} [(1-y)^d - (-y)^d]^2 dy for t > 0.
///
/// Evaluated as D_d - 1/(2d+1) - int_{-a/t}^{0}, where the remaining bounded
/// integral is computed after the substitution y = -v^2, which softens the
/// (-y)^{2d} endpoint to v^{4d+1} (integrable for d > -0.5).
inline double c_integral(double a, double d, double t) {
    detail::check_cov_params(a, d);
    if (!(t > 0.0)) throw spec_error("c_integral: t must be positive");
    const double vmax = std::sqrt(a / t);
    const double dd = detail::full_line_sq_constant(d);
    auto bounded = quad::integrate_tanh_sinh(
        [&](double v, double dist) {
            const double vv = (v < dist) ? dist : v;  // exact near the v = 0 end
            const double diff = std::pow(1.0 + vv * vv, d) - std::pow(vv, 2.0 * d);
            return 2.0 * vv * diff * diff;
        },
        0.0, vmax, 1e-14 * (1.0 + dd), 13);
    return dd - bounded.value - 1.0 / (2.0 * d + 1.0);
}

/// Closed form of I(t) = int_R f_{a,d}(t,u)^2 du for the modified MvN kernel:
///   I(t) = C + a^{2d} t - (2 a^d/(d+1)) (t+a)^{d+1}
///        + (t+a)^{2d+1}/(2d+1) + c(t) t^{2d+1},
///   C    = a^{2d+1} (2/(d+1) - 1/(2d+1)).
inline double closed_form_f_squared(double a, double d, double t) {
    detail::check_cov_params(a, d);
    if (t < 0.0) throw spec_error("closed_form_f_squared: t must be >= 0");
    if (t == 0.0) return 0.0;
    const double C = std::pow(a, 2.0 * d + 1.0) * (2.0 / (d + 1.0) - 1.0 / (2.0 * d + 1.0));
    return C + std::pow(a, 2.0 * d) * t -
           (2.0 * std::pow(a, d) / (d + 1.0)) * std::pow(t + a, d + 1.0) +
           std::pow(t + a, 2.0 * d + 1.0) / (2.0 * d + 1.0) +
           c_integral(a, d, t) * std::pow(t, 2.0 * d + 1.0);
}

namespace detail {

inline double c_times_pow(double a, double d, double t) {
    return (t == 0.0) ? 0.0 : c_integral(a, d, t) * std::pow(t, 2.0 * d + 1.0);
}

}  // namespace detail

/// Exact covariance of two length-r increments at lag h >= 1:
///   gamma_r(h) = Var(S_1)/2 [ I((h+1)r) + I((h-1)r) - 2 I(hr) ].
/// The constant and linear parts of I cancel exactly in the second
/// difference and are dropped term by term to avoid losing precision at
/// large lags.
inline double increment_cov_exact(double a, double d, double var_s1, double r, double h) {
    detail::check_cov_params(a, d);
    if (!(var_s1 >= 0.0)) throw spec_error("increment_cov_exact: var_s1 must be >= 0");
    if (!(r > 0.0)) throw spec_error("increment_cov_exact: r must be positive");
    if (!(h >= 1.0)) throw spec_error("increment_cov_exact: lag h below one is not defined");
    if (var_s1 == 0.0) return 0.0;
    const double tp = (h + 1.0) * r, t0 = h * r, tm = (h - 1.0) * r;
    auto d2pow = [&](double e) {
        return std::pow(tp + a, e) + std::pow(tm + a, e) - 2.0 * std::pow(t0 + a, e);
    };
    const double term_a = -(2.0 * std::pow(a, d) / (d + 1.0)) * d2pow(d + 1.0);
    const double term_b = d2pow(2.0 * d + 1.0) / (2.0 * d + 1.0);
    const double term_c = detail::c_times_pow(a, d, tp) + detail::c_times_pow(a, d, tm) -
                          2.0 * detail::c_times_pow(a, d, t0);
    return 0.5 * var_s1 * (term_a + term_b + term_c);
}

/// Which variance scales the large-lag covariance approximation: the driver
/// variance Var(S_1) (the scale produced by the second difference of I) or
/// the fractional-process variance Var(S_1) I(1).
enum class VarianceConvention { driver, fractional };

/// Large-lag approximation gamma_r(h) ~ scale |d| a^d r^2 (hr+a)^{d-1}.
inline double increment_cov_asymptotic(double a, double d, double var_s1, double r, double h,
                                       VarianceConvention conv = VarianceConvention::driver) {
    detail::check_cov_params(a, d);
    if (!(var_s1 >= 0.0)) throw spec_error("increment_cov_asymptotic: var_s1 must be >= 0");
    if (!(r > 0.0)) throw spec_error("increment_cov_asymptotic: r must be positive");
    double scale = var_s1;
    if (conv == VarianceConvention::fractional) scale *= closed_form_f_squared(a, d, 1.0);
    return scale * std::abs(d) * std::pow(a, d) * r * r * std::pow(h * r + a, d - 1.0);
}

/// Exact and asymptotic increment covariance with the intermediate
/// quantities used to build them.
struct CovarianceReport {
    double r = 0.0;
    double h = 0.0;
    double gamma_exact = 0.0;
    double gamma_asymptotic = 0.0;
    double C = 0.0;
    std::array<double, 3> c_of_t{};  // c at (h-1)r, hr, (h+1)r
    double var_s1 = 0.0;
};

inline CovarianceReport covariance_report(double a, double d, double var_s1, double r, double h,
                                          VarianceConvention conv = VarianceConvention::driver) {
    CovarianceReport rep;
    rep.r = r;
    rep.h = h;
    rep.var_s1 = var_s1;
    rep.C = std::pow(a, 2.0 * d + 1.0) * (2.0 / (d + 1.0) - 1.0 / (2.0 * d + 1.0));
    rep.c_of_t = {(h - 1.0) * r > 0.0 ? c_integral(a, d, (h - 1.0) * r) : 0.0,
                  c_integral(a, d, h * r), c_integral(a, d, (h + 1.0) * r)};
    rep.gamma_exact = increment_cov_exact(a, d, var_s1, r, h);
    rep.gamma_asymptotic = increment_cov_asymptotic(a, d, var_s1, r, h, conv);
    return rep;
}

}  // namespace ficogarch
