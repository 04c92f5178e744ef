#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "ficogarch/errors.hpp"
#include "ficogarch/grid.hpp"

namespace ficogarch {

/// Sample autocorrelation with biased (1/n) normalization; acf[0] = 1.
/// Throws on degenerate input (zero variance) or series shorter than
/// 4 * max_lag.
inline std::vector<double> sample_acf(std::span<const double> series, std::size_t max_lag) {
    const std::size_t n = series.size();
    if (n <= 4 * max_lag) throw data_error("sample_acf: series too short for requested lags");
    double mean = 0.0;
    for (double v : series) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : series) var += (v - mean) * (v - mean);
    if (!(var > 0.0)) throw data_error("sample_acf: zero-variance series");
    std::vector<double> acf(max_lag + 1, 0.0);
    for (std::size_t k = 0; k <= max_lag; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i + k < n; ++i) s += (series[i] - mean) * (series[i + k] - mean);
        acf[k] = std::clamp(s / var, -1.0, 1.0);
    }
    return acf;
}

struct SlopeFit {
    double slope = 0.0;
    double stderr_ = 0.0;
};

/// Least-squares slope of log y on log x. All data must be positive.
inline SlopeFit loglog_slope(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n != y.size() || n < 3) throw data_error("loglog_slope: need >= 3 paired points");
    double sx = 0.0, sy = 0.0;
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw data_error("loglog_slope: nonpositive data");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
        sx += lx[i];
        sy += ly[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (!(sxx > 0.0)) throw data_error("loglog_slope: degenerate x data");
    const double b = sxy / sxx;
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double res = (ly[i] - my) - b * (lx[i] - mx);
        rss += res * res;
    }
    SlopeFit fit;
    fit.slope = b;
    fit.stderr_ = (n > 2) ? std::sqrt(rss / (static_cast<double>(n - 2) * sxx)) : 0.0;
    return fit;
}

struct MomentEstimate {
    double mean = 0.0;
    double mean_se = 0.0;
    double var = 0.0;
    double var_se = 0.0;
    std::size_t n = 0;
};

/// Sample mean and variance with standard errors (variance SE from the
/// fourth central moment).
inline MomentEstimate moments_with_stderr(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n < 2) throw data_error("moments_with_stderr: need at least two samples");
    MomentEstimate m;
    m.n = n;
    for (double v : xs) m.mean += v;
    m.mean /= static_cast<double>(n);
    double m2 = 0.0, m4 = 0.0;
    for (double v : xs) {
        const double c = v - m.mean;
        m2 += c * c;
        m4 += c * c * c * c;
    }
    m2 /= static_cast<double>(n);
    m4 /= static_cast<double>(n);
    m.var = m2 * static_cast<double>(n) / static_cast<double>(n - 1);
    m.mean_se = std::sqrt(m.var / static_cast<double>(n));
    const double var_of_var = std::max(m4 - m2 * m2, 0.0) / static_cast<double>(n);
    m.var_se = std::sqrt(var_of_var);
    return m;
}

struct CovMcEstimate {
    double estimate = 0.0;
    double stderr_ = 0.0;
    std::size_t n = 0;
};

/// Monte Carlo increment covariance across an ensemble of paths sharing one
/// grid: Cov( S_{s0+(h+1)r} - S_{s0+hr}, S_{s0+r} - S_{s0} ) with jackknife
/// standard error. r and h r must be whole numbers of grid steps.
inline CovMcEstimate increment_cov_mc(const std::vector<SamplePath>& ensemble, double r, double h,
                                      double s0 = 0.0) {
    if (ensemble.size() < 3) throw data_error("increment_cov_mc: need >= 3 paths");
    const PathGrid& g = ensemble.front().grid;
    std::size_t i_s0, i_r, i_h, i_h1;
    try {
        i_s0 = g.index_of(s0);
        i_r = g.index_of(s0 + r);
        i_h = g.index_of(s0 + h * r);
        i_h1 = g.index_of(s0 + (h + 1.0) * r);
    } catch (const data_error&) {
        throw data_error("increment_cov_mc: lag is off-grid or beyond the path span");
    }
    const std::size_t n = ensemble.size();
    std::vector<double> xs(n), ys(n);
    for (std::size_t p = 0; p < n; ++p) {
        const auto& v = ensemble[p].values;
        if (ensemble[p].grid.n_points != g.n_points)
            throw data_error("increment_cov_mc: ensemble paths must share one grid");
        xs[p] = v[i_h1] - v[i_h];
        ys[p] = v[i_r] - v[i_s0];
    }
    double sx = 0.0, sy = 0.0, sxy = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
        sx += xs[p];
        sy += ys[p];
        sxy += xs[p] * ys[p];
    }
    const double nn = static_cast<double>(n);
    const double cov = (sxy - sx * sy / nn) / (nn - 1.0);

    // leave-one-out covariances from the running sums
    double jk_mean = 0.0;
    std::vector<double> jk(n);
    for (std::size_t p = 0; p < n; ++p) {
        const double sx_i = sx - xs[p], sy_i = sy - ys[p], sxy_i = sxy - xs[p] * ys[p];
        jk[p] = (sxy_i - sx_i * sy_i / (nn - 1.0)) / (nn - 2.0);
        jk_mean += jk[p];
    }
    jk_mean /= nn;
    double jk_var = 0.0;
    for (double v : jk) jk_var += (v - jk_mean) * (v - jk_mean);
    CovMcEstimate out;
    out.estimate = cov;
    out.stderr_ = std::sqrt((nn - 1.0) / nn * jk_var);
    out.n = n;
    return out;
}

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
    std::size_t n1 = 0, n2 = 0;
};

namespace detail {

/// Asymptotic Kolmogorov survival function Q(lambda) = 2 sum (-1)^{k-1} e^{-2 k^2 lambda^2}.
inline double kolmogorov_q(double lambda) {
    if (lambda < 1e-8) return 1.0;
    double q = 0.0;
    for (int k = 1; k <= 101; ++k) {
        const double term = 2.0 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
        q += term;
        if (std::abs(term) < 1e-12) break;
    }
    return std::clamp(q, 0.0, 1.0);
}

}  // namespace detail

/// Two-sample Kolmogorov-Smirnov test with the asymptotic p-value
/// (Stephens' small-sample correction on the effective sample size).
inline KsResult two_sample_ks(std::vector<double> a, std::vector<double> b) {
    if (a.size() < 2 || b.size() < 2) throw data_error("two_sample_ks: samples too small");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    double d = 0.0, fa = 0.0, fb = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            fa = static_cast<double>(++i) / na;
        else
            fb = static_cast<double>(++j) / nb;
        d = std::max(d, std::abs(fa - fb));
    }
    const double ne = std::sqrt(na * nb / (na + nb));
    KsResult r;
    r.statistic = d;
    r.n1 = a.size();
    r.n2 = b.size();
    r.p_value = detail::kolmogorov_q((ne + 0.12 + 0.11 / ne) * d);
    return r;
}

}  // namespace ficogarch
