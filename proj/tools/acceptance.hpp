#pragma once

// Acceptance suite: every validation criterion of the toolkit, each printing
// one pass/fail line per check with target, observed value and tolerance.
// Budgets: "quick" shrinks ensemble sizes for smoke runs; "full" runs the
// sizes the criteria are stated at.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "ficogarch/cogarch.hpp"
#include "ficogarch/covariance.hpp"
#include "ficogarch/frac_subordinator.hpp"
#include "ficogarch/kernels.hpp"
#include "ficogarch/parallel.hpp"
#include "ficogarch/rng.hpp"
#include "ficogarch/stats.hpp"

namespace ficli {

using namespace ficogarch;

struct Check {
    std::string desc;
    double observed = 0.0;
    double target = 0.0;
    double tol = 0.0;
    bool pass = false;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    std::vector<Check> checks;
    double seconds = 0.0;
    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return !checks.empty();
    }
};

namespace detail_acc {

inline Check within(std::string desc, double observed, double target, double tol) {
    Check c;
    c.desc = std::move(desc);
    c.observed = observed;
    c.target = target;
    c.tol = tol;
    c.pass = std::isfinite(observed) && std::abs(observed - target) <= tol;
    return c;
}

inline Check truth(std::string desc, bool ok, double observed = 1.0) {
    Check c;
    c.desc = std::move(desc);
    c.observed = observed;
    c.target = 1.0;
    c.tol = 0.0;
    c.pass = ok;
    return c;
}

inline LevySpec figure_driver() {
    LevySpec spec;
    spec.jumps = CompoundPoisson{5.0, NormalJumps{0.0, 0.5}};
    return spec;
}

inline FracSubConfig mc_config(double step, double t_end, double horizon) {
    FracSubConfig cfg;
    cfg.kernel = {KernelFamily::ModifiedMvN, -0.25, 1.0};
    cfg.driver = figure_driver();
    cfg.use_quadratic_variation = true;
    cfg.grid = PathGrid::from_range(0.0, t_end, step);
    cfg.past_horizon = horizon;
    return cfg;
}

inline std::vector<SamplePath> ensemble(const FracSubConfig& cfg, std::uint64_t base,
                                        std::size_t n) {
    FracPathEngine eng(cfg);
    std::vector<SamplePath> out(n);
    parallel_for(n, [&](std::size_t i) { out[i] = eng.path(ensemble_seed(base, i)); });
    return out;
}

}  // namespace detail_acc

// --- 1. closed form of int f^2 vs direct adaptive quadrature -------------

inline CriterionResult criterion_1(bool /*full*/) {
    using namespace detail_acc;
    CriterionResult res{1, "closed form of int f^2 vs direct quadrature (36-point grid)", {}, 0.0};
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    std::string worst_case;
    for (double a : {0.1, 1.0, 10.0}) {
        for (double d : {-0.45, -0.25, -0.05}) {
            for (double t : {0.1, 1.0, 10.0, 100.0}) {
                const double closed = closed_form_f_squared(a, d, t);
                const double direct =
                    kernel_norm({KernelFamily::ModifiedMvN, d, a}, t, 2.0, 1e-8 * closed);
                const double rel = std::abs(closed - direct) / std::abs(direct);
                if (rel > worst) {
                    worst = rel;
                    char buf[80];
                    std::snprintf(buf, sizeof buf, "a=%g d=%g t=%g", a, d, t);
                    worst_case = buf;
                }
            }
        }
    }
    res.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    res.checks.push_back(within("worst relative gap over the grid (" + worst_case + ")", worst,
                                0.0, 1e-6));
    res.checks.push_back(truth("runtime below 10 s", res.seconds < 10.0, res.seconds));
    return res;
}

// --- 2. c(t) large-t limit ------------------------------------------------

inline CriterionResult criterion_2(bool /*full*/) {
    using namespace detail_acc;
    CriterionResult res{2, "c(t) limit at t = 1e6 against the reference constant", {}, 0.0};
    const double target = std::tgamma(0.75) / (std::tgamma(1.5) * std::sin(M_PI / 4.0)) + 2.0;
    const double observed = c_integral(1.0, -0.25, 1e6);
    res.checks.push_back(within("c(1, -0.25, 1e6)", observed, target, 1e-3));
    return res;
}

// --- 3. covariance decay exponent -----------------------------------------

inline CriterionResult criterion_3(bool /*full*/) {
    using namespace detail_acc;
    CriterionResult res{3, "log-log slope of the exact covariance equals d - 1", {}, 0.0};
    for (double d : {-0.45, -0.25, -0.05}) {
        std::vector<double> hs, gs;
        for (int i = 0; i < 25; ++i) {
            const double h = 100.0 * std::pow(100.0, i / 24.0);
            hs.push_back(h);
            gs.push_back(increment_cov_exact(1.0, d, 1.0, 1.0, h));
        }
        const auto fit = loglog_slope(hs, gs);
        char buf[64];
        std::snprintf(buf, sizeof buf, "slope for d = %g over h in [1e2, 1e4]", d);
        res.checks.push_back(within(buf, fit.slope, d - 1.0, 0.05));
    }
    return res;
}

// --- 4. Monte Carlo covariance vs exact ------------------------------------

inline CriterionResult criterion_4(bool full) {
    using namespace detail_acc;
    CriterionResult res{4, "Monte Carlo increment covariance vs exact formula", {}, 0.0};
    const std::size_t n_paths = full ? 20000 : 2000;
    auto cfg = mc_config(0.01, 12.0, 200.0);
    auto paths = ensemble(cfg, 1040, n_paths);
    const double var_s1 = cfg.driver_cumulant(2);  // 3.75
    for (double h : {2.0, 5.0, 10.0}) {
        const auto mc = increment_cov_mc(paths, 1.0, h, 0.0);
        const double exact = increment_cov_exact(1.0, -0.25, var_s1, 1.0, h);
        char buf[96];
        std::snprintf(buf, sizeof buf, "h = %g over %zu paths (3 jackknife SE = %.3g)", h,
                      n_paths, 3.0 * mc.stderr_);
        res.checks.push_back(within(buf, mc.estimate, exact, 3.0 * mc.stderr_));
    }
    return res;
}

// --- 5. positive correlation ----------------------------------------------

inline CriterionResult criterion_5(bool /*full*/) {
    using namespace detail_acc;
    CriterionResult res{5, "exact covariance positive on h in [2, 1e4]", {}, 0.0};
    for (double d : {-0.45, -0.25, -0.05}) {
        double min_g = 1e300;
        for (double h = 2.0; h <= 100.0; h += 1.0)
            min_g = std::min(min_g, increment_cov_exact(1.0, d, 1.0, 1.0, h));
        for (int i = 0; i <= 40; ++i)
            min_g = std::min(min_g, increment_cov_exact(1.0, d, 1.0, 1.0,
                                                        100.0 * std::pow(100.0, i / 40.0)));
        char buf[64];
        std::snprintf(buf, sizeof buf, "min gamma over the h grid, d = %g", d);
        res.checks.push_back(truth(buf, min_g > 0.0, min_g));
    }
    return res;
}

// --- 6. Monte Carlo moments vs quadrature ----------------------------------

inline CriterionResult criterion_6(bool full) {
    using namespace detail_acc;
    CriterionResult res{6, "Monte Carlo mean/variance vs quadrature moments", {}, 0.0};
    const std::size_t n_paths = full ? 10000 : 2000;
    auto cfg = mc_config(0.01, 5.0, 200.0);
    auto paths = ensemble(cfg, 1060, n_paths);
    for (double t : {1.0, 5.0}) {
        std::vector<double> vals(paths.size());
        for (std::size_t i = 0; i < paths.size(); ++i) vals[i] = paths[i].at_time(t);
        const auto m = moments_with_stderr(vals);
        const double want_mean = frac_mean(cfg, t);
        const double want_var = frac_cumulant(cfg, 2, t);
        char b1[80], b2[80];
        std::snprintf(b1, sizeof b1, "mean at t = %g (3 SE = %.3g)", t, 3.0 * m.mean_se);
        std::snprintf(b2, sizeof b2, "variance at t = %g (3 SE = %.3g)", t, 3.0 * m.var_se);
        res.checks.push_back(within(b1, m.mean, want_mean, 3.0 * m.mean_se));
        res.checks.push_back(within(b2, m.var, want_var, 3.0 * m.var_se));
    }
    return res;
}

// --- 7. scheme equivalence -------------------------------------------------

inline CriterionResult criterion_7(bool full) {
    using namespace detail_acc;
    CriterionResult res{7, "Riemann-sum and by-parts schemes converge at first order", {}, 0.0};
    const std::size_t n_seeds = full ? 20 : 5;
    const double steps[] = {0.02, 0.01, 0.005};
    double mean_gap[3] = {0, 0, 0};
    for (int si = 0; si < 3; ++si) {
        FracSubConfig cfg;
        cfg.kernel = {KernelFamily::ModifiedMvN, -0.25, 1.0};
        cfg.driver.jumps = CompoundPoisson{0.4, NormalJumps{0.0, 1.0}};
        cfg.use_quadratic_variation = true;
        cfg.grid = PathGrid::from_range(0.0, 5.0, steps[si]);
        cfg.past_horizon = 50.0;
        cfg.scheme = FracScheme::stochastic_riemann;
        FracPathEngine riem(cfg);
        cfg.scheme = FracScheme::parts_integral;
        FracPathEngine parts(cfg);
        std::vector<double> gaps(n_seeds);
        parallel_for(n_seeds, [&](std::size_t s) {
            auto rr = riem.realize(1000 + s);
            auto pv = parts.frac_values(rr.driver);
            double g = 0.0;
            for (std::size_t k = 0; k < pv.size(); ++k)
                g = std::max(g, std::abs(pv[k] - rr.frac.values[k]));
            gaps[s] = g;
        });
        for (double g : gaps) mean_gap[si] += g / n_seeds;
    }
    res.checks.push_back(
        within("gap ratio step 0.02 / 0.01", mean_gap[0] / mean_gap[1], 2.0, 0.5));
    res.checks.push_back(
        within("gap ratio step 0.01 / 0.005", mean_gap[1] / mean_gap[2], 2.0, 0.5));
    return res;
}

// --- 8. path regularity ----------------------------------------------------

inline CriterionResult criterion_8(bool full) {
    using namespace detail_acc;
    CriterionResult res{8, "modified paths are monotone; increments vanish under refinement", {}, 0.0};
    const std::size_t n_seeds = full ? 1000 : 100;
    {
        FracSubConfig cfg;
        cfg.kernel = {KernelFamily::ModifiedMvN, -0.25, 1.0};
        cfg.driver = figure_driver();
        cfg.use_quadratic_variation = true;
        cfg.grid = PathGrid::from_range(0.0, 10.0, 0.05);
        cfg.past_horizon = 100.0;
        FracPathEngine eng(cfg);
        std::vector<char> mono(n_seeds, 1);
        parallel_for(n_seeds, [&](std::size_t s) {
            auto p = eng.path(ensemble_seed(1080, s));
            for (std::size_t k = 1; k < p.values.size(); ++k)
                if (p.values[k] < p.values[k - 1] - 1e-12) mono[s] = 0;
        });
        std::size_t ok = 0;
        for (char c : mono) ok += c;
        char buf[80];
        std::snprintf(buf, sizeof buf, "non-decreasing paths: %zu of %zu seeds", ok, n_seeds);
        res.checks.push_back(truth(buf, ok == n_seeds, static_cast<double>(ok)));
    }
    {
        const double steps[] = {0.04, 0.02, 0.01};
        double mean_max[3] = {0, 0, 0};
        const std::size_t n = full ? 20 : 5;
        for (int si = 0; si < 3; ++si) {
            FracSubConfig cfg;
            cfg.kernel = {KernelFamily::ModifiedMvN, -0.25, 1.0};
            cfg.driver = figure_driver();
            cfg.use_quadratic_variation = true;
            cfg.grid = PathGrid::from_range(0.0, 10.0, steps[si]);
            cfg.past_horizon = 100.0;
            FracPathEngine eng(cfg);
            std::vector<double> mx(n);
            parallel_for(n, [&](std::size_t s) {
                auto p = eng.path(ensemble_seed(1081, s));  // same jumps across steps
                double m = 0.0;
                for (std::size_t k = 1; k < p.values.size(); ++k)
                    m = std::max(m, p.values[k] - p.values[k - 1]);
                mx[s] = m;
            });
            for (double m : mx) mean_max[si] += m / n;
        }
        res.checks.push_back(truth("max cell increment shrinks by >= 40% (halving #1)",
                                   mean_max[1] <= 0.6 * mean_max[0],
                                   mean_max[1] / mean_max[0]));
        res.checks.push_back(truth("max cell increment shrinks by >= 40% (halving #2)",
                                   mean_max[2] <= 0.6 * mean_max[1],
                                   mean_max[2] / mean_max[1]));
    }
    return res;
}

// --- 9. MG mean-growth exponent ---------------------------------------------

inline CriterionResult criterion_9(bool /*full*/) {
    using namespace detail_acc;
    CriterionResult res{9, "MG mean growth: log-log slope of the quadrature mean", {}, 0.0};
    for (double d : {-0.25, 0.25}) {
        FracSubConfig cfg;
        cfg.kernel = {KernelFamily::MG, d, 0.0};
        cfg.driver.drift = 0.0;
        cfg.driver.jumps = CompoundPoisson{1.0, ExponentialJumps{1.0}};
        cfg.use_quadratic_variation = false;
        cfg.grid = PathGrid(0.0, 0.1, 11);
        cfg.past_horizon = 0.0;
        std::vector<double> ts, ms;
        for (double t : {1.0, 2.0, 4.0, 8.0, 16.0}) {
            ts.push_back(t);
            ms.push_back(frac_mean(cfg, t));
        }
        const auto fit = loglog_slope(ts, ms);
        char buf[64];
        std::snprintf(buf, sizeof buf, "mean-growth slope for d = %g", d);
        res.checks.push_back(within(buf, fit.slope, 2.0 * d + 1.0, 0.02));
    }
    return res;
}

// --- 10. integrability classification ---------------------------------------

inline CriterionResult criterion_10(bool /*full*/) {
    using namespace detail_acc;
    CriterionResult res{10, "integrability classification and divergence errors", {}, 0.0};
    struct Cell {
        KernelSpec spec;
        double p;
        bool integrable;
    };
    const Cell cells[] = {
        {{KernelFamily::MG, -0.4, 0.0}, 1.0, true},
        {{KernelFamily::MG, -0.4, 0.0}, 2.0, true},
        {{KernelFamily::MG, 0.25, 0.0}, 1.0, true},
        {{KernelFamily::MG, 0.25, 0.0}, 2.0, true},
        {{KernelFamily::MG, -0.4, 0.0}, 3.0, false},
        {{KernelFamily::MvN, 0.25, 0.0}, 1.0, false},
        {{KernelFamily::MvN, 0.25, 0.0}, 2.0, true},
        {{KernelFamily::MvN, -0.25, 0.0}, 1.0, true},
        {{KernelFamily::MvN, -0.25, 0.0}, 2.0, true},
        {{KernelFamily::MvN, -0.45, 0.0}, 1.0, true},
        {{KernelFamily::ModifiedMvN, -0.25, 1.0}, 0.5, false},
        {{KernelFamily::ModifiedMvN, -0.25, 1.0}, 0.9, true},
        {{KernelFamily::ModifiedMvN, -0.25, 1.0}, 1.0, true},
        {{KernelFamily::ModifiedMvN, -0.25, 1.0}, 2.0, true},
        {{KernelFamily::ModifiedMvN, -0.45, 1.0}, 0.6, false},
        {{KernelFamily::ModifiedMvN, -0.05, 1.0}, 0.9, false},
    };
    std::size_t bad = 0;
    for (const auto& c : cells) {
        const bool classified =
            classify_integrability(c.spec, c.p) == Integrability::integrable;
        bool norm_diverged = false;
        bool norm_ok = true;
        try {
            (void)kernel_norm(c.spec, 1.0, c.p, 1e-6);
        } catch (const diverges_error&) {
            norm_diverged = true;
        } catch (...) {
            norm_ok = false;
        }
        if (classified != c.integrable || norm_diverged == c.integrable || !norm_ok) ++bad;
    }
    char buf[96];
    std::snprintf(buf, sizeof buf,
                  "classification table and matching kernel_norm behaviour (%zu cells)",
                  std::size(cells));
    res.checks.push_back(truth(buf, bad == 0, static_cast<double>(bad)));
    return res;
}

// --- 11. FICOGARCH stationarity ---------------------------------------------

inline CriterionResult criterion_11(bool full) {
    using namespace detail_acc;
    CriterionResult res{11, "stationary-start volatility passes the two-time KS test", {}, 0.0};
    const std::size_t n_paths = full ? 2000 : 300;

    FicogarchParams params;
    params.alpha0 = 0.0195;
    params.alpha1 = 0.0105;
    params.beta1 = 0.0513;
    params.kernel = {KernelFamily::ModifiedMvN, -0.4, 1.0};
    params.driver = figure_driver();
    params.sigma0_sq.reset();  // stationary initialization

    FicogarchRunConfig run;
    run.grid = PathGrid::from_range(0.0, 165.0, 0.05);
    run.init_window = 160.0;
    run.past_horizon = 360.0;

    std::vector<VolatilityPath> ensemble(n_paths);
    parallel_for(n_paths, [&](std::size_t i) {
        ensemble[i] = ficogarch_1d1(params, run, ensemble_seed(1110, i)).vol;
    });

    auto rep = stationary_check(ensemble, 50.0, 150.0, 0.0, 0.01,
                                std::min<std::size_t>(n_paths, 1000));
    char buf[96];
    std::snprintf(buf, sizeof buf, "sigma^2 KS p-value at (t1, t2) = (50, 150), %zu paths",
                  n_paths);
    res.checks.push_back(truth(buf, rep.ks_pass, rep.ks.p_value));

    // price-increment windows dG over [t, t+10]
    std::vector<double> dg1(n_paths), dg2(n_paths);
    for (std::size_t i = 0; i < n_paths; ++i) {
        const auto& v = ensemble[i];
        dg1[i] = v.G[v.grid.index_of(60.0)] - v.G[v.grid.index_of(50.0)];
        dg2[i] = v.G[v.grid.index_of(160.0)] - v.G[v.grid.index_of(150.0)];
    }
    auto ks = two_sample_ks(dg1, dg2);
    res.checks.push_back(truth("price increment KS p-value over length-10 windows",
                               ks.p_value >= 0.01, ks.p_value));
    return res;
}

// --- 12. ACF ordering in d ----------------------------------------------------

inline CriterionResult criterion_12(bool full) {
    using namespace detail_acc;
    CriterionResult res{12, "slower volatility ACF decay for d closer to zero", {}, 0.0};
    const std::size_t n_seeds = full ? 100 : 20;
    const double T = 2000.0, step = 0.25, burn = 100.0;
    const std::size_t every = 4;  // sample sigma at unit spacing

    auto avg_acf = [&](double d) {
        FicogarchParams params;
        params.alpha0 = 0.0195;
        params.alpha1 = 0.0105;
        params.beta1 = 0.0513;
        params.kernel = {KernelFamily::ModifiedMvN, d, 1.0};
        params.driver = figure_driver();
        params.sigma0_sq.reset();
        FicogarchRunConfig run;
        run.grid = PathGrid::from_range(0.0, T + burn, step);
        run.init_window = 160.0;
        run.past_horizon = 400.0;
        std::vector<std::vector<double>> acfs(n_seeds);
        parallel_for(n_seeds, [&](std::size_t s) {
            auto resv = ficogarch_1d1(params, run, ensemble_seed(1120, s));
            std::vector<double> sig;
            sig.reserve(static_cast<std::size_t>(T));
            for (std::size_t k = run.grid.index_of(burn); k < run.grid.n_points; k += every)
                sig.push_back(std::sqrt(resv.vol.sigma_sq[k]));
            acfs[s] = sample_acf(sig, 50);
        });
        std::vector<double> mean(51, 0.0);
        for (const auto& a : acfs)
            for (std::size_t k = 0; k <= 50; ++k) mean[k] += a[k] / n_seeds;
        return mean;
    };

    const auto slow = avg_acf(-0.01);
    const auto fast = avg_acf(-0.4);
    std::size_t ok = 0;
    double min_margin = 1e300;
    for (std::size_t lag = 10; lag <= 50; ++lag) {
        if (slow[lag] > fast[lag]) ++ok;
        min_margin = std::min(min_margin, slow[lag] - fast[lag]);
    }
    char buf[96];
    std::snprintf(buf, sizeof buf,
                  "acf(d=-0.01) > acf(d=-0.4) pointwise on lags 10..50 (%zu seeds)", n_seeds);
    res.checks.push_back(truth(buf, ok == 41, static_cast<double>(ok)));
    res.checks.push_back(truth("minimum ordering margin is positive", min_margin > 0.0,
                               min_margin));
    return res;
}

// --- 13. SDE residual of the explicit solution --------------------------------

inline CriterionResult criterion_13(bool full) {
    using namespace detail_acc;
    CriterionResult res{13, "discrete SDE residual of the explicit solution is second order", {}, 0.0};
    const std::size_t n_seeds = full ? 10 : 3;
    const double steps[] = {0.02, 0.01, 0.005};
    double sup_res[3] = {0, 0, 0};
    for (int si = 0; si < 3; ++si) {
        FicogarchParams params;
        params.alpha0 = 0.0195;
        params.alpha1 = 0.0105;
        params.beta1 = 0.0513;
        params.kernel = {KernelFamily::ModifiedMvN, -0.25, 1.0};
        params.driver = figure_driver();
        params.sigma0_sq = 1.0;
        FicogarchRunConfig run;
        run.grid = PathGrid::from_range(0.0, 10.0, steps[si]);
        run.past_horizon = 60.0;
        std::vector<double> worst(n_seeds);
        parallel_for(n_seeds, [&](std::size_t s) {
            auto r = ficogarch_1d1(params, run, ensemble_seed(1130, s));
            const auto& sig2 = r.vol.sigma_sq;
            const auto& sad = r.vol.driver.values;
            double w = 0.0;
            for (std::size_t k = 0; k + 1 < sig2.size(); ++k) {
                const double residual = sig2[k + 1] - sig2[k] +
                                        params.beta1 * (sig2[k] - params.alpha0) * steps[si] -
                                        params.alpha1 * sig2[k] * (sad[k + 1] - sad[k]);
                w = std::max(w, std::abs(residual));
            }
            worst[s] = w;
        });
        for (double w : worst) sup_res[si] += w / n_seeds;
    }
    res.checks.push_back(
        within("residual ratio step 0.02 / 0.01", sup_res[0] / sup_res[1], 4.0, 1.2));
    res.checks.push_back(
        within("residual ratio step 0.01 / 0.005", sup_res[1] / sup_res[2], 4.0, 1.2));
    return res;
}

// --- 14. state-space reduction at p = q = 1 -----------------------------------

inline CriterionResult criterion_14(bool full) {
    using namespace detail_acc;
    CriterionResult res{14, "state form with p = q = 1 converges to the explicit solution", {}, 0.0};
    const std::size_t n_seeds = full ? 10 : 3;
    const double steps[] = {0.02, 0.01, 0.005};
    double mean_gap[3] = {0, 0, 0};
    for (int si = 0; si < 3; ++si) {
        FicogarchParams params;
        params.alpha0 = 0.0195;
        params.alpha1 = 0.0105;
        params.beta1 = 0.0513;
        params.kernel = {KernelFamily::ModifiedMvN, -0.25, 1.0};
        params.driver = figure_driver();
        params.sigma0_sq = 1.0;
        FicogarchRunConfig run;
        run.grid = PathGrid::from_range(0.0, 10.0, steps[si]);
        run.past_horizon = 60.0;

        FicogarchPdqParams pq;
        pq.p = pq.q = 1;
        pq.a_vec = {params.alpha1};
        pq.b_vec = {params.beta1};
        pq.alpha0 = params.alpha0;
        pq.kernel = params.kernel;
        pq.driver = params.driver;
        pq.y0 = {(*params.sigma0_sq - params.alpha0) / params.alpha1};

        std::vector<double> gaps(n_seeds);
        parallel_for(n_seeds, [&](std::size_t s) {
            auto e = ficogarch_1d1(params, run, ensemble_seed(1140, s));
            auto q = ficogarch_pdq(pq, run, ensemble_seed(1140, s));
            double g = 0.0;
            for (std::size_t k = 0; k < run.grid.n_points; ++k)
                g = std::max(g, std::abs(e.vol.sigma_sq[k] - q.vol.sigma_sq[k]));
            gaps[s] = g;
        });
        for (double g : gaps) mean_gap[si] += g / n_seeds;
    }
    res.checks.push_back(
        within("sup-gap ratio step 0.02 / 0.01", mean_gap[0] / mean_gap[1], 2.0, 0.5));
    res.checks.push_back(
        within("sup-gap ratio step 0.01 / 0.005", mean_gap[1] / mean_gap[2], 2.0, 0.5));
    return res;
}

// --- suite driver ------------------------------------------------------------

struct SuiteSpec {
    std::string name;
    std::vector<int> criteria;
};

inline std::vector<SuiteSpec> suites() {
    return {
        {"kernels", {10}},
        {"fracsub", {6, 7, 8, 9}},
        {"covariance", {1, 2, 3, 4, 5}},
        {"ficogarch", {11, 12, 13, 14}},
        {"all", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14}},
    };
}

inline CriterionResult run_criterion(int id, bool full) {
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult res;
    switch (id) {
        case 1: res = criterion_1(full); break;
        case 2: res = criterion_2(full); break;
        case 3: res = criterion_3(full); break;
        case 4: res = criterion_4(full); break;
        case 5: res = criterion_5(full); break;
        case 6: res = criterion_6(full); break;
        case 7: res = criterion_7(full); break;
        case 8: res = criterion_8(full); break;
        case 9: res = criterion_9(full); break;
        case 10: res = criterion_10(full); break;
        case 11: res = criterion_11(full); break;
        case 12: res = criterion_12(full); break;
        case 13: res = criterion_13(full); break;
        case 14: res = criterion_14(full); break;
        default: throw spec_error("unknown criterion id");
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

inline void print_result(const CriterionResult& res) {
    std::printf("[%s] criterion %2d: %s (%.1f s)\n", res.pass() ? "PASS" : "FAIL", res.id,
                res.name.c_str(), res.seconds);
    for (const auto& c : res.checks) {
        std::printf("    [%s] %s: observed=%.6g target=%.6g tol=%.3g\n",
                    c.pass ? "pass" : "FAIL", c.desc.c_str(), c.observed, c.target, c.tol);
    }
}

}  // namespace ficli
