#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "ficogarch/errors.hpp"
#include "ficogarch/kernels.hpp"
#include "ficogarch/levy.hpp"
#include "ficogarch/quadrature.hpp"

namespace ficogarch {

/// Discretization scheme for the kernel convolution.
///  - stochastic_riemann: sum of kernel values against driver increments on
///    the extended grid (left-endpoint kernel evaluation; the MG kernel uses
///    cell midpoints because its endpoints are singular).
///  - parts_integral: the integrated-by-parts representation
///      S^{a,d}_t = d int [ (a+(-s)_+)^{d-1} - (a+(t-s)_+)^{d-1} ] S_s ds
///                 - d a^{d-1} int_0^t S_s ds,
///    evaluated by trapezoidal quadrature on the same driver realization.
enum class FracScheme { stochastic_riemann, parts_integral };

/// Configuration of a fractional subordinator path.
struct FracSubConfig {
    KernelSpec kernel;
    LevySpec driver;
    /// When set, the driving subordinator is the discrete quadratic variation
    /// of the simulated Levy path (running sum of squared jumps); otherwise
    /// the Levy spec itself must describe a subordinator.
    bool use_quadratic_variation = false;
    PathGrid grid;              // output grid; must contain 0 for the two-sided kernels
    double past_horizon = 0.0;  // truncation of the infinite past at -M
    FracScheme scheme = FracScheme::stochastic_riemann;
    bool allow_pathological = false;  // permits the unmodified MvN kernel (d < 0)
    /// The kernel's L1 tail decays like M^d, so at any usable horizon the
    /// truncated past still carries a visible fraction of the mean. With this
    /// flag (default) the exact expectation of the discarded mass,
    /// E(S_1) int_{-inf}^{-M} f(t,u) du, is added back as a deterministic
    /// drift: means become exact, increment means exactly stationary, and the
    /// variance deficit that remains is the (negligible) f^2 tail.
    bool compensate_truncation = true;

    void validate() const {
        kernel.validate();
        driver.validate();
        grid.validate();
        if (!use_quadratic_variation && !driver.is_subordinator())
            throw spec_error("FracSubConfig: driver must be a subordinator "
                             "(or enable use_quadratic_variation)");
        if (scheme == FracScheme::parts_integral && kernel.family != KernelFamily::ModifiedMvN)
            throw spec_error("FracSubConfig: parts_integral applies to the modified kernel only");
        if (kernel.family == KernelFamily::MG) {
            if (grid.t_start < 0.0)
                throw spec_error("FracSubConfig: MG kernel is incompatible with negative times");
            if (grid.t_start != 0.0)
                throw spec_error("FracSubConfig: MG grids must start at 0");
            return;
        }
        if (kernel.family == KernelFamily::MvN) {
            if (!allow_pathological)
                throw spec_error("FracSubConfig: unmodified MvN paths are pathological; "
                                 "set allow_pathological to simulate them anyway");
            if (!(kernel.d < 0.0))
                throw spec_error("FracSubConfig: MvN path simulation requires d < 0");
        }
        if (!grid.contains_origin())
            throw spec_error("FracSubConfig: two-sided kernels require a grid containing 0");
        if (!(past_horizon >= -grid.t_start))
            throw spec_error("FracSubConfig: past horizon too short (M < |t_start|)");
    }

    /// k-th cumulant of the driving subordinator at unit time.
    double driver_cumulant(int k) const {
        if (k < 1) throw spec_error("driver_cumulant: order must be >= 1");
        if (use_quadratic_variation) {
            // squared-jump subordinator: kappa^k = rate * E(J^{2k})
            return driver.jump_rate() * driver.jump_moment(2 * k);
        }
        return driver.cumulant(k);
    }
};

/// Builds fractional subordinator paths. Constructing the engine once and
/// reusing it across seeds shares the kernel lattice tables, which makes
/// large ensembles cheap.
class FracPathEngine {
public:
    explicit FracPathEngine(FracSubConfig cfg) : cfg_(std::move(cfg)) {
        cfg_.validate();
        const PathGrid& g = cfg_.grid;
        std::size_t n_left = 0;
        if (cfg_.kernel.family != KernelFamily::MG) {
            const double need = cfg_.past_horizon + g.t_start;  // >= 0 by validate()
            n_left = static_cast<std::size_t>(std::ceil(need / g.step - 1e-9));
        }
        ext_ = PathGrid(g.t_start - g.step * static_cast<double>(n_left), g.step,
                        g.n_points + n_left);
        out_offset_ = n_left;
        build_tables();
    }

    const FracSubConfig& config() const { return cfg_; }
    const PathGrid& extended_grid() const { return ext_; }

    struct Realization {
        LevyPath levy;    // underlying Levy path on the extended grid
        LevyPath driver;  // driving subordinator path (quadratic variation or the path itself)
        SamplePath frac;  // S^{a,d} on the output grid
    };

    Realization realize(std::uint64_t seed) const {
        Realization r;
        r.levy = (cfg_.kernel.family == KernelFamily::MG)
                     ? simulate_levy(cfg_.driver, ext_, seed)
                     : two_sided(cfg_.driver, ext_, seed);
        r.driver = cfg_.use_quadratic_variation ? quadratic_variation_discrete(r.levy) : r.levy;
        r.frac.grid = cfg_.grid;
        r.frac.kind = PathKind::continuous;
        r.frac.values = frac_values(r.driver);
        return r;
    }

    SamplePath path(std::uint64_t seed) const { return realize(seed).frac; }

    /// Fractional path values on the output grid for a given driver path
    /// living on the extended grid.
    std::vector<double> frac_values(const LevyPath& driver) const {
        if (driver.path.grid.n_points != ext_.n_points)
            throw data_error("FracPathEngine: driver path does not match the extended grid");
        std::vector<double> out;
        switch (cfg_.scheme) {
            case FracScheme::stochastic_riemann:
                out = cfg_.kernel.family == KernelFamily::MG ? riemann_mg(driver)
                                                             : riemann_lattice(driver);
                break;
            case FracScheme::parts_integral:
                out = parts_integral(driver);
                break;
        }
        if (!comp_.empty())
            for (std::size_t i = 0; i < out.size(); ++i) out[i] += comp_[i];
        return out;
    }

private:
    // g(x) = (a + x_+)^d for the modified kernel; x_+^d (0 at x <= 0) for MvN.
    double g_of(double x) const {
        if (cfg_.kernel.family == KernelFamily::ModifiedMvN)
            return std::pow(cfg_.kernel.a + std::max(x, 0.0), cfg_.kernel.d);
        return x > 0.0 ? std::pow(x, cfg_.kernel.d) : 0.0;
    }

    void build_tables() {
        if (cfg_.kernel.family == KernelFamily::MG) return;
        if (cfg_.compensate_truncation) {
            // mean of the mass lost below the actual cutoff -M' (grid start):
            // kappa_1 * int_{-inf}^{-M'} f(t, u) du in closed form, zero at t=0
            const double m = -ext_.t_start;
            const double k1 = cfg_.driver_cumulant(1);
            const double d = cfg_.kernel.d;
            const double a = (cfg_.kernel.family == KernelFamily::ModifiedMvN) ? cfg_.kernel.a : 0.0;
            const double sign_scale =
                (cfg_.kernel.family == KernelFamily::MvN)
                    ? -1.0 / std::tgamma(1.0 + d)
                    : 1.0;
            comp_.resize(cfg_.grid.n_points);
            for (std::size_t i = 0; i < comp_.size(); ++i) {
                const double t = cfg_.grid.time(i);
                comp_[i] = sign_scale * k1 *
                           (std::pow(a + t + m, d + 1.0) - std::pow(a + m, d + 1.0)) / (d + 1.0);
            }
        }
        const std::size_t n = ext_.n_points;
        const std::size_t k0 = ext_.index_of(0.0);
        g_lat_.resize(2 * n - 1);
        for (std::size_t m = 0; m < 2 * n - 1; ++m) {
            const double x = ext_.step * (static_cast<double>(m) - static_cast<double>(n - 1));
            g_lat_[m] = g_of(x);
        }
        // g(-u_j) read from the same lattice table so that kernel differences
        // cancel exactly at t = 0 (and the path starts at exactly zero)
        g_neg_.resize(n);
        for (std::size_t j = 0; j < n; ++j) g_neg_[j] = g_lat_[(n - 1) + k0 - j];
        if (cfg_.scheme == FracScheme::parts_integral) {
            const double a = cfg_.kernel.a, d = cfg_.kernel.d;
            gp_lat_.resize(2 * n - 1);
            for (std::size_t m = 0; m < 2 * n - 1; ++m) {
                const double x = ext_.step * (static_cast<double>(m) - static_cast<double>(n - 1));
                gp_lat_[m] = std::pow(a + std::max(x, 0.0), d - 1.0);
            }
            gp_neg_.resize(n);
            for (std::size_t j = 0; j < n; ++j) gp_neg_[j] = gp_lat_[(n - 1) + k0 - j];
        }
    }

    // S^{a,d}(t_i) = sum_j [g(-u_{j-1}) - g(t_i - u_{j-1})] dS_j. Terms with
    // u_{j-1} beyond max(t_i, 0) cancel exactly, so the sum may run over all
    // cells; only cells with nonzero driver increment contribute.
    std::vector<double> riemann_lattice(const LevyPath& driver) const {
        const std::size_t n = ext_.n_points;
        const bool mvn = cfg_.kernel.family == KernelFamily::MvN;
        const double gscale = mvn ? 1.0 / std::tgamma(1.0 + cfg_.kernel.d) : 1.0;

        std::vector<std::pair<std::size_t, double>> cells;  // (left index, increment)
        cells.reserve(driver.jumps.size() + 8);
        for (std::size_t j = 1; j < n; ++j) {
            const double ds = driver.path.values[j] - driver.path.values[j - 1];
            if (ds != 0.0) cells.emplace_back(j - 1, ds);
        }

        std::vector<double> out(cfg_.grid.n_points, 0.0);
        for (std::size_t i = 0; i < out.size(); ++i) {
            const std::size_t gi = out_offset_ + i + (n - 1);  // lattice center shift
            double acc = 0.0;
            for (const auto& [j, ds] : cells) acc += (g_neg_[j] - g_lat_[gi - j]) * ds;
            // MvN kernel is (g(t-s) - g(-s))/Gamma(1+d): opposite sign order
            out[i] = mvn ? -gscale * acc : acc;
        }
        return out;
    }

    // MG kernel: no lattice structure in (t, s) jointly; midpoint evaluation
    // avoids the endpoint singularities of the kernel.
    std::vector<double> riemann_mg(const LevyPath& driver) const {
        const std::size_t n = ext_.n_points;
        std::vector<std::pair<double, double>> cells;  // (midpoint, increment)
        for (std::size_t j = 1; j < n; ++j) {
            const double ds = driver.path.values[j] - driver.path.values[j - 1];
            if (ds != 0.0) cells.emplace_back(0.5 * (ext_.time(j - 1) + ext_.time(j)), ds);
        }
        std::vector<double> out(cfg_.grid.n_points, 0.0);
        for (std::size_t i = 0; i < out.size(); ++i) {
            const double ti = cfg_.grid.time(i);
            if (!(ti > 0.0)) {
                out[i] = 0.0;
                continue;
            }
            double acc = 0.0;
            for (const auto& [mid, ds] : cells) {
                if (mid >= ti) break;
                acc += detail::mg_value(cfg_.kernel.d, ti, mid, ti - mid) * ds;
            }
            out[i] = acc;
        }
        return out;
    }

    std::vector<double> parts_integral(const LevyPath& driver) const {
        const std::size_t n = ext_.n_points;
        const double a = cfg_.kernel.a, d = cfg_.kernel.d;
        const double dt = ext_.step;
        const std::size_t k0 = ext_.index_of(0.0);
        const auto& s = driver.path.values;

        // signed cumulative trapezoid of S from 0
        std::vector<double> cum(n, 0.0);
        for (std::size_t j = 1; j < n; ++j)
            cum[j] = cum[j - 1] + 0.5 * dt * (s[j] + s[j - 1]);
        const double cum0 = cum[k0];

        std::vector<double> out(cfg_.grid.n_points, 0.0);
        for (std::size_t i = 0; i < out.size(); ++i) {
            const std::size_t gi = out_offset_ + i;
            const std::size_t up = std::max(gi, k0);  // integrand vanishes past max(t,0)
            const std::size_t center = gi + (n - 1);
            double acc = 0.0;
            for (std::size_t j = 0; j <= up; ++j) {
                const double w = (j == 0 || j == up) ? 0.5 * dt : dt;
                acc += w * (gp_neg_[j] - gp_lat_[center - j]) * s[j];
            }
            // boundary term of the integration by parts at the finite cutoff:
            // int_{-M}^t f dS = -f(t, -M) S_{-M} + (derivative-form integrals)
            const double boundary = (g_neg_[0] - g_lat_[center]) * s[0];
            out[i] = d * acc - d * std::pow(a, d - 1.0) * (cum[gi] - cum0) - boundary;
        }
        return out;
    }

    FracSubConfig cfg_;
    PathGrid ext_;
    std::size_t out_offset_ = 0;
    std::vector<double> g_neg_, g_lat_, gp_neg_, gp_lat_, comp_;
};

/// Fractional subordinator path for one seed (convenience wrapper).
inline SamplePath frac_path(const FracSubConfig& cfg, std::uint64_t seed) {
    return FracPathEngine(cfg).path(seed);
}

/// E(S^{a,d}_t) = E(S_1) int f(t, u) du, by quadrature at 1e-8 relative
/// tolerance (the kernels here are non-negative for t >= 0, so the signed
/// integral equals the L1 norm).
inline double frac_mean(const FracSubConfig& cfg, double t) {
    cfg.validate();
    if (t < 0.0) throw spec_error("frac_mean: t must be >= 0");
    if (t == 0.0) return 0.0;
    const double k1 = cfg.driver_cumulant(1);
    const double coarse = kernel_norm(cfg.kernel, t, 1.0, 1e-4 * (1.0 + t));
    const double integral = kernel_norm(cfg.kernel, t, 1.0, 1e-8 * std::abs(coarse));
    return k1 * integral;
}

/// kappa^k(S^{a,d}_t) = kappa^k(S_1) int f(t, u)^k du.
inline double frac_cumulant(const FracSubConfig& cfg, int k, double t) {
    cfg.validate();
    if (k < 1) throw spec_error("frac_cumulant: order must be >= 1");
    if (t < 0.0) throw spec_error("frac_cumulant: t must be >= 0");
    if (t == 0.0) return 0.0;
    const double kap = cfg.driver_cumulant(k);
    const double p = static_cast<double>(k);
    const double coarse = kernel_norm(cfg.kernel, t, p, 1e-4 * (1.0 + t));
    const double integral =
        kernel_norm(cfg.kernel, t, p, 1e-8 * std::max(std::abs(coarse), 1e-30));
    return kap * integral;
}

/// Analytic bound on the mass lost by truncating the infinite past at -M:
/// E(S_1) int_{-inf}^{-M} f(t, u) du, in closed form for the modified kernel.
inline double truncation_tail_bound(const FracSubConfig& cfg, double t) {
    if (cfg.kernel.family != KernelFamily::ModifiedMvN) return 0.0;
    const double a = cfg.kernel.a, d = cfg.kernel.d, M = cfg.past_horizon;
    const double tail =
        (std::pow(a + t + M, d + 1.0) - std::pow(a + M, d + 1.0)) / (d + 1.0);
    return cfg.driver_cumulant(1) * tail;
}

}  // namespace ficogarch
