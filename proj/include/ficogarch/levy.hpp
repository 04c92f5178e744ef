#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "ficogarch/errors.hpp"
#include "ficogarch/grid.hpp"
#include "ficogarch/rng.hpp"

namespace ficogarch {

// ---------------------------------------------------------------------------
// Jump-size laws (finite-activity only).
// ---------------------------------------------------------------------------

struct NormalJumps {
    double mean = 0.0;
    double var = 1.0;
};
struct ExponentialJumps {
    double rate = 1.0;  // mean 1/rate, strictly positive sizes
};
struct ConstantJumps {
    double value = 1.0;
};

using JumpSizeDist = std::variant<NormalJumps, ExponentialJumps, ConstantJumps>;

struct CompoundPoisson {
    double rate = 0.0;  // jumps per unit time
    JumpSizeDist size = NormalJumps{};
};

/// Raw moment E(J^k) of a jump-size law.
inline double jump_raw_moment(const JumpSizeDist& law, int k) {
    if (k < 0) throw spec_error("jump_raw_moment: negative order");
    if (k == 0) return 1.0;
    if (std::holds_alternative<NormalJumps>(law)) {
        const auto& n = std::get<NormalJumps>(law);
        // m_k = mu m_{k-1} + (k-1) v m_{k-2}
        double m0 = 1.0, m1 = n.mean;
        for (int j = 2; j <= k; ++j) {
            const double m2 = n.mean * m1 + (j - 1) * n.var * m0;
            m0 = m1;
            m1 = m2;
        }
        return (k == 0) ? m0 : m1;
    }
    if (std::holds_alternative<ExponentialJumps>(law)) {
        const auto& e = std::get<ExponentialJumps>(law);
        double m = 1.0;
        for (int j = 1; j <= k; ++j) m *= j / e.rate;
        return m;
    }
    const auto& c = std::get<ConstantJumps>(law);
    return std::pow(c.value, k);
}

inline bool jump_law_nonnegative(const JumpSizeDist& law) {
    if (std::holds_alternative<NormalJumps>(law))
        return std::get<NormalJumps>(law).var == 0.0 && std::get<NormalJumps>(law).mean >= 0.0;
    if (std::holds_alternative<ExponentialJumps>(law)) return true;
    return std::get<ConstantJumps>(law).value >= 0.0;
}

// ---------------------------------------------------------------------------
// LevySpec
// ---------------------------------------------------------------------------

/// Characteristic description of the driving Levy process: drift, Gaussian
/// variance and (optional) compound-Poisson jump component.
struct LevySpec {
    double drift = 0.0;
    double gaussian_var = 0.0;
    std::optional<CompoundPoisson> jumps;

    void validate() const {
        if (!(gaussian_var >= 0.0)) throw spec_error("LevySpec: gaussian_var must be >= 0");
        if (!std::isfinite(drift)) throw spec_error("LevySpec: non-finite drift");
        if (jumps) {
            if (!(jumps->rate > 0.0)) throw spec_error("LevySpec: jump rate must be > 0");
            if (std::holds_alternative<NormalJumps>(jumps->size) &&
                !(std::get<NormalJumps>(jumps->size).var >= 0.0))
                throw spec_error("LevySpec: jump-size variance must be >= 0");
            if (std::holds_alternative<ExponentialJumps>(jumps->size) &&
                !(std::get<ExponentialJumps>(jumps->size).rate > 0.0))
                throw spec_error("LevySpec: exponential jump rate must be > 0");
        }
    }

    /// True iff the spec describes an a.s. non-decreasing process.
    bool is_subordinator() const {
        return gaussian_var == 0.0 && drift >= 0.0 && (!jumps || jump_law_nonnegative(jumps->size));
    }

    double jump_rate() const { return jumps ? jumps->rate : 0.0; }
    double jump_moment(int k) const { return jumps ? jump_raw_moment(jumps->size, k) : 0.0; }

    /// k-th cumulant of L_1.
    double cumulant(int k) const {
        if (k < 1) throw spec_error("LevySpec: cumulant order must be >= 1");
        double c = 0.0;
        if (k == 1) c += drift;
        if (k == 2) c += gaussian_var;
        if (jumps) c += jumps->rate * jump_moment(k);
        return c;
    }

    double mean() const { return cumulant(1); }
    double variance() const { return cumulant(2); }
};

struct Jump {
    double time;
    double size;
};

/// Grid path plus the exact jump record that produced it. The grid values
/// are exact samples of the process (jumps enter at the first grid point at
/// or after their time), so squared-jump functionals stay exact.
struct LevyPath {
    SamplePath path;
    std::vector<Jump> jumps;
};

namespace detail {

inline std::vector<Jump> draw_jumps(const LevySpec& spec, double t0, double t1,
                                    std::mt19937_64& eng) {
    std::vector<Jump> out;
    if (!spec.jumps) return out;
    double t = t0;
    for (;;) {
        t += exponential_sample(eng, spec.jumps->rate);
        if (t > t1) break;
        double size = 0.0;
        if (std::holds_alternative<NormalJumps>(spec.jumps->size)) {
            const auto& n = std::get<NormalJumps>(spec.jumps->size);
            size = n.mean + std::sqrt(n.var) * normal_sample(eng);
        } else if (std::holds_alternative<ExponentialJumps>(spec.jumps->size)) {
            size = exponential_sample(eng, std::get<ExponentialJumps>(spec.jumps->size).rate);
        } else {
            size = std::get<ConstantJumps>(spec.jumps->size).value;
        }
        out.push_back({t, size});
    }
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Path generation
// ---------------------------------------------------------------------------

/// Simulates a one-sided Levy path on the grid, starting at 0 at t_start.
/// Jump times are exact (exponential inter-arrivals); a jump contributes to
/// every grid value at or after its time. Deterministic for a fixed seed.
inline LevyPath simulate_levy(const LevySpec& spec, const PathGrid& grid, std::uint64_t seed) {
    spec.validate();
    grid.validate();
    auto eng = make_engine(seed);

    LevyPath out;
    out.path.grid = grid;
    out.path.kind = spec.jumps ? PathKind::cadlag : PathKind::continuous;
    out.path.values.assign(grid.n_points, 0.0);
    out.jumps = detail::draw_jumps(spec, grid.t_start, grid.t_end(), eng);

    const double sigma = std::sqrt(spec.gaussian_var);
    double level = 0.0;
    std::size_t j = 0;
    for (std::size_t k = 1; k < grid.n_points; ++k) {
        double inc = spec.drift * grid.step;
        if (sigma > 0.0) inc += sigma * std::sqrt(grid.step) * normal_sample(eng);
        level += inc;
        double v = level;
        while (j < out.jumps.size() && out.jumps[j].time <= grid.time(k) + 1e-12 * grid.step) {
            level += out.jumps[j].size;
            v = level;
            ++j;
        }
        out.path.values[k] = v;
    }
    return out;
}

/// Two-sided Levy path L_t = -L1_{(-t)-} for t<0, L2_t for t>=0, built from
/// two independent sub-streams of the seed. Grid must contain 0; L_0 = 0.
inline LevyPath two_sided(const LevySpec& spec, const PathGrid& grid, std::uint64_t seed) {
    spec.validate();
    grid.validate();
    if (!grid.contains_origin())
        throw spec_error("two_sided: grid must span t_start < 0 < t_end and contain 0");

    const std::size_t k0 = grid.index_of(0.0);
    const double span_neg = -grid.t_start;

    LevyPath out;
    out.path.grid = grid;
    out.path.kind = spec.jumps ? PathKind::cadlag : PathKind::continuous;
    out.path.values.assign(grid.n_points, 0.0);

    // Positive half on [0, t_end].
    if (k0 + 1 < grid.n_points) {
        PathGrid gpos(0.0, grid.step, grid.n_points - k0);
        LevyPath pos = simulate_levy(spec, gpos, substream(seed, streams::positive_half));
        for (std::size_t k = 0; k < gpos.n_points; ++k)
            out.path.values[k0 + k] = pos.path.values[k];
        out.jumps = std::move(pos.jumps);
    }

    // Negative half: mirror an independent copy on [0, span_neg].
    if (k0 > 0) {
        auto eng = make_engine(substream(seed, streams::negative_half));
        auto jumps1 = detail::draw_jumps(spec, 0.0, span_neg, eng);
        // Brownian levels of the mirror copy at u = step, 2*step, ...
        const double sigma = std::sqrt(spec.gaussian_var);
        std::vector<double> bm(k0 + 1, 0.0);
        for (std::size_t k = 1; k <= k0; ++k)
            bm[k] = bm[k - 1] + (sigma > 0.0 ? sigma * std::sqrt(grid.step) * normal_sample(eng) : 0.0);
        // L(-u) = -(drift*u + BM1(u) + sum_{tau < u} J); strict inequality is
        // the left limit, so the mirrored path is cadlag at its jump times.
        std::vector<Jump> neg_jumps;
        double jump_sum = 0.0;
        std::size_t j1 = 0;
        for (std::size_t k = 1; k <= k0; ++k) {
            const double u = grid.step * static_cast<double>(k);
            while (j1 < jumps1.size() && jumps1[j1].time < u - 1e-12 * grid.step) {
                jump_sum += jumps1[j1].size;
                ++j1;
            }
            out.path.values[k0 - k] = -(spec.drift * u + bm[k] + jump_sum);
        }
        for (const auto& jp : jumps1) neg_jumps.push_back({-jp.time, jp.size});
        std::sort(neg_jumps.begin(), neg_jumps.end(),
                  [](const Jump& x, const Jump& y) { return x.time < y.time; });
        out.jumps.insert(out.jumps.begin(), neg_jumps.begin(), neg_jumps.end());
    }
    return out;
}

/// Discrete quadratic variation: the running sum of squared jumps of L,
/// evaluated on the same grid (negative branch anchored so that S_0 = 0).
/// The result is a subordinator path; its jump record carries the squared
/// sizes at the exact original times.
inline LevyPath quadratic_variation_discrete(const LevyPath& levy) {
    const PathGrid& grid = levy.path.grid;
    grid.validate();
    for (const auto& jp : levy.jumps) {
        if (jp.time < grid.t_start - 1e-12 || jp.time > grid.t_end() + 1e-12)
            throw data_error("quadratic_variation_discrete: jump outside grid span");
    }

    LevyPath out;
    out.path.grid = grid;
    out.path.kind = PathKind::cadlag;
    out.path.values.assign(grid.n_points, 0.0);
    out.jumps.reserve(levy.jumps.size());
    for (const auto& jp : levy.jumps) out.jumps.push_back({jp.time, jp.size * jp.size});

    // Cumulative sum of squared jumps along the grid, re-anchored so that the
    // path vanishes at 0 (two-sided grids) or at t_start (one-sided grids).
    // S_t - S_anchor then counts jumps in (anchor, t] for t >= anchor and
    // -(jumps in (t, anchor]) otherwise.
    const double anchor = (grid.t_start <= 0.0 && grid.t_end() >= 0.0) ? 0.0 : grid.t_start;
    double cum = 0.0;
    std::size_t j = 0;
    for (std::size_t k = 0; k < grid.n_points; ++k) {
        const double t = grid.time(k);
        while (j < out.jumps.size() && out.jumps[j].time <= t + 1e-12 * grid.step) {
            cum += out.jumps[j].size;
            ++j;
        }
        out.path.values[k] = cum;
    }
    const double base = out.path.values[grid.index_of(anchor)];
    for (double& v : out.path.values) v -= base;
    return out;
}

}  // namespace ficogarch
