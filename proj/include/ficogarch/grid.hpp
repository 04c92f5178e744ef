#pragma once

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "ficogarch/errors.hpp"

namespace ficogarch {

/// Uniform time grid t_k = t_start + k * step, k = 0 .. n_points-1.
struct PathGrid {
    double t_start = 0.0;
    double step = 0.0;
    std::size_t n_points = 0;

    PathGrid() = default;
    PathGrid(double t0, double dt, std::size_t n) : t_start(t0), step(dt), n_points(n) {
        validate();
    }

    /// Builds the grid covering [t0, t1] with the given step. t1 - t0 must be
    /// an integer multiple of the step up to one rounding unit.
    static PathGrid from_range(double t0, double t1, double dt) {
        if (!(dt > 0.0)) throw spec_error("PathGrid: step must be positive");
        if (!(t1 > t0)) throw spec_error("PathGrid: t_end must exceed t_start");
        const double k = (t1 - t0) / dt;
        const auto n = static_cast<std::size_t>(std::llround(k));
        if (n < 1 || std::abs(k - static_cast<double>(n)) > 1e-9 * (1.0 + k))
            throw spec_error("PathGrid: span is not a whole number of steps");
        return PathGrid(t0, dt, n + 1);
    }

    void validate() const {
        if (!(step > 0.0)) throw spec_error("PathGrid: step must be positive");
        if (n_points < 2) throw spec_error("PathGrid: degenerate grid (n_points < 2)");
        if (!std::isfinite(t_start)) throw spec_error("PathGrid: non-finite t_start");
    }

    double t_end() const { return t_start + step * static_cast<double>(n_points - 1); }
    double time(std::size_t k) const { return t_start + step * static_cast<double>(k); }

    /// Index of the grid point equal to t (within a rounding tolerance).
    std::size_t index_of(double t) const {
        const double k = (t - t_start) / step;
        const auto i = static_cast<long long>(std::llround(k));
        if (i < 0 || static_cast<std::size_t>(i) >= n_points ||
            std::abs(k - static_cast<double>(i)) > 1e-6)
            throw data_error("PathGrid: time is not a grid point");
        return static_cast<std::size_t>(i);
    }

    bool contains_origin() const {
        if (t_start > 0.0 || t_end() < 0.0) return false;
        const double k = -t_start / step;
        return std::abs(k - std::round(k)) < 1e-9 * (1.0 + std::abs(k));
    }
};

enum class PathKind { cadlag, continuous };

/// A process sampled on a uniform grid.
struct SamplePath {
    PathGrid grid;
    std::vector<double> values;
    PathKind kind = PathKind::cadlag;

    double at_time(double t) const { return values[grid.index_of(t)]; }
};

/// Normalizes negative zero for serialization.
inline double csv_num(double x) { return x == 0.0 ? 0.0 : x; }

/// Serializes "t,value" rows at full double precision (17 significant digits).
inline void write_csv(const SamplePath& p, std::ostream& os) {
    os << "t,value\n";
    char buf[96];
    for (std::size_t k = 0; k < p.grid.n_points; ++k) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p.grid.time(k), csv_num(p.values[k]));
        os << buf;
    }
}

}  // namespace ficogarch
