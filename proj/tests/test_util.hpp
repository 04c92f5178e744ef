#pragma once

#include <cstdint>
#include <vector>

#include "ficogarch/frac_subordinator.hpp"
#include "ficogarch/parallel.hpp"
#include "ficogarch/rng.hpp"

namespace testutil {

inline std::vector<ficogarch::SamplePath> frac_ensemble(const ficogarch::FracSubConfig& cfg,
                                                        std::uint64_t base_seed, std::size_t n) {
    ficogarch::FracPathEngine eng(cfg);
    std::vector<ficogarch::SamplePath> out(n);
    ficogarch::parallel_for(n, [&](std::size_t i) {
        out[i] = eng.path(ficogarch::ensemble_seed(base_seed, i));
    });
    return out;
}

/// Compound-Poisson driver of the volatility figures: rate 5, N(0, 0.5) jumps.
inline ficogarch::LevySpec figure_driver() {
    ficogarch::LevySpec spec;
    spec.jumps = ficogarch::CompoundPoisson{5.0, ficogarch::NormalJumps{0.0, 0.5}};
    return spec;
}

}  // namespace testutil
