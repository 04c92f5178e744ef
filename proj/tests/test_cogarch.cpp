#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ficogarch/cogarch.hpp"
#include "ficogarch/parallel.hpp"
#include "test_util.hpp"

using namespace ficogarch;

namespace {

Cogarch11Params classic_params() { return {0.04, 0.06, 0.5, 1.0, 0.0}; }

FicogarchParams figure2_params(double d) {
    FicogarchParams p;
    p.alpha0 = 0.0195;
    p.alpha1 = 0.0105;
    p.beta1 = 0.0513;
    p.kernel = {KernelFamily::ModifiedMvN, d, 1.0};
    p.driver = testutil::figure_driver();
    p.sigma0_sq = 1.0;
    return p;
}

double no_jump_sigma2(double a0, double b1, double s0, double t) {
    return std::exp(-b1 * t) * s0 + a0 * (1.0 - std::exp(-b1 * t));
}

}  // namespace

TEST_CASE("classic model without jumps reverts to alpha0 exactly", "[cogarch]") {
    auto params = classic_params();
    LevySpec drift_only;
    drift_only.drift = 0.7;
    auto lp = simulate_levy(drift_only, PathGrid(0.0, 0.1, 101), 1);
    auto vol = cogarch11(params, lp);
    double prev = params.sigma0_sq;
    for (std::size_t k = 0; k < vol.grid.n_points; ++k) {
        const double want = no_jump_sigma2(params.alpha0, params.beta1, params.sigma0_sq,
                                           vol.grid.time(k));
        REQUIRE(vol.sigma_sq[k] == Catch::Approx(want).epsilon(1e-12));
        REQUIRE(vol.sigma_sq[k] <= prev + 1e-15);  // monotone from above toward alpha0
        prev = vol.sigma_sq[k];
    }
    // from below as well
    params.sigma0_sq = 0.001;
    auto vol2 = cogarch11(params, lp);
    for (std::size_t k = 1; k < vol2.grid.n_points; ++k)
        REQUIRE(vol2.sigma_sq[k] >= vol2.sigma_sq[k - 1] - 1e-15);
}

TEST_CASE("a single jump multiplies sigma^2 and shifts X and G", "[cogarch]") {
    auto params = classic_params();
    LevyPath lp;
    lp.path.grid = PathGrid(0.0, 0.25, 5);
    lp.path.values = {0, 0, 2, 2, 2};
    lp.jumps = {{0.5, 2.0}};
    auto vol = cogarch11(params, lp);
    const double pre = no_jump_sigma2(params.alpha0, params.beta1, params.sigma0_sq, 0.5);
    const double mult = 1.0 + params.alpha1 * 4.0;
    REQUIRE(vol.sigma_sq[2] == Catch::Approx(pre * mult).epsilon(1e-12));
    REQUIRE(vol.X[2] == Catch::Approx(params.beta1 * 0.5 - std::log(mult)).epsilon(1e-12));
    REQUIRE(vol.G[2] == Catch::Approx(std::sqrt(pre) * 2.0).epsilon(1e-12));
    REQUIRE(vol.driver.values[2] == Catch::Approx(4.0));
    REQUIRE_THROWS_AS(cogarch11({0.04, 0.06, 0.5, -1.0, 0.0}, lp), spec_error);
}

TEST_CASE("explicit classic solution agrees with a direct Euler pass", "[cogarch]") {
    auto params = classic_params();
    LevySpec spec = testutil::figure_driver();
    std::vector<double> sup_gap;
    for (double step : {0.01, 0.005}) {
        auto grid = PathGrid::from_range(0.0, 20.0, step);
        auto lp = simulate_levy(spec, grid, 42);  // same jumps for both steps
        auto vol = cogarch11(params, lp);
        auto qv = quadratic_variation_discrete(lp);
        double sig2 = params.sigma0_sq, gap = 0.0;
        for (std::size_t k = 1; k < grid.n_points; ++k) {
            const double ds = qv.path.values[k] - qv.path.values[k - 1];
            sig2 += -params.beta1 * (sig2 - params.alpha0) * step + params.alpha1 * sig2 * ds;
            gap = std::max(gap, std::abs(sig2 - vol.sigma_sq[k]));
        }
        sup_gap.push_back(gap);
    }
    REQUIRE(sup_gap[0] / sup_gap[1] == Catch::Approx(2.0).margin(1.0));
    REQUIRE(sup_gap[1] < 0.05);
}

TEST_CASE("fractional model reduces to the deterministic flow without jumps", "[cogarch]") {
    auto params = figure2_params(-0.4);
    params.driver = LevySpec{};  // no jumps: S^{a,d} vanishes
    params.sigma0_sq = 2.0;
    FicogarchRunConfig run;
    run.grid = PathGrid(0.0, 0.05, 201);
    run.past_horizon = 30.0;
    auto res = ficogarch_1d1(params, run, 9);
    for (std::size_t k = 0; k < run.grid.n_points; ++k) {
        const double want = no_jump_sigma2(params.alpha0, params.beta1, 2.0, run.grid.time(k));
        REQUIRE(res.vol.sigma_sq[k] == Catch::Approx(want).epsilon(1e-7));
        REQUIRE(res.vol.driver.values[k] == 0.0);
    }
}

TEST_CASE("fractional volatility stays positive and clusters", "[cogarch]") {
    auto params = figure2_params(-0.4);
    FicogarchRunConfig run;
    run.grid = PathGrid(0.0, 0.1, 501);
    run.past_horizon = 120.0;
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        auto res = ficogarch_1d1(params, run, seed);
        for (double v : res.vol.sigma_sq) REQUIRE(v > 0.0);
    }
}

TEST_CASE("explicit fractional solution tracks an Euler pass of its SDE", "[cogarch]") {
    auto params = figure2_params(-0.25);
    std::vector<double> sup_gap;
    for (double step : {0.02, 0.01}) {
        FicogarchRunConfig run;
        run.grid = PathGrid::from_range(0.0, 10.0, step);
        run.past_horizon = 60.0;
        auto res = ficogarch_1d1(params, run, 11);
        const auto& sad = res.vol.driver.values;
        double sig2 = *params.sigma0_sq, gap = 0.0;
        for (std::size_t k = 1; k < run.grid.n_points; ++k) {
            const double ds = sad[k] - sad[k - 1];
            sig2 += -params.beta1 * (sig2 - params.alpha0) * step + params.alpha1 * sig2 * ds;
            gap = std::max(gap, std::abs(sig2 - res.vol.sigma_sq[k]));
        }
        sup_gap.push_back(gap);
    }
    REQUIRE(sup_gap[1] < sup_gap[0]);
    REQUIRE(sup_gap[1] < 2e-3);
}

TEST_CASE("stationary initialization produces a positive starting level", "[cogarch]") {
    auto params = figure2_params(-0.4);
    params.sigma0_sq.reset();
    FicogarchRunConfig run;
    run.grid = PathGrid(0.0, 0.1, 101);
    run.init_window = 50.0;
    run.past_horizon = 150.0;
    auto res = ficogarch_1d1(params, run, 3);
    REQUIRE(res.sigma0_sq_used > 0.0);
    REQUIRE(res.vol.sigma_sq[0] == Catch::Approx(res.sigma0_sq_used));
    REQUIRE(res.truncation_bound > 0.0);
    REQUIRE(res.init_window == 50.0);
}

TEST_CASE("state-space form with p = q = 1 matches the explicit solution", "[cogarch]") {
    auto params = figure2_params(-0.25);
    std::vector<double> gaps;
    for (double step : {0.02, 0.01}) {
        FicogarchRunConfig run;
        run.grid = PathGrid::from_range(0.0, 10.0, step);
        run.past_horizon = 60.0;
        auto explicit_res = ficogarch_1d1(params, run, 19);

        FicogarchPdqParams pq;
        pq.p = pq.q = 1;
        pq.a_vec = {params.alpha1};
        pq.b_vec = {params.beta1};
        pq.alpha0 = params.alpha0;
        pq.kernel = params.kernel;
        pq.driver = params.driver;
        pq.y0 = {(*params.sigma0_sq - params.alpha0) / params.alpha1};
        auto state_res = ficogarch_pdq(pq, run, 19);

        double gap = 0.0;
        for (std::size_t k = 0; k < run.grid.n_points; ++k)
            gap = std::max(gap, std::abs(state_res.vol.sigma_sq[k] - explicit_res.vol.sigma_sq[k]));
        gaps.push_back(gap);
    }
    REQUIRE(gaps[1] < gaps[0]);
    REQUIRE(gaps[1] < 2e-3);
}

TEST_CASE("state recursion without driving mass follows the linear flow", "[cogarch]") {
    FicogarchPdqParams pq;
    pq.p = 1;
    pq.q = 2;
    pq.a_vec = {0.3, 0.0};
    pq.b_vec = {3.0, 2.0};  // companion eigenvalues -1 and -2
    pq.alpha0 = 1.0;
    pq.kernel = {KernelFamily::ModifiedMvN, -0.25, 1.0};
    pq.driver = LevySpec{};  // no jumps: dS^{a,d} = 0
    pq.y0 = {1.0, 0.0};
    FicogarchRunConfig run;
    run.grid = PathGrid(0.0, 0.001, 2001);
    run.past_horizon = 10.0;
    auto res = ficogarch_pdq(pq, run, 1);
    // Y' = B Y with Y(0) = (1, 0): Y1(t) = 2 e^{-t} - e^{-2t}
    for (double t : {0.5, 1.0, 2.0}) {
        const double y1 = 2.0 * std::exp(-t) - std::exp(-2.0 * t);
        const double got = (res.vol.sigma_sq[run.grid.index_of(t)] - pq.alpha0) / pq.a_vec[0];
        REQUIRE(got == Catch::Approx(y1).margin(5e-3));
    }
    REQUIRE_FALSE(res.vol.nonneg_flag);
}

TEST_CASE("adversarial second-order coefficients trip the positivity flag", "[cogarch]") {
    FicogarchPdqParams pq;
    pq.p = 2;
    pq.q = 2;
    pq.a_vec = {1.0, -40.0};
    pq.b_vec = {2.0, 1.0};
    pq.alpha0 = 0.01;
    pq.kernel = {KernelFamily::ModifiedMvN, -0.25, 1.0};
    pq.driver = testutil::figure_driver();
    FicogarchRunConfig run;
    run.grid = PathGrid(0.0, 0.05, 201);
    run.past_horizon = 30.0;
    bool tripped = false;
    for (std::uint64_t seed = 0; seed < 10 && !tripped; ++seed)
        tripped = ficogarch_pdq(pq, run, seed).vol.nonneg_flag;
    REQUIRE(tripped);
}

TEST_CASE("order-constraint validation for the state form", "[cogarch]") {
    FicogarchPdqParams pq;
    pq.p = 2;
    pq.q = 1;  // q < p
    pq.a_vec = {1.0};
    pq.b_vec = {1.0};
    pq.alpha0 = 1.0;
    REQUIRE_THROWS_AS(pq.validate(), spec_error);
    pq.p = 1;
    pq.q = 2;
    pq.a_vec = {0.5, 0.1};  // alpha_2 must vanish when p = 1
    pq.b_vec = {1.0, 1.0};
    REQUIRE_THROWS_AS(pq.validate(), spec_error);
    pq.a_vec = {0.5, 0.0};
    pq.b_vec = {1.0, 0.0};  // beta_q = 0
    REQUIRE_THROWS_AS(pq.validate(), spec_error);
}

TEST_CASE("stationary check on a degenerate constant ensemble", "[cogarch]") {
    auto params = figure2_params(-0.4);
    params.driver = LevySpec{};
    params.sigma0_sq = params.alpha0;  // fixed point of the deterministic flow
    FicogarchRunConfig run;
    run.grid = PathGrid(0.0, 0.5, 101);
    run.past_horizon = 10.0;
    std::vector<VolatilityPath> ensemble(1000);
    parallel_for(ensemble.size(), [&](std::size_t i) {
        ensemble[i] = ficogarch_1d1(params, run, ensemble_seed(1, i)).vol;
    });
    auto rep = stationary_check(ensemble, 10.0, 40.0, 5.0);
    REQUIRE(rep.ks.statistic == 0.0);
    REQUIRE(rep.ks_pass);
    REQUIRE(rep.moments_pass);

    REQUIRE_THROWS_AS(stationary_check(ensemble, 1.0, 40.0, 5.0), spec_error);
    std::vector<VolatilityPath> small(10);
    for (auto& v : small) v = ensemble[0];
    REQUIRE_THROWS_AS(stationary_check(small, 10.0, 40.0, 5.0), data_error);
}

TEST_CASE("far-from-stationary start is detected", "[cogarch]") {
    auto params = figure2_params(-0.4);
    params.sigma0_sq = 100.0 * params.alpha0;
    FicogarchRunConfig run;
    run.grid = PathGrid(0.0, 0.1, 1001);  // [0, 100]
    run.past_horizon = 120.0;
    std::vector<VolatilityPath> ensemble(1000);
    parallel_for(ensemble.size(), [&](std::size_t i) {
        ensemble[i] = ficogarch_1d1(params, run, ensemble_seed(2, i)).vol;
    });
    auto rep = stationary_check(ensemble, 1.0, 100.0, 0.0);
    REQUIRE_FALSE(rep.ks_pass);
}
