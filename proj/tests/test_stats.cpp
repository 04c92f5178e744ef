#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "ficogarch/levy.hpp"
#include "ficogarch/parallel.hpp"
#include "ficogarch/stats.hpp"

using namespace ficogarch;

TEST_CASE("sample acf: degenerate and alternating series", "[stats]") {
    std::vector<double> constant(100, 3.0);
    REQUIRE_THROWS_AS(sample_acf(constant, 5), data_error);
    std::vector<double> shorty(10, 0.0);
    REQUIRE_THROWS_AS(sample_acf(shorty, 5), data_error);

    std::vector<double> alt(1000);
    for (std::size_t i = 0; i < alt.size(); ++i) alt[i] = (i % 2) ? 1.0 : -1.0;
    auto acf = sample_acf(alt, 2);
    REQUIRE(acf[0] == 1.0);
    REQUIRE(acf[1] == Catch::Approx(-(1000.0 - 1.0) / 1000.0).epsilon(1e-12));
}

TEST_CASE("sample acf of a synthetic AR(1)", "[stats]") {
    std::mt19937_64 eng(7);
    const std::size_t n = 100000;
    std::vector<double> x(n);
    double prev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        prev = 0.9 * prev + normal_sample(eng);
        x[i] = prev;
    }
    auto acf = sample_acf(x, 10);
    for (std::size_t k = 1; k <= 10; ++k) {
        REQUIRE(acf[k] == Catch::Approx(std::pow(0.9, k)).margin(0.02));
        REQUIRE(acf[k] <= 1.0);
        REQUIRE(acf[k] >= -1.0);
    }
}

TEST_CASE("log-log slope: exact power laws and scale invariance", "[stats]") {
    std::vector<double> x, y, y2, yc;
    for (double v = 1.0; v <= 128.0; v *= 2.0) {
        x.push_back(v);
        y.push_back(v * v);
        y2.push_back(3.7 * std::pow(v, -1.25));
        yc.push_back(0.001 * std::pow(v, -1.25));
    }
    auto f1 = loglog_slope(x, y);
    REQUIRE(f1.slope == Catch::Approx(2.0).margin(1e-12));
    REQUIRE(f1.stderr_ == Catch::Approx(0.0).margin(1e-12));
    REQUIRE(loglog_slope(x, y2).slope == Catch::Approx(-1.25).margin(1e-12));
    REQUIRE(loglog_slope(x, y2).slope == Catch::Approx(loglog_slope(x, yc).slope).margin(1e-13));

    std::vector<double> bad = {1.0, -2.0, 3.0};
    REQUIRE_THROWS_AS(loglog_slope(x, bad), data_error);
    std::vector<double> two = {1.0, 2.0};
    REQUIRE_THROWS_AS(loglog_slope(two, two), data_error);
}

TEST_CASE("increment covariance estimator on independent-increment input", "[stats]") {
    LevySpec bm;
    bm.gaussian_var = 1.0;
    const std::size_t n = 4000;
    std::vector<SamplePath> paths(n);
    parallel_for(n, [&](std::size_t i) {
        paths[i] = simulate_levy(bm, PathGrid(0.0, 0.5, 15), ensemble_seed(3, i)).path;
    });
    auto est = increment_cov_mc(paths, 1.0, 5.0, 0.0);
    REQUIRE(est.estimate == Catch::Approx(0.0).margin(3.0 * est.stderr_));
    REQUIRE(est.stderr_ > 0.0);
    REQUIRE_THROWS_AS(increment_cov_mc(paths, 1.0, 50.0, 0.0), data_error);  // beyond span
    REQUIRE_THROWS_AS(increment_cov_mc(paths, 0.7, 2.0, 0.0), data_error);   // off-grid
}

TEST_CASE("increment covariance estimator is exact on constant paths", "[stats]") {
    std::vector<SamplePath> paths(10);
    for (auto& p : paths) {
        p.grid = PathGrid(0.0, 1.0, 10);
        p.values.assign(10, 1.0);
    }
    auto est = increment_cov_mc(paths, 1.0, 3.0, 0.0);
    REQUIRE(est.estimate == 0.0);
    REQUIRE(est.stderr_ == 0.0);
}

TEST_CASE("two-sample KS distinguishes shifted samples", "[stats]") {
    std::mt19937_64 eng(11);
    std::vector<double> a(3000), b(3000), c(3000);
    for (auto& v : a) v = normal_sample(eng);
    for (auto& v : b) v = normal_sample(eng);
    for (auto& v : c) v = 0.3 + normal_sample(eng);
    REQUIRE(two_sample_ks(a, b).p_value >= 0.01);
    REQUIRE(two_sample_ks(a, c).p_value < 1e-3);
    REQUIRE_THROWS_AS(two_sample_ks({1.0}, a), data_error);
}

TEST_CASE("Kolmogorov tail values", "[stats]") {
    REQUIRE(detail::kolmogorov_q(1.628) == Catch::Approx(0.01).margin(0.002));
    REQUIRE(detail::kolmogorov_q(0.5) == Catch::Approx(0.9639).margin(0.01));
    REQUIRE(detail::kolmogorov_q(3.0) < 1e-6);
}

TEST_CASE("moment estimates with standard errors", "[stats]") {
    std::mt19937_64 eng(13);
    std::vector<double> xs(20000);
    for (auto& v : xs) v = 2.0 + 3.0 * normal_sample(eng);
    auto m = moments_with_stderr(xs);
    REQUIRE(m.mean == Catch::Approx(2.0).margin(4.0 * m.mean_se));
    REQUIRE(m.var == Catch::Approx(9.0).margin(4.0 * m.var_se));
    REQUIRE(m.mean_se == Catch::Approx(3.0 / std::sqrt(20000.0)).epsilon(0.05));
}
