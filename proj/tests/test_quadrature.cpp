#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ficogarch/quadrature.hpp"

using namespace ficogarch;

TEST_CASE("Gauss-Legendre rules integrate polynomials exactly", "[quadrature]") {
    // degree 2n-1 exactness
    auto check = [](const quad::Rule& r, int degree) {
        double s = 0.0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i)
            s += r.weights[i] * std::pow(r.nodes[i], degree);
        const double exact = (degree % 2) ? 0.0 : 2.0 / (degree + 1);
        REQUIRE(s == Catch::Approx(exact).margin(1e-13));
    };
    for (int deg = 0; deg <= 13; ++deg) check(quad::rule7(), deg);
    for (int deg = 0; deg <= 29; ++deg) check(quad::rule15(), deg);
}

TEST_CASE("adaptive quadrature on smooth integrands", "[quadrature]") {
    auto r = quad::integrate_adaptive([](double x) { return std::exp(x); }, 0.0, 1.0, 1e-12);
    REQUIRE(r.value == Catch::Approx(std::exp(1.0) - 1.0).epsilon(1e-12));
    auto s = quad::integrate_adaptive([](double x) { return std::sin(x); }, 0.0, M_PI, 1e-12);
    REQUIRE(s.value == Catch::Approx(2.0).epsilon(1e-12));
    auto osc = quad::integrate_adaptive([](double x) { return std::cos(20.0 * x); }, 0.0, 1.0, 1e-12);
    REQUIRE(osc.value == Catch::Approx(std::sin(20.0) / 20.0).margin(1e-11));
}

TEST_CASE("tanh-sinh handles endpoint singularities", "[quadrature]") {
    auto a = quad::integrate_tanh_sinh(
        [](double x, double dist) { return 1.0 / std::sqrt(x < dist ? dist : x); }, 0.0, 1.0, 1e-12);
    REQUIRE(a.value == Catch::Approx(2.0).epsilon(1e-10));
    auto b = quad::integrate_tanh_sinh(
        [](double x, double dist) {
            const double xx = (x < dist) ? dist : x;
            return std::pow(xx, -0.9);
        },
        0.0, 1.0, 1e-12);
    REQUIRE(b.value == Catch::Approx(10.0).epsilon(1e-9));
    auto c = quad::integrate_tanh_sinh(
        [](double x, double dist) { return std::log(x < dist ? dist : x); }, 0.0, 1.0, 1e-12);
    REQUIRE(c.value == Catch::Approx(-1.0).margin(1e-10));
    // singularity at a nonzero right endpoint: the exact distance matters
    auto dce = quad::integrate_tanh_sinh(
        [](double x, double dist) { return std::pow(x > 0.75 ? dist : 1.0 - x, -0.9); }, 0.5,
        1.0, 1e-12);
    REQUIRE(dce.value == Catch::Approx(std::pow(0.5, 0.1) / 0.1).epsilon(1e-9));
}

TEST_CASE("adaptive quadrature reports an unreachable tolerance", "[quadrature]") {
    REQUIRE_THROWS_AS(quad::integrate_adaptive(
                          [](double x) { return std::pow(std::abs(x - 0.3), -0.95); }, 0.0, 1.0,
                          1e-13, 0.0, 16),
                      tolerance_error);
}
