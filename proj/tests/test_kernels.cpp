#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ficogarch/kernels.hpp"

using namespace ficogarch;

namespace {
KernelSpec modified(double a, double d) { return {KernelFamily::ModifiedMvN, d, a}; }
KernelSpec mvn(double d) { return {KernelFamily::MvN, d, 0.0}; }
KernelSpec mg(double d) { return {KernelFamily::MG, d, 0.0}; }
}  // namespace

// Golden values below were frozen from a 40-digit arbitrary-precision series
// evaluation (raw Gauss series after the Pfaff transformation).
TEST_CASE("restricted 2F1 against high-precision goldens", "[kernels]") {
    struct Case {
        double d, z, want;
    };
    const Case cases[] = {
        {0.25, -1.0, 1.0423938920291561182},
        {-0.3, -5.0, 1.3492913326221042714},
        {0.45, -0.01, 1.0013942870636474662},
        {-0.45, -100.0, 7.0330312371121687668},
        {0.25, -1e6, 15.832113533064349825},
        {-0.25, -0.5, 1.0371194109562044741},
        // cases at the series/connection boundary w = 0.7 (z = -7/3)
        {0.49, -7.0 / 3.0, 1.297537343522028525},
        {-0.49, -7.0 / 3.0, 1.775281408825858537},
        {0.25, -7.0 / 3.0, 1.0852408967077676029},
        {-0.25, -7.0 / 3.0, 1.1324148598580347445},
    };
    for (const auto& c : cases) {
        const double got = hyp2f1(-c.d, c.d, c.d + 1.0, c.z);
        REQUIRE(got == Catch::Approx(c.want).epsilon(1e-10));
    }
}

TEST_CASE("restricted 2F1 trivial values and domain errors", "[kernels]") {
    REQUIRE(hyp2f1(0.0, 0.0, 1.0, -7.3) == 1.0);
    REQUIRE(hyp2f1(-0.3, 0.3, 1.3, 0.0) == 1.0);
    REQUIRE_THROWS_AS(hyp2f1(-0.3, 0.3, 1.3, 0.5), spec_error);      // z > 0
    REQUIRE_THROWS_AS(hyp2f1(0.2, 0.3, 1.3, -1.0), spec_error);      // alpha != -beta
    REQUIRE_THROWS_AS(hyp2f1(-0.3, 0.3, 1.5, -1.0), spec_error);     // gamma != beta+1
    REQUIRE_THROWS_AS(hyp2f1(-0.7, 0.7, 1.7, -1.0), spec_error);     // d out of range
}

TEST_CASE("2F1 evaluation is continuous across the algorithm switch", "[kernels]") {
    for (double d : {-0.45, -0.1, 0.1, 0.45}) {
        // the raw series is used below w = 0.7 and the connection form above;
        // values a hair on either side must agree to the true local slope
        auto z_of_w = [](double w) { return w / (w - 1.0); };
        const double lo = hyp2f1(-d, d, d + 1.0, z_of_w(0.7 - 1e-9));
        const double hi = hyp2f1(-d, d, d + 1.0, z_of_w(0.7 + 1e-9));
        REQUIRE(lo == Catch::Approx(hi).epsilon(1e-7));
    }
}

TEST_CASE("modified kernel closed-form points and bounds", "[kernels]") {
    auto spec = modified(1.0, -0.25);
    REQUIRE(kernel_value(spec, 1.0, 1.0) == Catch::Approx(0.0).margin(1e-15));
    REQUIRE(kernel_value(spec, 0.0, -3.7) == Catch::Approx(0.0).margin(1e-15));
    REQUIRE(kernel_value(spec, 1.0, 0.0) ==
            Catch::Approx(0.15910358474628545697).epsilon(1e-14));  // 1 - 2^{-1/4}
    // 0 <= f <= a^d for t >= 0
    for (double a : {0.1, 1.0, 10.0}) {
        for (double d : {-0.45, -0.25, -0.05}) {
            auto sp = modified(a, d);
            const double cap = std::pow(a, d);
            for (double t : {0.0, 0.5, 3.0, 20.0}) {
                for (double s = -50.0; s <= t + 5.0; s += 0.37) {
                    const double f = kernel_value(sp, t, s);
                    REQUIRE(f >= -1e-15);
                    REQUIRE(f <= cap + 1e-12);
                }
            }
        }
    }
}

TEST_CASE("modified kernel is continuous in s", "[kernels]") {
    auto spec = modified(0.5, -0.4);
    const double t = 2.0;
    double prev_mod = 1e300;
    for (double h : {1e-2, 1e-3, 1e-4, 1e-5}) {
        double mod = 0.0;
        for (double s = -5.0; s <= t + 1.0; s += 0.01)
            mod = std::max(mod, std::abs(kernel_value(spec, t, s + h) - kernel_value(spec, t, s)));
        REQUIRE(mod < prev_mod + 1e-15);
        prev_mod = mod;
    }
    REQUIRE(prev_mod < 1e-4);
}

TEST_CASE("modified kernel tail law f ~ |d t| |s|^{d-1}", "[kernels]") {
    auto spec = modified(1.0, -0.25);
    const double t = 3.0;
    double last_ratio = 0.0;
    for (double s : {-1e3, -1e4, -1e6}) {
        const double f = kernel_value(spec, t, s);
        last_ratio = f * std::pow(-s, 1.0 - spec.d) / (std::abs(spec.d) * t);
    }
    REQUIRE(last_ratio == Catch::Approx(1.0).epsilon(0.01));
}

TEST_CASE("modified kernel grows in t for fixed s", "[kernels]") {
    auto spec = modified(2.0, -0.3);
    for (double s : {-10.0, -1.0, 0.4, 2.0}) {
        double prev = -1.0;
        for (double t : {0.0, 0.5, 1.0, 2.0, 4.0, 9.0}) {
            const double f = kernel_value(spec, t, s);
            REQUIRE(f >= prev - 1e-14);
            prev = f;
        }
    }
}

TEST_CASE("MvN kernel value and singular points", "[kernels]") {
    auto spec = mvn(-0.25);
    REQUIRE(kernel_value(spec, 1.0, -1.0) ==
            Catch::Approx(-0.12983631153893682389).epsilon(1e-13));
    REQUIRE_THROWS_AS(kernel_value(spec, 1.0, 1.0), singular_point_error);
    REQUIRE_THROWS_AS(kernel_value(spec, 1.0, 0.0), singular_point_error);
    // d > 0 has no singular points
    auto pos = mvn(0.25);
    REQUIRE(std::isfinite(kernel_value(pos, 1.0, 1.0)));
    REQUIRE(std::isfinite(kernel_value(pos, 1.0, 0.0)));
}

TEST_CASE("MG kernel goldens, d = 0 and domain errors", "[kernels]") {
    REQUIRE(kernel_value(mg(0.25), 1.0, 0.5) == Catch::Approx(0.9375919636980572333).epsilon(1e-12));
    REQUIRE(kernel_value(mg(-0.25), 1.0, 0.5) == Catch::Approx(0.820322623764752823).epsilon(1e-12));
    REQUIRE(kernel_value(mg(0.25), 2.0, 1e-8) == Catch::Approx(75.642308879949875047).epsilon(1e-11));
    REQUIRE(kernel_value(mg(-0.45), 3.0, 2.9) == Catch::Approx(0.68122938903127079802).epsilon(1e-12));
    for (double s : {0.0, 0.3, 1.0}) REQUIRE(kernel_value(mg(0.0), 1.0, s) == 1.0);
    REQUIRE_THROWS_AS(kernel_value(mg(0.25), 1.0, 2.0), spec_error);   // s > t
    REQUIRE_THROWS_AS(kernel_value(mg(0.25), 1.0, -0.1), spec_error);  // s < 0
    REQUIRE_THROWS_AS(kernel_value(mg(0.25), 1.0, 0.0), singular_point_error);
    REQUIRE_THROWS_AS(kernel_value(mg(-0.25), 1.0, 1.0), singular_point_error);
}

TEST_CASE("integrability classification matrix", "[kernels]") {
    using I = Integrability;
    REQUIRE(classify_integrability(mvn(0.25), 1.0) == I::non_integrable);
    REQUIRE(classify_integrability(mvn(0.25), 2.0) == I::integrable);
    REQUIRE(classify_integrability(mvn(-0.25), 1.0) == I::integrable);
    REQUIRE(classify_integrability(mvn(-0.25), 2.0) == I::integrable);
    REQUIRE(classify_integrability(modified(1.0, -0.25), 0.5) == I::non_integrable);  // 1/|d-1| = 0.8
    REQUIRE(classify_integrability(modified(1.0, -0.25), 0.9) == I::integrable);
    REQUIRE(classify_integrability(mg(-0.4), 2.0) == I::integrable);
    REQUIRE(classify_integrability(mg(-0.4), 3.0) == I::non_integrable);  // 3 * 0.4 > 1
    REQUIRE(classify_integrability(mg(0.45), 2.0) == I::integrable);
    REQUIRE(classify_integrability(mg(0.45), 3.0) == I::non_integrable);
}

TEST_CASE("kernel L1 norm matches the closed form a^d t", "[kernels]") {
    struct Case {
        double a, d, t, want;
    };
    const Case cases[] = {
        {1.0, -0.25, 1.0, 1.0},
        {0.5, -0.45, 3.0, 4.09812077026318656},
        // heavy-tail case: most of the mass sits beyond any practical cutoff
        {2.0, -0.05, 7.0, 6.76155430247391886},
    };
    for (const auto& c : cases) {
        const double got = kernel_norm(modified(c.a, c.d), c.t, 1.0, 1e-9 * c.want);
        REQUIRE(got == Catch::Approx(c.want).epsilon(1e-8));
    }
    REQUIRE(kernel_norm(modified(1.0, -0.25), 0.0, 1.0, 1e-8) == 0.0);
}

TEST_CASE("kernel L2 and higher norms against goldens", "[kernels]") {
    REQUIRE(kernel_norm(modified(1.0, -0.25), 1.0, 2.0, 1e-12) ==
            Catch::Approx(0.034077605849366358912).epsilon(1e-8));
    REQUIRE(kernel_norm(modified(1.0, -0.25), 1.0, 3.0, 1e-13) ==
            Catch::Approx(0.003330082101579648266).epsilon(1e-7));
    REQUIRE(kernel_norm(modified(1.0, -0.25), 1.0, 4.0, 1e-14) ==
            Catch::Approx(0.00039084953139469671931).epsilon(1e-7));
}

TEST_CASE("MG norms reproduce the fractional Brownian normalization", "[kernels]") {
    // with the normalizing constant, int_0^t f_MG(t,s)^2 ds = t^{2d+1}
    for (double d : {-0.45, -0.25, -0.05, 0.25, 0.45}) {
        const double v1 = kernel_norm(mg(d), 1.0, 2.0, 1e-10);
        REQUIRE(v1 == Catch::Approx(1.0).epsilon(1e-8));
        const double v8 = kernel_norm(mg(d), 8.0, 2.0, 1e-9);
        REQUIRE(v8 == Catch::Approx(std::pow(8.0, 2.0 * d + 1.0)).epsilon(1e-8));
    }
    REQUIRE(kernel_norm(mg(-0.25), 1.0, 1.0, 1e-11) ==
            Catch::Approx(0.956697836301383791).epsilon(1e-9));
    REQUIRE(kernel_norm(mg(0.25), 1.0, 1.0, 1e-11) ==
            Catch::Approx(0.9504611797752525).epsilon(1e-9));
}

TEST_CASE("kernel_norm raises diverges on non-integrable cells", "[kernels]") {
    REQUIRE_THROWS_AS(kernel_norm(mvn(0.25), 1.0, 1.0, 1e-8), diverges_error);
    REQUIRE_THROWS_AS(kernel_norm(modified(1.0, -0.25), 1.0, 0.5, 1e-8), diverges_error);
    REQUIRE_THROWS_AS(kernel_norm(mg(-0.4), 1.0, 3.0, 1e-8), diverges_error);
}

TEST_CASE("MvN L2 norm agrees with its fractional normalization", "[kernels]") {
    // int_R f_MvN(t,.)^2 = t^{2d+1} / (Gamma(2d+2) cos(pi d)), from the same
    // Plancherel constant that normalizes the squared-kernel integrals
    for (double d : {-0.25, 0.25}) {
        const double want =
            std::pow(2.0, 2.0 * d + 1.0) /
            (std::tgamma(2.0 * d + 2.0) * std::cos(M_PI * d));
        const double got = kernel_norm(mvn(d), 2.0, 2.0, 1e-9);
        REQUIRE(got == Catch::Approx(want).epsilon(1e-7));
    }
}

TEST_CASE("kernel spec validation", "[kernels]") {
    REQUIRE_THROWS_AS(kernel_value(modified(0.0, -0.25), 1.0, 0.0), spec_error);   // a <= 0
    REQUIRE_THROWS_AS(kernel_value(modified(1.0, 0.25), 1.0, 0.0), spec_error);    // d >= 0
    REQUIRE_THROWS_AS(kernel_value(mvn(0.0), 1.0, 0.5), spec_error);               // d = 0
    REQUIRE_THROWS_AS(kernel_value(mg(0.6), 1.0, 0.5), spec_error);                // |d| too big
}
