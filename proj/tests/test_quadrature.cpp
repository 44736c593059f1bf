#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "hardylab/profiles.hpp"
#include "hardylab/quadrature.hpp"

using namespace hardylab;
using Catch::Matchers::WithinRel;

namespace {
double log_beta(double x, double y) { return std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y); }
double beta_fn(double x, double y) { return std::exp(log_beta(x, y)); }
}  // namespace

TEST_CASE("Beta moment oracle", "[quadrature]") {
    RadialProfile one = power_profile(0.0, 1.0);
    auto I = integrate(one, 1.0, WeightSpec{2, 3, 0, 1, 1});
    REQUIRE(I.ok());
    CHECK_THAT(I.value, WithinRel(1.0 / 60.0, 1e-12));

    // 50 random (a, b) with a, b > -1
    Rng rng(501);
    for (int i = 0; i < 50; ++i) {
        const double a = rng.uniform(-0.9, 4.0);
        const double b = rng.uniform(-0.9, 4.0);
        auto r = integrate(one, 1.0, WeightSpec{a, b, 0, 1, 1});
        REQUIRE(r.ok());
        CHECK_THAT(r.value, WithinRel(beta_fn(a + 1, b + 1), 1e-10));
    }
}

TEST_CASE("generalized weight moments", "[quadrature]") {
    RadialProfile one = power_profile(0.0, 1.0);
    SECTION("volume normalization: 1/N at R = 1") {
        auto r = integrate(one, 1.0, WeightSpec{3, 0, 0, 1, 1});  // N = 4
        REQUIRE(r.ok());
        CHECK_THAT(r.value, WithinRel(0.25, 1e-12));
    }
    SECTION("gamma-deformed Beta: R^{a+1}/gamma B((a+1)/gamma, b+1)") {
        Rng rng(502);
        for (int i = 0; i < 12; ++i) {
            const double a = rng.uniform(-0.8, 3.0);
            const double b = rng.uniform(-0.8, 3.0);
            const double g = rng.uniform(0.4, 2.5);
            const double R = (i % 2) ? 1.0 : 2.0;
            RadialProfile oneR = power_profile(0.0, R);
            auto r = integrate(oneR, 1.0, WeightSpec{a, b, 0, g, R});
            REQUIRE(r.ok());
            const double expected =
                std::pow(R, a + 1.0) / g * beta_fn((a + 1.0) / g, b + 1.0);
            CHECK_THAT(r.value, WithinRel(expected, 1e-10));
        }
    }
    SECTION("log moments: Gamma(c+1)/(a+1)^{c+1}") {
        for (auto [a, c] : {std::pair{0.5, 1.0}, {1.0, 2.5}, {-0.5, -0.5}, {2.0, 3.0}}) {
            auto r = integrate(one, 1.0, WeightSpec{a, 0, c, 1, 1});
            REQUIRE(r.ok());
            const double expected = std::tgamma(c + 1.0) / std::pow(a + 1.0, c + 1.0);
            CHECK_THAT(r.value, WithinRel(expected, 1e-10));
        }
    }
}

TEST_CASE("divergence classification", "[quadrature]") {
    RadialProfile one = power_profile(0.0, 1.0);
    SECTION("both endpoint exponents critical") {
        auto r = integrate(one, 1.0, WeightSpec{-1, -1, 0, 1, 1});
        CHECK(r.divergent());
        CHECK(r.divergent_at_origin);
        CHECK(r.divergent_at_boundary);
        CHECK(std::isinf(r.value));
    }
    SECTION("monomial family property: exponent <= -1 never integrates finite") {
        Rng rng(503);
        for (int i = 0; i < 50; ++i) {
            const double a = -1.0 - rng.uniform(0.0, 3.0) * (i % 2 ? 1.0 : 0.0);
            const double B = rng.uniform(0.0, 1.5);
            // integrand r^{a - B} against profile r^{B}: origin exponent a
            auto r = integrate(power_profile(B, 1.0), 1.0, WeightSpec{a - B, 0, 0, 1, 1});
            if (a <= -1.0) {
                CHECK(r.divergent());
            } else {
                CHECK(r.ok());
                CHECK_THAT(r.value, WithinRel(1.0 / (a + 1.0), 1e-10));
            }
        }
    }
    SECTION("boundary exponent -1 with a log factor stays divergent") {
        auto r = integrate(one, 1.0, WeightSpec{0, -1, -0.5, 1, 1});  // b + c = -1.5
        CHECK(r.divergent());
        CHECK(r.divergent_at_boundary);
    }
    SECTION("log-criticality at the origin: a = -1 converges only for c < -1") {
        RadialProfile half = term_sum_profile(TermSum::single(1.0, 0.0, 0.0, 1.0, 1.0), 0.0, 0.5,
                                              2, flat_sigmas(2), flat_sigmas(2), 1.0, 1.0);
        auto divergent = integrate(half, 1.0, WeightSpec{-1, 0, -1.0, 1, 1});
        CHECK(divergent.divergent());
        auto convergent = integrate(half, 1.0, WeightSpec{-1, 0, -1.5, 1, 1});
        REQUIRE(convergent.ok());
        // int_0^{1/2} r^{-1} (log 1/r)^{-3/2} dr = 2 / sqrt(log 2)
        CHECK_THAT(convergent.value, WithinRel(2.0 / std::sqrt(std::log(2.0)), 1e-10));
    }
    SECTION("near-critical exponents stay finite and accurate") {
        const double a = -1.0 + 1e-3;
        auto r = integrate(one, 1.0, WeightSpec{a, 0, 0, 1, 1});
        REQUIRE(r.ok());
        CHECK_THAT(r.value, WithinRel(1.0 / (a + 1.0), 1e-9));
    }
}

TEST_CASE("error estimate and tolerance contract", "[quadrature]") {
    RadialProfile one = power_profile(0.0, 1.0);
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-9;
    auto r = integrate(one, 1.0, WeightSpec{0.5, 0.5, 0, 1, 1}, cfg);
    REQUIRE(r.ok());
    CHECK(r.error <= 1e-9 * std::abs(r.value) * 10.0);
    cfg.rel_tol = 1e-1;  // outside (1e-14, 1e-2)
    CHECK_THROWS_AS(integrate(one, 1.0, WeightSpec{}, cfg), std::invalid_argument);
}

TEST_CASE("substitution invariance between charts of the same integral", "[quadrature]") {
    // int r^2(1-r)^3 over (0,1) computed directly and via r = x/(1+x) on (0, inf)
    RadialProfile one = power_profile(0.0, 1.0);
    auto direct = integrate(one, 1.0, WeightSpec{2, 3, 0, 1, 1});
    REQUIRE(direct.ok());

    auto transformed = [](double x, int) {
        const double r = x / (1.0 + x);
        const double jac = 1.0 / ((1.0 + x) * (1.0 + x));
        return r * r * std::pow(1.0 - r, 3.0) * jac;
    };
    detail::ProfileData d;
    d.pieces.push_back(Piece::generic(0.0, inf(), transformed));
    d.order = 0;
    d.supp_lo = 0.0;
    d.supp_hi = inf();
    d.domain_R = inf();
    d.sigma0 = {2.0};
    d.sigma1 = {-5.0};  // r^2 (1-r)^3 jac ~ x^{-5} at infinity
    RadialProfile g{std::move(d)};
    auto indirect = integrate(g, 1.0, WeightSpec{0, 0, 0, 1, inf()});
    REQUIRE(indirect.ok());
    CHECK_THAT(indirect.value, WithinRel(direct.value, 1e-10));
}
