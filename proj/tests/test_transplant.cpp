#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "hardylab/corpus.hpp"
#include "hardylab/transplant.hpp"

using namespace hardylab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("radius map pinned values", "[transplant]") {
    ChartMap x2y = radius_map(Chart::Ball, Chart::FullSpace, 1.0, 1.0);
    CHECK_THAT(x2y.forward(0.5), WithinRel(1.0, 1e-14));  // (2-1)^{-1}

    ChartMap y2z = radius_map(Chart::FullSpace, Chart::LogBall, 1.0, 1.0);
    CHECK_THAT(y2z.forward(1.0), WithinRel(std::exp(-1.0), 1e-14));

    SECTION("boundary correspondence r_x -> R, r_y -> inf, r_z -> R") {
        const double rx = 1.0 - 1e-9;
        const double ry = x2y.forward(rx);
        CHECK(ry > 1e8);
        CHECK(y2z.forward(ry) > 1.0 - 1e-8);
    }
    SECTION("domain guard") {
        CHECK_THROWS_AS(radius_map(Chart::Ball, Chart::FullSpace, 0.0, 1.0), AdmissibilityError);
        CHECK_THROWS_AS(radius_map(Chart::Ball, Chart::FullSpace, 1.0, 0.0), AdmissibilityError);
    }
}

TEST_CASE("forward/inverse round trip and monotonicity", "[transplant]") {
    for (double gamma : {0.6, 1.0, 1.7}) {
        for (Chart a : {Chart::Ball, Chart::FullSpace, Chart::LogBall}) {
            for (Chart b : {Chart::Ball, Chart::FullSpace, Chart::LogBall}) {
                if (a == b) continue;
                if (a == Chart::FullSpace || b == Chart::FullSpace) {
                    // grids on the ball charts only; full space reached by map
                }
                ChartMap m = radius_map(a, b, gamma, 1.0);
                double prev = 0.0;
                for (int s = 0; s < 60; ++s) {
                    const double r0 = (a == Chart::FullSpace) ? 0.05 + 0.2 * s : 0.1 + 0.85 * s / 60.0;
                    const double f = m.forward(r0);
                    CHECK_THAT(m.inverse(f), WithinRel(r0, 1e-12));
                    CHECK(f > prev);
                    prev = f;
                }
            }
        }
    }
    SECTION("chain-rule derivative against finite differences") {
        ChartMap m = radius_map(Chart::Ball, Chart::FullSpace, 1.3, 1.0);
        for (double r : {0.2, 0.5, 0.8}) {
            const double h = 1e-6;
            const double fd = (m.forward(r + h) - m.forward(r - h)) / (2 * h);
            CHECK_THAT(m.dforward(r), WithinRel(fd, 1e-7));
        }
    }
}

TEST_CASE("pushforward", "[transplant]") {
    Rng rng(901);
    RadialProfile u = sample_bump(rng);
    SECTION("identity map returns the same profile") {
        ChartMap id = radius_map(Chart::Ball, Chart::Ball, 1.0, 1.0);
        RadialProfile v = pushforward(u, id);
        CHECK(v.eval(0.4) == u.eval(0.4));
    }
    SECTION("round trip through the full space at 100 points") {
        ChartMap fwd = radius_map(Chart::Ball, Chart::FullSpace, 1.4, 1.0);
        ChartMap back = radius_map(Chart::FullSpace, Chart::Ball, 1.4, 1.0);
        RadialProfile rt = pushforward(pushforward(u, fwd), back);
        for (int s = 1; s < 100; ++s) {
            const double r = s / 100.0;
            CHECK_THAT(rt.eval(r), WithinAbs(u.eval(r), 1e-10 * (1.0 + std::abs(u.eval(r)))));
        }
    }
    SECTION("full-space Hardy quotient equals the ball-chart combined quotient") {
        const int N = 4;
        const double p = 2.0, beta = 2.2, gamma = 1.1;
        const double alpha = N - (beta - 1.0) * gamma;  // critical line
        RadialProfile v = pushforward(u, radius_map(Chart::Ball, Chart::FullSpace, gamma, 1.0));

        auto iy_num = integrate_weighted(profile_power_factor(v, p, 1),
                                         WeightSpec{N - 1.0 + p - alpha, 0, 0, 1, inf()});
        auto iy_den = integrate_weighted(profile_power_factor(v, p),
                                         WeightSpec{N - 1.0 - alpha, 0, 0, 1, inf()});
        auto ih = quotient(u, InequalityParams::make(Form::ImprovedHardy, N, p, alpha, beta,
                                                     gamma, 1.0, 2));
        REQUIRE((iy_num.ok() && iy_den.ok() && ih.both_converged()));
        const double omega = unit_sphere_area(N);
        CHECK_THAT(omega * iy_num.value / (omega * iy_den.value),
                   WithinRel(ih.quotient, 1e-8));
    }
}

TEST_CASE("three-chart integral equivalence", "[transplant]") {
    Rng rng(902);
    for (int i = 0; i < 4; ++i) {
        const int N = rng.uniform_int(2, 6);
        const double p = (i % 2) ? 2.0 : 1.5;
        const double beta = 1.0 + rng.uniform(0.4, 1.8);
        const double gamma = rng.uniform(0.4, 1.8);
        const double alpha = N - (beta - 1.0) * gamma;
        TransplantResiduals t =
            verify_transplant_equivalence(sample_bump(rng), N, p, alpha, beta, 1.0);
        CHECK(t.residual_grad < 1e-8);
        CHECK(t.residual_mass < 1e-8);
    }
    SECTION("zero profile gives zero residuals") {
        TransplantResiduals t =
            verify_transplant_equivalence(poly_bump(0.3, 0.6, 6, 0.0), 3, 2, 1, 2, 1.0);
        CHECK(t.residual_grad == 0.0);
        CHECK(t.residual_mass == 0.0);
    }
}

TEST_CASE("minimizer pushforward reproduces the full-space normalization pair",
          "[transplant]") {
    const int N = 3;
    const double p = 2, q = 4, alpha = 2, beta = 2;
    RadialProfile U = hs_minimizer(1, 1, N, p, q, alpha, beta, 1.0);
    RadialProfile V = pushforward(U, radius_map(Chart::Ball, Chart::FullSpace, 1.0, 1.0));
    SRadParams sp = srad_params_from_ball(N, p, q, alpha);
    const double omega = unit_sphere_area(N);
    auto num = integrate_weighted(profile_power_factor(V, p, 1),
                                  WeightSpec{N - 1.0 + sp.A * p, 0, 0, 1, inf()});
    auto den = integrate_weighted(profile_power_factor(V, q),
                                  WeightSpec{N - 1.0 + sp.B * q, 0, 0, 1, inf()});
    REQUIRE((num.ok() && den.ok()));
    const double quot = omega * num.value / std::pow(omega * den.value, p / q);
    CHECK_THAT(quot, WithinRel(s_rad_constant(sp), 1e-6));
    CHECK_THAT(s_rad_constant(sp), WithinRel(t_rad_constant(N, p, q, alpha), 1e-10));
}

TEST_CASE("scaling maps", "[transplant]") {
    SECTION("lambda = 1 is the identity, the boundary is fixed") {
        ScalingMap id = scaling_map(1.0, 1.3, 1.0, Chart::Ball);
        CHECK(id.forward(0.37) == 0.37);
        ScalingMap m = scaling_map(2.0, 1.3, 1.0, Chart::Ball);
        CHECK_THAT(m.forward(1.0 - 1e-9), WithinAbs(1.0 - 1e-9, 1e-7));
    }
    SECTION("matches the displayed closed form") {
        // r~ = lambda r [1 - (1-lambda^gamma)(r/R)^gamma]^{-1/gamma}
        Rng rng(903);
        for (int i = 0; i < 20; ++i) {
            const double lam = rng.uniform(0.4, 2.5);
            const double g = rng.uniform(0.5, 2.0);
            const double r = rng.uniform(0.05, 0.95);
            ScalingMap m = scaling_map(lam, g, 1.0, Chart::Ball);
            const double expected =
                lam * r * std::pow(1.0 - (1.0 - std::pow(lam, g)) * std::pow(r, g), -1.0 / g);
            CHECK_THAT(m.forward(r), WithinRel(expected, 1e-12));
        }
    }
    SECTION("group law") {
        for (Chart chart : {Chart::Ball, Chart::LogBall}) {
            ScalingMap m1 = scaling_map(0.6, 1.2, 1.0, chart);
            ScalingMap m2 = scaling_map(2.3, 1.2, 1.0, chart);
            ScalingMap m12 = scaling_map(0.6 * 2.3, 1.2, 1.0, chart);
            for (int s = 1; s < 40; ++s) {
                const double r = s / 40.0;
                CHECK_THAT(m1.forward(m2.forward(r)), WithinRel(m12.forward(r), 1e-10));
            }
        }
    }
    SECTION("critical-line invariance of both integrals") {
        const int N = 4;
        const double p = 2.0, beta = 2.0, gamma = 1.4;
        const double alpha = N - (beta - 1.0) * gamma;
        const InequalityParams q =
            InequalityParams::make(Form::ImprovedHardy, N, p, alpha, beta, gamma, 1.0, 2);
        Rng rng(904);
        RadialProfile u = sample_bump(rng);
        const FormTraits t = form_traits(q);
        const double num0 = side_integral(u, q, t.num, p).value;
        const double den0 = side_integral(u, q, t.den, p).value;
        for (double lam : {0.5, 2.0}) {
            RadialProfile ul = apply_scaling(u, scaling_map(lam, gamma, 1.0, Chart::Ball),
                                             ball_scaling_prefactor(lam, N, alpha, p));
            CHECK_THAT(side_integral(ul, q, t.num, p).value, WithinRel(num0, 1e-8));
            CHECK_THAT(side_integral(ul, q, t.den, p).value, WithinRel(den0, 1e-8));
        }
    }
    SECTION("below the critical line the same scaling moves the integrals") {
        const int N = 4;
        const double p = 2.0, beta = 2.0, gamma = 1.4;
        const double alpha = N - (beta - 1.0) * gamma - 0.7;
        const InequalityParams q =
            InequalityParams::make(Form::ImprovedHardy, N, p, alpha, beta, gamma, 1.0, 2);
        Rng rng(905);
        RadialProfile u = sample_bump(rng);
        const FormTraits t = form_traits(q);
        const double den0 = side_integral(u, q, t.den, p).value;
        double witness = 0.0;
        for (double lam : {0.5, 2.0}) {
            RadialProfile ul = apply_scaling(u, scaling_map(lam, gamma, 1.0, Chart::Ball),
                                             ball_scaling_prefactor(lam, N, alpha, p));
            witness = std::max(witness, rel_dev(side_integral(ul, q, t.den, p).value, den0));
        }
        CHECK(witness > 1e-3);
    }
}
