#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "hardylab/corpus.hpp"
#include "hardylab/functionals.hpp"

using namespace hardylab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("Bregman remainder R_p", "[functionals]") {
    Rng rng(801);
    SECTION("zero on the diagonal, nonnegative everywhere") {
        for (int i = 0; i < 2000; ++i) {
            const double xi = rng.uniform(-4.0, 4.0);
            const double eta = rng.uniform(-4.0, 4.0);
            const double p = rng.uniform(1.05, 4.0);
            const double v = rp_bregman(xi, eta, p);
            CHECK(v >= -1e-15);
            if (std::abs(xi - eta) > 1e-6 && std::abs(xi) + std::abs(eta) > 1e-3)
                CHECK(v > 0.0);
            CHECK_THAT(rp_bregman(xi, xi, p), WithinAbs(0.0, 1e-12));
        }
    }
    SECTION("pinned values") {
        CHECK_THAT(rp_bregman(1, 3, 2), WithinAbs(2.0, 1e-14));
        CHECK_THAT(rp_bregman(1, 0, 3), WithinRel(2.0 / 3.0, 1e-14));
    }
    SECTION("Taylor-remainder form with weight (1-t) matches the algebraic one") {
        for (int i = 0; i < 30; ++i) {
            const double xi = rng.uniform(-2.0, 2.0);
            const double eta = rng.uniform(-2.0, 2.0);
            const double p = rng.uniform(1.3, 3.5);
            double integral = 0.0;
            const int n = 40000;
            for (int t = 0; t < n; ++t) {
                const double s = (t + 0.5) / n;
                integral += (1.0 - s) * std::pow(std::abs(xi + s * (eta - xi)), p - 2.0) / n;
            }
            integral *= (p - 1.0) * sq(xi - eta);
            CHECK_THAT(integral, WithinAbs(rp_bregman(xi, eta, p), 5e-6));
        }
    }
    SECTION("the printed unweighted integral disagrees at p = 2") {
        // (p-1) int |t xi + (1-t) eta|^{p-2} dt |xi-eta|^2 = (xi-eta)^2, not
        // the algebraic (1/2)(xi-eta)^2
        CHECK_THAT(rp_bregman(1, 3, 2), WithinAbs(0.5 * sq(1 - 3), 1e-14));
        CHECK(std::abs(sq(1 - 3) - rp_bregman(1, 3, 2)) > 1.0);
    }
}

TEST_CASE("exact remainder identity: frozen analytic case", "[functionals]") {
    // u = (1-r)^2 on the unit ball, p = 2, alpha = 0, beta = 2, gamma = 1,
    // N = 3: every term of the identity reduces to a Beta moment.
    //   den  = omega/30, num = 4 omega/105,
    //   I_Rp = 11 omega/420, I_psi = omega/60, both sides = omega/120.
    const double omega = unit_sphere_area(3);
    const InequalityParams q = InequalityParams::make(Form::ImprovedHardy, 3, 2, 0, 2, 1, 1, 2);
    const RadialProfile u = boundary_power_profile(2.0, 1.0, 1.0, 6);

    const FormTraits t = form_traits(q);
    auto den = side_integral(u, q, t.den, 2.0);
    auto num = side_integral(u, q, t.num, 2.0);
    REQUIRE(den.ok());
    REQUIRE(num.ok());
    CHECK_THAT(den.value, WithinRel(omega / 30.0, 1e-12));
    CHECK_THAT(num.value, WithinRel(4.0 * omega / 105.0, 1e-12));
    CHECK(verify_remainder_identity(u, q) < 1e-12);
}

TEST_CASE("exact remainder identity on the example profiles", "[functionals]") {
    SECTION("(1-r)^2 smoothly cut at the origin") {
        const InequalityParams q =
            InequalityParams::make(Form::ImprovedHardy, 3, 2, 0, 2, 1, 1, 2);
        RadialProfile u =
            origin_cut_profile(TermSum::single(1.0, 0.0, 2.0, 1.0, 1.0), 0.25, 1.0, 1.0, 2.0, 6);
        CHECK(verify_remainder_identity(u, q) < 1e-8);
    }
    SECTION("boundary test function at p = 3") {
        const InequalityParams q =
            InequalityParams::make(Form::ImprovedHardy, 3, 3, 1, 2, 1, 1, 2);
        RadialProfile u = boundary_test_function(1.2, 0.1, 1.0, 1.0);
        CHECK(verify_remainder_identity(u, q) < 1e-6);
    }
    SECTION("zero profile gives zero residual") {
        const InequalityParams q =
            InequalityParams::make(Form::ImprovedHardy, 3, 2, 0, 2, 1, 1, 2);
        CHECK(verify_remainder_identity(poly_bump(0.3, 0.6, 6, 0.0), q) == 0.0);
    }
    SECTION("p = 1 is gated out of the remainder machinery") {
        const InequalityParams q =
            InequalityParams::make(Form::ImprovedHardy, 3, 1, 0, 2, 1, 1, 2);
        CHECK_THROWS_AS(verify_remainder_identity(poly_bump(0.3, 0.6, 6, 1.0), q),
                        AdmissibilityError);
    }
}

TEST_CASE("hardy_quotient on the boundary family", "[functionals]") {
    const InequalityParams q = InequalityParams::make(Form::ImprovedHardy, 3, 2, 1, 2, 2, 1, 2);
    auto rep = hardy_quotient(boundary_test_function(0.51, 0.05, 2, 1), q);
    REQUIRE(rep.both_converged());
    // frozen from an independent adaptive-quadrature oracle
    CHECK_THAT(rep.quotient / rep.sharp_constant, WithinRel(1.134988, 2e-5));
    CHECK(rep.relative_gap >= 0.0);
    CHECK(rep.quotient / rep.sharp_constant < 1.15);
}

TEST_CASE("virtual extremal flags a divergent right-hand side", "[functionals]") {
    const InequalityParams q =
        InequalityParams::make(Form::ImprovedHardy, 4, 2, 1, 2.5, 1.2, 1, 2);
    auto rep = hardy_quotient(virtual_extremal(q.p, q.beta, q.gamma, q.R), q);
    CHECK(rep.divergent_numerator);
    CHECK((std::isinf(rep.quotient) || rep.divergent_denominator));
}

TEST_CASE("fixed interior bump keeps a strict gap", "[functionals]") {
    const InequalityParams q = InequalityParams::make(Form::ClassicalHardy, 4, 2, 2, 0, 1, 1, 2);
    auto rep = hardy_quotient(poly_bump(0.25, 0.5, 6, 1.0), q);
    REQUIRE(rep.both_converged());
    CHECK(rep.relative_gap > 0.01);
}

TEST_CASE("rellich_quotient examples", "[functionals]") {
    SECTION("origin family approaches the sharp Rellich constant") {
        const InequalityParams q =
            InequalityParams::make(Form::ImprovedRellichRad, 7, 2, 2, 2, 5, 1, 2);
        CHECK_THAT(sharp_constant(q), WithinRel(sq(rellich_product_constant(2, 2, 2, 7)), 1e-13));
        auto rep = rellich_quotient(origin_test_function(2.49, 0.1), q);
        REQUIRE(rep.both_converged());
        CHECK(rep.relative_gap >= 0.0);
        CHECK(rep.relative_gap < 0.05);
    }
    SECTION("pure power closed form: quotient equals the grad coefficient power") {
        const InequalityParams q = InequalityParams::make(Form::Rellich, 7, 2, 4, 0, 1, 1, 2);
        const double B = -(q.N - q.alpha) / q.p + 0.3;
        auto rep = rellich_quotient(power_profile(B, 1.0, 6), q);
        REQUIRE(rep.both_converged());
        // both weighted integrals share the same exponent, so their ratio is 1
        CHECK_THAT(rep.quotient, WithinRel(std::pow(grad_k_radial_power(2, B, 7), 2.0), 1e-8));
    }
    SECTION("boundary family against the product constant of the b-form") {
        const InequalityParams q =
            InequalityParams::make(Form::ImprovedRellichRadB, 4, 2, -0.9, 6, 0.2, 1, 2);
        auto rep =
            rellich_quotient(boundary_test_function((q.beta - 1) / q.p + 0.01, 0.1, q.gamma, 1), q);
        REQUIRE(rep.both_converged());
        CHECK(rep.relative_gap >= 0.0);
        CHECK(rep.relative_gap < 0.10);
    }
    SECTION("first-order forms are rejected") {
        const InequalityParams q =
            InequalityParams::make(Form::ClassicalHardy, 4, 2, 2, 0, 1, 1, 2);
        CHECK_THROWS_AS(rellich_quotient(poly_bump(0.3, 0.6, 6, 1.0), q),
                        std::invalid_argument);
    }
}

TEST_CASE("remainder psi", "[functionals]") {
    SECTION("zero profile") {
        const InequalityParams q =
            InequalityParams::make(Form::ImprovedHardy, 3, 2, 0, 2, 1, 1, 2);
        CHECK(remainder_psi(poly_bump(0.3, 0.6, 6, 0.0), q).value == 0.0);
    }
    SECTION("subcritical: J(u) >= psi(u)") {
        Rng rng(802);
        for (int i = 0; i < 6; ++i) {
            InequalityParams q;
            q.form = Form::ImprovedHardy;
            q.N = rng.uniform_int(3, 6);
            q.p = (i % 2) ? 2.0 : 1.5;
            q.beta = 1.0 + rng.uniform(0.4, 1.5);
            q.gamma = rng.uniform(0.4, 1.5);
            q.alpha = q.N - (q.beta - 1.0) * q.gamma - rng.uniform(0.3, 1.5);
            q.validate();
            RadialProfile u = sample_bump(rng);
            const FormTraits t = form_traits(q);
            auto num = side_integral(u, q, t.num, q.p);
            auto den = side_integral(u, q, t.den, q.p);
            REQUIRE((num.ok() && den.ok()));
            PsiResult psi = remainder_psi(u, q);
            CHECK_FALSE(psi.critical);
            CHECK(psi.value > 0.0);
            const double J = num.value - t.sharp * den.value;
            CHECK(J >= psi.value - 1e-8 * num.value);
        }
    }
    SECTION("critical: psi finite and J(u) > 0 for a non-extremal profile") {
        InequalityParams q = InequalityParams::make(Form::ImprovedHardy, 4, 2, 2, 3, 1, 1, 2);
        REQUIRE(q.alpha == q.N - (q.beta - 1.0) * q.gamma);  // critical line
        Rng rng(803);
        RadialProfile u = sample_bump(rng);
        PsiResult psi = remainder_psi(u, q);
        CHECK(psi.critical);
        CHECK(psi.value > 0.0);
        CHECK(std::isfinite(psi.value));
        const FormTraits t = form_traits(q);
        const double J =
            side_integral(u, q, t.num, q.p).value - t.sharp * side_integral(u, q, t.den, q.p).value;
        CHECK(J > 0.0);
    }
    SECTION("critical p in (1,2) uses the two-factor bound") {
        InequalityParams q = InequalityParams::make(Form::ImprovedHardy, 4, 1.5, 2.5, 2, 1, 1, 2);
        REQUIRE(q.alpha == q.N - (q.beta - 1.0) * q.gamma);
        Rng rng(804);
        PsiResult psi = remainder_psi(sample_bump(rng), q);
        CHECK(psi.critical);
        CHECK(psi.value > 0.0);
    }
}

TEST_CASE("hs_quotient attains T_rad on the closed-form minimizer", "[functionals]") {
    const int N = 3;
    const double p = 2, q = 4, alpha = 2, beta = 2, R = 1;
    const double trad = t_rad_constant(N, p, q, alpha);

    auto rep = hs_quotient(hs_minimizer(1, 1, N, p, q, alpha, beta, R), N, p, q, alpha, beta, R);
    REQUIRE(rep.both_converged());
    CHECK_THAT(rep.quotient, WithinRel(trad, 1e-6));

    SECTION("the minimizer family is a two-parameter orbit") {
        Rng rng(805);
        for (int i = 0; i < 3; ++i) {
            const double a = rng.uniform(0.3, 3.0), b = rng.uniform(0.3, 3.0);
            auto r2 = hs_quotient(hs_minimizer(a, b, N, p, q, alpha, beta, R), N, p, q, alpha,
                                  beta, R);
            CHECK_THAT(r2.quotient, WithinRel(trad, 1e-6));
        }
    }
    SECTION("beta enters only the weights, not the attained value") {
        const double beta2 = 3.0;
        auto r2 = hs_quotient(hs_minimizer(1, 1, N, p, q, alpha, beta2, R), N, p, q, alpha, beta2,
                              R);
        CHECK_THAT(r2.quotient, WithinRel(trad, 1e-6));
    }
    SECTION("perturbing the minimizer raises the quotient") {
        RadialProfile pert =
            product_profile(hs_minimizer(1, 1, N, p, q, alpha, beta, R), one_plus_bump(0.1, 0.3, 0.6, 6));
        auto r2 = hs_quotient(pert, N, p, q, alpha, beta, R);
        REQUIRE(r2.both_converged());
        CHECK(r2.quotient > trad * (1.0 + 1e-6));
    }
}

TEST_CASE("two-step chains keep their constants ordered", "[functionals]") {
    Rng rng(806);
    const QuadratureConfig cfg{};
    SECTION("(I): classical through the combined form at gamma = (N-alpha)/(p-1)") {
        for (int i = 0; i < 5; ++i) {
            const int N = rng.uniform_int(3, 7);
            const double p = rng.uniform(1.4, 3.0);
            const double alpha = N - rng.uniform(0.5, 2.5);
            const double gamma = (N - alpha) / (p - 1.0);
            RadialProfile u = sample_bump(rng);
            auto hp = quotient(u, InequalityParams::make(Form::ClassicalHardy, N, p, alpha, 0,
                                                         1, 1, 2), cfg);
            auto ih = quotient(u, InequalityParams::make(Form::ImprovedHardy, N, p, alpha, p,
                                                         gamma, 1, 2), cfg);
            REQUIRE((hp.both_converged() && ih.both_converged()));
            const double lhs_hp = hp.sharp_constant * hp.denominator.value;
            const double lhs_ih = ih.sharp_constant * ih.denominator.value;
            // beta = p makes both numerators the plain gradient integral
            CHECK_THAT(hp.numerator.value, WithinRel(ih.numerator.value, 1e-9));
            CHECK(lhs_hp <= lhs_ih * (1 + 1e-9));
            CHECK(lhs_ih <= ih.numerator.value * (1 + 1e-9));
        }
    }
    SECTION("(II): geometric through the combined form at gamma = 1, R = 1") {
        for (int i = 0; i < 5; ++i) {
            const int N = rng.uniform_int(3, 7);
            const double beta = 1.0 + rng.uniform(0.3, 1.2);
            const double p = rng.uniform(1.3, std::min(3.0, N - (beta - 1.0)));
            RadialProfile u = sample_bump(rng);
            auto geo = quotient(u, InequalityParams::make(Form::GeometricHardy, N, p, 0, beta,
                                                          1, 1, 2), cfg);
            auto ih = quotient(u, InequalityParams::make(Form::ImprovedHardy, N, p, p, beta, 1,
                                                         1, 2), cfg);
            REQUIRE((geo.both_converged() && ih.both_converged()));
            CHECK(geo.sharp_constant * geo.denominator.value <=
                  ih.sharp_constant * ih.denominator.value * (1 + 1e-9));
            CHECK(ih.sharp_constant * ih.denominator.value <=
                  ih.numerator.value * (1 + 1e-9));
            CHECK(ih.numerator.value <= geo.numerator.value * (1 + 1e-9));
        }
    }
    SECTION("(III): the unit-constant chain, tested directly") {
        for (int N : {3, 4, 5}) {
            RadialProfile u = sample_bump(rng);
            auto mass = [&](const WeightSpec& w) {
                auto r = integrate_weighted(profile_power_factor(u, 2.0), w);
                REQUIRE(r.ok());
                return r.value;
            };
            const double lhs = mass(WeightSpec{static_cast<double>(N - 1), -2, 0, 2, 1});
            const double mid = mass(WeightSpec{N - 3.0, -2, 0, 2, 1});
            auto grad = integrate_weighted(profile_power_factor(u, 2.0, 1),
                                           WeightSpec{static_cast<double>(N - 1), 0, 0, 1, 1});
            REQUIRE(grad.ok());
            CHECK(lhs <= mid * (1 + 1e-9));
            CHECK(mid <= grad.value * (1 + 1e-9));
        }
    }
}

TEST_CASE("one-dimensional forms", "[functionals]") {
    Rng rng(807);
    RadialProfile w = sample_bump(rng);
    SECTION("plain weighted Hardy on the half line") {
        const InequalityParams q =
            InequalityParams::make(Form::OneDimHardy, 1, 2, 1.0, 0, 1, 1, 1);
        auto rep = hardy_quotient(w, q);
        REQUIRE(rep.both_converged());
        CHECK(rep.relative_gap >= -1e-9);
    }
    SECTION("combined one-dimensional form") {
        const InequalityParams q =
            InequalityParams::make(Form::OneDimImprovedHardy, 1, 2, 0.5, 2, 1, 1, 1);
        auto rep = hardy_quotient(w, q);
        REQUIRE(rep.both_converged());
        CHECK(rep.relative_gap >= -1e-9);
    }
}
