#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "hardylab/grad.hpp"

using namespace hardylab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// fourth-order finite-difference stencils, used only as the independent
// nested-differentiation oracle
double fd_first(const std::function<double(double)>& f, double r, double h) {
    return (-f(r + 2 * h) + 8 * f(r + h) - 8 * f(r - h) + f(r - 2 * h)) / (12 * h);
}
double fd_second(const std::function<double(double)>& f, double r, double h) {
    return (-f(r + 2 * h) + 16 * f(r + h) - 30 * f(r) + 16 * f(r - h) - f(r - 2 * h)) /
           (12 * h * h);
}

}  // namespace

TEST_CASE("C_{k,j} base rows match the displayed derivatives", "[grad]") {
    const double A = 2.3, g = 1.7;
    const int N = 5;
    auto c1 = grad_k_coefficients(1, A, g, N);
    CHECK_THAT(c1.coeffs[0], WithinRel(-g * A, 1e-14));

    auto c2 = grad_k_coefficients(2, A, g, N);
    CHECK_THAT(c2.coeffs[0], WithinRel(-A * g * (N + g - 2.0), 1e-14));
    CHECK_THAT(c2.coeffs[1], WithinRel(A * (A - 1.0) * g * g, 1e-14));
}

TEST_CASE("leading coefficient C_{k,k} = (-gamma)^k prod (A-l+1)", "[grad]") {
    Rng rng(701);
    for (int i = 0; i < 10; ++i) {
        const double A = rng.uniform(0.3, 5.0);
        const double g = rng.uniform(0.3, 2.5);
        const int N = rng.uniform_int(2, 9);
        for (int k = 1; k <= 6; ++k) {
            double lead = pow_int(-g, k);
            for (int l = 1; l <= k; ++l) lead *= (A - l + 1.0);
            CHECK_THAT(grad_k_coefficients(k, A, g, N).leading(), WithinRel(lead, 1e-12));
        }
    }
}

TEST_CASE("nested-differentiation oracle for k = 3", "[grad]") {
    const double A = 1.9, g = 1.2;
    const int N = 4;
    auto f = [&](double r) { return std::pow(one_minus_pow(r, g, 1.0), A); };
    const double h = 0.004;
    auto lap = [&](double r) { return fd_second(f, r, h) + (N - 1) * fd_first(f, r, h) / r; };
    RadialProfile expansion = grad_k_boundary_power_expansion(3, A, g, N);
    for (int s = 0; s < 50; ++s) {
        const double r = 0.2 + 0.6 * s / 49.0;
        const double oracle = std::abs(fd_first(lap, r, h));
        CHECK_THAT(expansion.eval(r), WithinRel(oracle, 1e-6));
    }
}

TEST_CASE("coefficient expansion equals the iterated-Laplacian route, k <= 6", "[grad]") {
    Rng rng(702);
    for (int i = 0; i < 6; ++i) {
        const double A = rng.uniform(0.6, 4.0);
        const double g = rng.uniform(0.3, 2.5);
        const int N = rng.uniform_int(2, 8);
        RadialProfile base = boundary_power_profile(A, g, 1.0, 6);
        for (int k = 1; k <= 6; ++k) {
            RadialProfile expansion = grad_k_boundary_power_expansion(k, A, g, N);
            RadialProfile direct = apply_grad_k(base, k, N);
            double grid_max = 0.0;
            for (int s = 0; s < 50; ++s)
                grid_max = std::max(grid_max, expansion.eval(0.05 + 0.9 * s / 49.0));
            for (int s = 0; s < 50; ++s) {
                const double r = 0.05 + 0.9 * s / 49.0;
                const double a = expansion.eval(r), b = direct.eval(r);
                CHECK(std::abs(a - b) / (std::max(a, b) + 1e-10 * grid_max) < 1e-6);
            }
        }
    }
}

TEST_CASE("printed even-k recursion branch fails the oracle", "[grad]") {
    const double A = 1.7, g = 1.3;
    const int N = 5;
    RadialProfile direct = apply_grad_k(boundary_power_profile(A, g, 1.0, 6), 2, N);
    auto expansion_dev = [&](bool printed) {
        DerivCoefficients C = grad_k_coefficients(2, A, g, N, printed);
        TermSum ts{g, 1.0, {}};
        for (int j = 1; j <= 2; ++j) ts.push_term(C.coeffs[j - 1], j * g - 2.0, A - j);
        double dev = 0.0;
        for (int s = 0; s < 20; ++s) {
            const double r = 0.1 + 0.8 * s / 19.0;
            dev = std::max(dev, rel_dev(std::abs(ts.eval(r)), direct.eval(r)));
        }
        return dev;
    };
    CHECK(expansion_dev(false) < 1e-12);  // gamma-corrected branch
    CHECK(expansion_dev(true) > 1e-3);    // branch as printed
}

TEST_CASE("radial power under grad^k", "[grad]") {
    CHECK_THAT(grad_k_radial_power(2, 2.0, 3), WithinAbs(6.0, 1e-14));  // laplacian of r^2 in R^3
    Rng rng(703);
    for (int i = 0; i < 8; ++i) {
        const double B = rng.uniform(-3.0, 4.0);
        CHECK_THAT(grad_k_radial_power(1, B, 5), WithinAbs(std::abs(B), 1e-14));
    }
    SECTION("k = 4 against apply_grad_k on r^B") {
        Rng rng2(704);
        for (int i = 0; i < 6; ++i) {
            const int N = rng2.uniform_int(5, 9);
            const double p = rng2.uniform(1.5, 3.0);
            const double alpha = rng2.uniform(0.5, N - 0.5);
            const double B = -(N - alpha) / p;
            RadialProfile u = power_profile(B, 1.0, 6);
            RadialProfile gk = apply_grad_k(u, 4, N);
            const double coeff = grad_k_radial_power(4, B, N);
            for (int s = 1; s <= 10; ++s) {
                const double r = s / 11.0;
                CHECK_THAT(gk.eval(r), WithinRel(coeff * std::pow(r, B - 4.0), 1e-8));
            }
        }
    }
}

TEST_CASE("apply_grad_k basics", "[grad]") {
    // Delta r^2 = 2N
    RadialProfile r2 = power_profile(2.0, 1.0, 6);
    RadialProfile lap = apply_grad_k(r2, 2, 5);
    for (double r : {0.1, 0.4, 0.9}) CHECK_THAT(lap.eval(r), WithinAbs(10.0, 1e-10));

    // k = 1 is |u'|
    RadialProfile v = virtual_extremal(2, 2, 1, 1);
    RadialProfile g1 = apply_grad_k(v, 1, 4);
    for (double r : {0.2, 0.5, 0.8})
        CHECK_THAT(g1.eval(r), WithinRel(std::abs(v.deriv(r, 1)), 1e-13));

    // k = 3 against the coefficient expansion
    RadialProfile base = boundary_power_profile(2.4, 1.1, 1.0, 6);
    RadialProfile g3 = apply_grad_k(base, 3, 4);
    RadialProfile e3 = grad_k_boundary_power_expansion(3, 2.4, 1.1, 4);
    for (double r : {0.15, 0.45, 0.75}) CHECK_THAT(g3.eval(r), WithinRel(e3.eval(r), 1e-8));

    // order guard
    CHECK_THROWS_AS(apply_grad_k(hs_minimizer(1, 1, 3, 2, 4, 2, 2, 1), 2, 3),
                    std::invalid_argument);
}

TEST_CASE("leading-order law at the boundary", "[grad]") {
    Rng rng(705);
    for (int i = 0; i < 5; ++i) {
        const double A = rng.uniform(1.0, 3.0);
        const double g = rng.uniform(0.5, 2.0);
        const int N = rng.uniform_int(2, 7);
        const int k = rng.uniform_int(1, 5);
        RadialProfile gk = apply_grad_k(boundary_power_profile(A, g, 1.0, 6), k, N);
        const double r = 1.0 - 1e-6;
        const double ell = one_minus_pow(r, g, 1.0);
        const double ratio = gk.eval(r) / std::pow(ell, A - k);
        const double lead = std::abs(grad_k_coefficients(k, A, g, N).leading()) *
                            std::pow(r, k * (g - 1.0));
        CHECK_THAT(ratio, WithinRel(lead, 1e-4));
    }
}
