#pragma once

#include <cmath>
#include <vector>

#include "hardylab/numeric.hpp"
#include "hardylab/profile.hpp"

namespace hardylab {

/// Generic builder for a profile made of one exact TermSum on [lo, hi].
inline RadialProfile term_sum_profile(TermSum ts, double lo, double hi, int order,
                                      std::vector<double> sigma0, std::vector<double> sigma1,
                                      double domain_R, double decl_gamma) {
    detail::ProfileData d;
    d.pieces.push_back(Piece::term_sum(lo, hi, std::move(ts), order));
    d.order = order;
    d.supp_lo = lo;
    d.supp_hi = hi;
    d.domain_R = domain_R;
    d.decl_gamma = decl_gamma;
    d.sigma0 = std::move(sigma0);
    d.sigma1 = std::move(sigma1);
    return RadialProfile(std::move(d));
}

/// The virtual extremal ((r/R)^{-gamma} - 1)^{(beta-1)/p}: formally attains
/// the combined Hardy constant, with a divergent right-hand side.
inline RadialProfile virtual_extremal(double p, double beta, double gamma, double R) {
    if (beta <= 1.0) throw AdmissibilityError("virtual_extremal: beta > 1 required");
    if (gamma <= 0.0) throw AdmissibilityError("virtual_extremal: gamma > 0 required");
    if (p < 1.0) throw AdmissibilityError("virtual_extremal: p >= 1 required");
    const double E = (beta - 1.0) / p;
    const int order = 2;
    TermSum ts = TermSum::single(std::pow(R, gamma * E), -gamma * E, E, gamma, R);
    return term_sum_profile(std::move(ts), 0.0, R, order, power_law_sigmas(-gamma * E, order),
                            power_law_sigmas(E, order), R, gamma);
}

/// f_A: identically (1-(r/R)^gamma)^A on the outer shell [R(1-delta), R],
/// zero on [0, R(1-2delta)], quintic smoothstep bridge between.
inline RadialProfile boundary_test_function(double A, double delta, double gamma, double R) {
    if (!(delta > 0.0 && delta < 0.25)) {
        throw AdmissibilityError("boundary_test_function: 0 < delta < 1/4 required");
    }
    const int order = 6;
    const double r0 = R * (1.0 - 2.0 * delta);
    const double r1 = R * (1.0 - delta);
    TermSum ts = TermSum::single(1.0, 0.0, A, gamma, R);
    detail::ProfileData d;
    d.pieces.push_back(Piece::term_sum(r0, r1, ts, order, CutoffRamp{r0, r1, true}));
    d.pieces.push_back(Piece::term_sum(r1, R, ts, order));
    d.order = order;
    d.supp_lo = r0;
    d.supp_hi = R;
    d.domain_R = R;
    d.decl_gamma = gamma;
    d.sigma0 = flat_sigmas(order);
    d.sigma1 = power_law_sigmas(A, order);
    return RadialProfile(std::move(d));
}

/// g_B: identically r^{-B} on [0, delta], zero beyond 2*delta,
/// smoothstep bridge between.
inline RadialProfile origin_test_function(double B, double delta, double R = 1.0) {
    if (!(delta > 0.0 && delta < 0.25 * R)) {
        throw AdmissibilityError("origin_test_function: 0 < delta < R/4 required");
    }
    const int order = 6;
    TermSum ts = TermSum::single(1.0, -B, 0.0, 1.0, R);
    detail::ProfileData d;
    d.pieces.push_back(Piece::term_sum(0.0, delta, ts, order));
    d.pieces.push_back(Piece::term_sum(delta, 2.0 * delta, ts, order,
                                       CutoffRamp{delta, 2.0 * delta, false}));
    d.order = order;
    d.supp_lo = 0.0;
    d.supp_hi = 2.0 * delta;
    d.domain_R = R;
    d.decl_gamma = 1.0;
    d.sigma0 = power_law_sigmas(-B, order);
    d.sigma1 = flat_sigmas(order);
    return RadialProfile(std::move(d));
}

/// Pure power r^B on (0, R].
inline RadialProfile power_profile(double B, double R = 1.0, int order = 6) {
    return term_sum_profile(TermSum::single(1.0, B, 0.0, 1.0, R), 0.0, R, order,
                            power_law_sigmas(B, order), flat_sigmas(order), R, 1.0);
}

/// (1-(r/R)^gamma)^A on the whole ball (recursion oracle target).
inline RadialProfile boundary_power_profile(double A, double gamma, double R = 1.0,
                                            int order = 6) {
    return term_sum_profile(TermSum::single(1.0, 0.0, A, gamma, R), 0.0, R, order,
                            flat_sigmas(order), power_law_sigmas(A, order), R, gamma);
}

/// The closed-form minimizer of the weighted Hardy-Sobolev quotient:
/// U(r) = [a + b ((r/R)^{-gamma} - 1)^{-(q-p)(beta-1)/(p(p-1))}]^{-p/(q-p)}.
inline RadialProfile hs_minimizer(double a, double b, int N, double p, double q, double alpha,
                                  double beta, double R) {
    if (!(a > 0.0 && b > 0.0)) throw AdmissibilityError("hs_minimizer: a, b > 0 required");
    if (!(1.0 < p && p < q)) throw AdmissibilityError("hs_minimizer: 1 < p < q required");
    if (!(alpha < N)) throw AdmissibilityError("hs_minimizer: alpha < N required");
    if (!(beta > 1.0)) throw AdmissibilityError("hs_minimizer: beta > 1 required");
    const double gamma = (N - alpha) / (beta - 1.0);
    const double E = (q - p) * (beta - 1.0) / (p * (p - 1.0));
    const double s = p / (q - p);
    const double log_b = std::log(b);

    auto fn = [=](double r, int j) -> double {
        // log w with w = (r/R)^{-gamma} - 1 = ell * (r/R)^{-gamma}
        const double ell = one_minus_pow(r, gamma, R);
        const double lw = std::log(ell) - gamma * std::log(r / R);
        const double t = log_b - E * lw;  // log(b w^{-E})
        double log_g;                     // log(a + b w^{-E})
        if (t < 500.0) {
            log_g = std::log(a + std::exp(t));
        } else {
            log_g = t + std::log1p(a * std::exp(-t));
        }
        const double U = std::exp(-s * log_g);
        if (j == 0) return U;
        // b w^{-E} / (a + b w^{-E}) without overflow
        const double frac = 1.0 / (1.0 + std::exp(std::min(700.0, -t + std::log(a))));
        return -s * E * gamma * frac * U / (r * ell);
    };

    detail::ProfileData d;
    d.pieces.push_back(Piece::generic(0.0, R, fn));
    d.order = 1;
    d.supp_lo = 0.0;
    d.supp_hi = R;
    d.domain_R = R;
    d.decl_gamma = gamma;
    d.sigma0 = {0.0, gamma * E - 1.0};
    const double s1 = (beta - 1.0) / (p - 1.0);
    d.sigma1 = {s1, s1 - 1.0};
    return RadialProfile(std::move(d));
}

/// Polynomial bump ((r-lo)(hi-r))^J, scaled to peak amplitude amp;
/// C^{J-1} across the support edges.
inline RadialProfile poly_bump(double lo, double hi, int J, double amp, double domain_R = 1.0) {
    const int order = J - 1;
    const double norm = amp / pow_int(0.25 * (hi - lo) * (hi - lo), J);
    auto fn = [=](double r, int n) -> double {
        double sum = 0.0;
        double binom = 1.0;
        for (int i = 0; i <= n; ++i) {
            if (i <= J && n - i <= J) {
                double left = 1.0, right = 1.0;
                for (int t = 0; t < i; ++t) left *= (J - t);
                for (int t = 0; t < n - i; ++t) right *= (J - t);
                sum += binom * left * pow_int(r - lo, J - i) * ((n - i) % 2 ? -1.0 : 1.0) *
                       right * pow_int(hi - r, J - (n - i));
            }
            binom = binom * (n - i) / (i + 1.0);
        }
        return norm * sum;
    };
    detail::ProfileData d;
    d.pieces.push_back(Piece::generic(lo, hi, fn));
    d.order = order;
    d.supp_lo = lo;
    d.supp_hi = hi;
    d.domain_R = domain_R;
    d.decl_gamma = 1.0;
    d.sigma0 = flat_sigmas(order);
    d.sigma1 = flat_sigmas(order);
    return RadialProfile(std::move(d));
}

/// Pointwise product of two profiles (Leibniz derivatives); used for
/// perturbed minimizers and cut-off constructions.
inline RadialProfile product_profile(const RadialProfile& u, const RadialProfile& v) {
    const int order = std::min(u.order(), v.order());
    const double lo = std::max(u.support_lo(), v.support_lo());
    const double hi = std::min(u.support_hi(), v.support_hi());
    auto fn = [u, v](double r, int j) -> double {
        double sum = 0.0;
        double binom = 1.0;
        for (int i = 0; i <= j; ++i) {
            sum += binom * u.deriv(r, i) * v.deriv(r, j - i);
            binom = binom * (j - i) / (i + 1.0);
        }
        return sum;
    };
    // split at the union of both profiles' edges
    std::vector<double> edges{lo, hi};
    for (double b : u.breakpoints())
        if (b > lo && b < hi) edges.push_back(b);
    for (double b : v.breakpoints())
        if (b > lo && b < hi) edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    detail::ProfileData d;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        d.pieces.push_back(Piece::generic(edges[i], edges[i + 1], fn));
    d.order = order;
    d.supp_lo = lo;
    d.supp_hi = hi;
    d.domain_R = u.domain_radius();
    d.decl_gamma = u.decl_gamma();
    d.sigma0 = {u.sigma0(0) + v.sigma0(0)};
    d.sigma1 = {u.sigma1(0) + v.sigma1(0)};
    return RadialProfile(std::move(d));
}

/// 1 + eps * bump, defined on the whole (0, R] (for perturbation tests).
inline RadialProfile one_plus_bump(double eps, double lo, double hi, int J, double R = 1.0) {
    RadialProfile bump = poly_bump(lo, hi, J, 1.0, R);
    auto fn = [bump, eps](double r, int j) -> double {
        double v = (r >= bump.support_lo() && r <= bump.support_hi()) ? bump.deriv(r, j) : 0.0;
        return (j == 0 ? 1.0 : 0.0) + eps * v;
    };
    detail::ProfileData d;
    std::vector<double> edges{0.0, lo, hi, R};
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        d.pieces.push_back(Piece::generic(edges[i], edges[i + 1], fn));
    d.order = bump.order();
    d.supp_lo = 0.0;
    d.supp_hi = R;
    d.domain_R = R;
    d.decl_gamma = 1.0;
    d.sigma0 = flat_sigmas(bump.order());
    d.sigma1 = flat_sigmas(bump.order());
    return RadialProfile(std::move(d));
}

/// TermSum body with a smoothstep ramp from zero on [0, rc] (e.g. the
/// boundary-flat test function (1-(r/R)^gamma)^A cut smoothly at the origin).
inline RadialProfile origin_cut_profile(TermSum body, double rc, double R, double gamma,
                                        double sigma1, int order) {
    detail::ProfileData d;
    d.pieces.push_back(Piece::term_sum(0.0, rc, body, order, CutoffRamp{0.0, rc, true}));
    d.pieces.push_back(Piece::term_sum(rc, R, body, order));
    d.order = order;
    d.supp_lo = 0.0;
    d.supp_hi = R;
    d.domain_R = R;
    d.decl_gamma = gamma;
    d.sigma0 = flat_sigmas(order);
    d.sigma1 = power_law_sigmas(sigma1, order);
    return RadialProfile(std::move(d));
}

}  // namespace hardylab
