#pragma once

#include <cmath>
#include <stdexcept>

#include "hardylab/constants.hpp"
#include "hardylab/grad.hpp"
#include "hardylab/params.hpp"
#include "hardylab/profile.hpp"
#include "hardylab/quadrature.hpp"

namespace hardylab {

/// One side of an inequality: d-th order gradient power against a weight.
/// grad_order 0 is |u|, 1 is |grad u . x/|x|| = |u'|, k >= 2 is |grad^k u|.
struct SideSpec {
    WeightSpec w;
    int grad_order = 0;
    double scale = 1.0;
    bool one_dim = false;
};

struct FormTraits {
    SideSpec num;  // right-hand (gradient) side
    SideSpec den;  // left-hand (mass) side, without the sharp constant
    double sharp = 0.0;
};

/// Weight layouts of every supported inequality, exactly as displayed.
inline FormTraits form_traits(const InequalityParams& q) {
    q.validate();
    const double a = q.alpha, b = q.beta, g = q.gamma, p = q.p, R = q.R;
    const int k = q.k;
    FormTraits t;
    t.sharp = sharp_constant(q);
    auto W = [&](double wa, double wb, double wc, double wgamma) {
        return WeightSpec{wa, wb, wc, wgamma, R};
    };
    switch (q.form) {
        case Form::ClassicalHardy:
            t.num = {W(p - a, 0, 0, 1), 1};
            t.den = {W(-a, 0, 0, 1), 0};
            break;
        case Form::GeometricHardy:  // dist(x, boundary) = R (1 - r/R)
            t.num = {W(0, p - b, 0, 1), 1, std::pow(R, p - b)};
            t.den = {W(0, -b, 0, 1), 0, std::pow(R, -b)};
            break;
        case Form::ImprovedHardy:
            t.num = {W(p - a, p - b, 0, g), 1};
            t.den = {W(-a, -b, 0, g), 0};
            break;
        case Form::ImprovedHardyA:
            t.num = {W(p - a, -b, 0, g), 1};
            t.den = {W(-a, -b, 0, g), 0};
            break;
        case Form::ImprovedHardyB:
            t.num = {W(-(a - g + (g - 1.0) * p), p - b, 0, g), 1};
            t.den = {W(-(a - g), -b, 0, g), 0};
            break;
        case Form::LogHardy:
            t.num = {W(p - a, 0, p - b, 1), 1};
            t.den = {W(-a, 0, -b, 1), 0};
            break;
        case Form::Rellich:
            t.num = {W(k * p - a, 0, 0, 1), k};
            t.den = {W(-a, 0, 0, 1), 0};
            break;
        case Form::GeometricRellich:
            t.num = {W(0, 0, 0, 1), k};
            t.den = {W(0, -k * p, 0, 1), 0, std::pow(R, -k * p)};
            break;
        case Form::ImprovedRellichP2:
            t.num = {W(4.0 - a, 0, 0, 1), 2};
            t.den = {W(-a, -2, 0, g), 0};
            break;
        case Form::ImprovedRellichBP2:
            t.num = {W(4.0 - a, 0, 0, 1), 2};
            t.den = {W(-a, -4, 0, g), 0};
            break;
        case Form::ImprovedRellichKP2:
            t.num = {W(2.0 * k - a, 0, 0, 1), k};
            t.den = {W(-a, -2, 0, g), 0};
            break;
        case Form::ImprovedRellichRad:
            t.num = {W(k * p - a, 0, 0, 1), k};
            t.den = {W(-a, -p, 0, g), 0};
            break;
        case Form::ImprovedRellichRadB:
            t.num = {W(k * p - a, k * p - b, 0, g), k};
            t.den = {W(-a, -b, 0, g), 0};
            break;
        case Form::CriticalRellich:
            t.num = {W(k * p - a, 0, 0, 1), k};
            t.den = {W(-a, 0, -p, 1), 0};
            break;
        case Form::OneDimHardy:
            t.num = {W(a, 0, 0, 1), 1, 1.0, true};
            t.den = {W(a - p, 0, 0, 1), 0, 1.0, true};
            break;
        case Form::OneDimImprovedHardy:
            t.num = {W(a + p, p - b, 0, g), 1, 1.0, true};
            t.den = {W(a, -b, 0, g), 0, 1.0, true};
            break;
        case Form::HardyRellichStep:
            t.num = {W(p - a, 0, 0, 1), 2};
            t.den = {W(-a, 0, 0, 1), 1};
            break;
        case Form::ImprovedHardyRellichStep:
            t.num = {W(p - a, p - b, 0, g), 2};
            t.den = {W(-a, -b, 0, g), 1};
            break;
    }
    return t;
}

/// One weighted integral of an inequality side (full B_R integral: the
/// volume factor r^{N-1} and the sphere area are applied here).
inline IntegralResult side_integral(const RadialProfile& u, const InequalityParams& q,
                                    const SideSpec& side, double power,
                                    const QuadratureConfig& cfg = {}) {
    RadialProfile f = u;
    int deriv = side.grad_order;
    if (side.grad_order >= 2) {
        f = apply_grad_k(u, side.grad_order, q.N);
        deriv = 0;
    }
    if (deriv > f.order()) throw std::invalid_argument("side_integral: profile order too low");
    WeightSpec w = side.w;
    double factor = side.scale;
    if (!side.one_dim) {
        w.a += q.N - 1;
        factor *= unit_sphere_area(q.N);
    }
    IntegralResult r = integrate_weighted(profile_power_factor(f, power, deriv), w, cfg);
    r.value *= factor;
    r.error *= factor;
    return r;
}

/// Rayleigh quotient of one profile against one inequality form.
/// relative_gap = quotient/sharp - 1 >= -(quadrature tolerance) whenever both
/// sides converge: that is the inequality itself.
struct QuotientReport {
    IntegralResult numerator;
    IntegralResult denominator;
    double quotient = quiet_nan();
    double sharp_constant = 0.0;
    double relative_gap = quiet_nan();
    bool divergent_numerator = false;
    bool divergent_denominator = false;
    double quad_error_bound = quiet_nan();

    bool both_converged() const {
        return numerator.status == IntStatus::Ok && denominator.status == IntStatus::Ok;
    }
};

inline QuotientReport make_quotient_report(IntegralResult num, IntegralResult den,
                                           double sharp) {
    QuotientReport rep;
    rep.numerator = num;
    rep.denominator = den;
    rep.sharp_constant = sharp;
    rep.divergent_numerator = num.divergent();
    rep.divergent_denominator = den.divergent();
    if (num.status != IntStatus::Divergent && den.status != IntStatus::Divergent &&
        den.value > 0.0) {
        rep.quotient = num.value / den.value;
        rep.relative_gap = rep.quotient / sharp - 1.0;
        rep.quad_error_bound =
            num.error / std::max(num.value, 1e-300) + den.error / std::max(den.value, 1e-300);
    } else if (num.divergent() && den.status == IntStatus::Ok) {
        rep.quotient = inf();  // the virtual-extremal signature
        rep.relative_gap = inf();
    }
    return rep;
}

inline QuotientReport quotient(const RadialProfile& u, const InequalityParams& q,
                               const QuadratureConfig& cfg = {}) {
    const FormTraits t = form_traits(q);
    IntegralResult num = side_integral(u, q, t.num, q.p, cfg);
    IntegralResult den = side_integral(u, q, t.den, q.p, cfg);
    return make_quotient_report(num, den, t.sharp);
}

inline QuotientReport hardy_quotient(const RadialProfile& u, const InequalityParams& q,
                                     const QuadratureConfig& cfg = {}) {
    if (form_traits(q).num.grad_order > 1)
        throw std::invalid_argument("hardy_quotient: use rellich_quotient for grad^k forms");
    return quotient(u, q, cfg);
}

inline QuotientReport rellich_quotient(const RadialProfile& u, const InequalityParams& q,
                                       const QuadratureConfig& cfg = {}) {
    if (form_traits(q).num.grad_order < 2)
        throw std::invalid_argument("rellich_quotient: use hardy_quotient for first-order forms");
    return quotient(u, q, cfg);
}

/// Bregman-type remainder R_p(xi, eta) = |eta|^p/p + (p-1)|xi|^p/p
/// - |xi|^{p-2} xi eta; nonnegative, zero iff xi = eta.
inline double rp_bregman(double xi, double eta, double p) {
    if (p <= 1.0) throw AdmissibilityError("rp_bregman: p > 1 required");
    const double cross =
        (xi == 0.0) ? 0.0 : std::pow(std::abs(xi), p - 1.0) * (xi > 0 ? 1.0 : -1.0) * eta;
    return std::pow(std::abs(eta), p) / p + (p - 1.0) / p * std::pow(std::abs(xi), p) - cross;
}

namespace detail_fn {

inline void require_remainder_form(const InequalityParams& q) {
    InequalityParams ih = q;
    ih.form = Form::ImprovedHardy;
    ih.validate();
    if (q.p <= 1.0)
        throw AdmissibilityError("remainder terms require p > 1");
    if (q.beta >= 1e300 || !(q.beta > 1.0))
        throw AdmissibilityError("remainder terms require 1 < beta < inf");
}

inline std::vector<double> merged_splits(const RadialProfile& u,
                                         const std::function<double(double)>& signed_fn) {
    std::vector<double> splits = u.breakpoints();
    std::vector<double> edges{u.support_lo()};
    edges.insert(edges.end(), splits.begin(), splits.end());
    edges.push_back(u.support_hi());
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        for (double z : scan_sign_changes(signed_fn, edges[i], edges[i + 1]))
            splits.push_back(z);
    std::sort(splits.begin(), splits.end());
    return splits;
}

}  // namespace detail_fn

/// Remainder term psi of the improved Hardy inequality. Subcritical
/// alpha < N-(beta-1)gamma: the explicit weighted mass term. Critical:
/// the gradient-of-ratio integral with the free constant c0 (positivity
/// is the only verifiable claim there).
struct PsiResult {
    double value = 0.0;
    bool critical = false;
};

inline PsiResult remainder_psi(const RadialProfile& u, const InequalityParams& q,
                               double c0 = 1.0, const QuadratureConfig& cfg = {}) {
    detail_fn::require_remainder_form(q);
    const double a = q.alpha, b = q.beta, g = q.gamma, p = q.p, R = q.R;
    const int N = q.N;
    const double slack = N - a - (b - 1.0) * g;
    const double omega = unit_sphere_area(N);
    PsiResult out;
    if (slack > 1e-12) {
        WeightSpec w{N - 1.0 - a, -(b - 1.0), 0, g, R};
        IntegralResult I = integrate_weighted(profile_power_factor(u, p), w, cfg);
        if (!I.ok()) throw std::runtime_error("remainder_psi: mass integral did not converge");
        out.value = slack * std::pow((b - 1.0) * g / p, p - 1.0) * omega * I.value;
        return out;
    }
    out.critical = true;
    // v = u / ((r/R)^{-gamma} - 1)^{(beta-1)/p}; integrate r^{p-1} ell^{p-1} |v'|^p
    const double E = (b - 1.0) / p;
    auto vprime = [u, E, g, R](double r) -> double {
        const double ell = one_minus_pow(r, g, R);
        const double lw = std::log(ell) - g * std::log(r / R);
        const double wstar = std::exp(E * lw);
        return (u.deriv(r, 1) + u.eval(r) * E * g / (r * ell)) / wstar;
    };
    RadialFactor G;
    G.supp_lo = u.support_lo();
    G.supp_hi = u.support_hi();
    G.splits = detail_fn::merged_splits(u, vprime);
    G.sig0 = p * (u.sigma0(0) + g * E - 1.0);
    G.sig1 = p * (u.sigma1(0) - E - 1.0);
    G.g = [vprime, p](double r) { return std::pow(std::abs(vprime(r)), p); };
    WeightSpec w{p - 1.0, p - 1.0, 0, g, R};
    IntegralResult I = integrate_weighted(G, w, cfg);
    if (!I.ok()) throw std::runtime_error("remainder_psi: gradient integral did not converge");
    double grad_term = omega * I.value;
    if (p >= 2.0) {
        out.value = c0 * grad_term;
    } else {
        const FormTraits t = form_traits(
            InequalityParams::make(Form::ImprovedHardy, N, p, a, b, g, R, q.k));
        IntegralResult num = side_integral(u, q, t.num, p, cfg);
        if (!num.ok()) throw std::runtime_error("remainder_psi: gradient side did not converge");
        out.value = c0 * std::pow(grad_term, 2.0 / p) * std::pow(num.value, (p - 2.0) / 2.0);
    }
    return out;
}

/// Residual of the exact remainder identity: sharp * mass side equals the
/// gradient side minus the R_p term minus the subcriticality term.
/// Both sides are computed by independent quadratures.
inline double verify_remainder_identity(const RadialProfile& u, const InequalityParams& q,
                                        const QuadratureConfig& cfg = {}) {
    detail_fn::require_remainder_form(q);
    const double a = q.alpha, b = q.beta, g = q.gamma, p = q.p, R = q.R;
    const int N = q.N;
    const double omega = unit_sphere_area(N);
    const double sharp = std::pow((b - 1.0) * g / p, p);

    InequalityParams ih = q;
    ih.form = Form::ImprovedHardy;
    const FormTraits t = form_traits(ih);
    IntegralResult den = side_integral(u, ih, t.den, p, cfg);
    IntegralResult num = side_integral(u, ih, t.num, p, cfg);

    const double eta_c = p / ((b - 1.0) * g);
    auto eta = [u, eta_c, g, R](double r) -> double {
        return eta_c * (-u.deriv(r, 1)) * r * one_minus_pow(r, g, R);
    };
    auto xi_fn = [u](double r) { return u.eval(r); };
    auto eta_fn = eta;

    RadialFactor G;
    G.supp_lo = u.support_lo();
    G.supp_hi = u.support_hi();
    {
        G.splits = detail_fn::merged_splits(u, [&](double r) { return xi_fn(r); });
        auto more = detail_fn::merged_splits(u, [&](double r) { return eta_fn(r); });
        G.splits.insert(G.splits.end(), more.begin(), more.end());
        std::sort(G.splits.begin(), G.splits.end());
    }
    G.sig0 = p * u.sigma0(0);
    G.sig1 = p * u.sigma1(0);
    G.g = [u, eta, p](double r) { return rp_bregman(u.eval(r), eta(r), p); };
    WeightSpec w_rp{N - 1.0 - a, -b, 0, g, R};
    IntegralResult IR = integrate_weighted(G, w_rp, cfg);

    WeightSpec w_psi{N - 1.0 - a, 1.0 - b, 0, g, R};
    IntegralResult IPsi = integrate_weighted(profile_power_factor(u, p), w_psi, cfg);

    if (!den.ok() || !num.ok() || !IR.ok() || !IPsi.ok())
        throw std::runtime_error("verify_remainder_identity: a term diverged or did not converge");

    const double lhs = sharp * den.value;
    const double rhs = num.value - p * sharp * omega * IR.value -
                       (N - a - (b - 1.0) * g) * std::pow((b - 1.0) * g / p, p - 1.0) * omega *
                           IPsi.value;
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    return scale == 0.0 ? 0.0 : std::abs(lhs - rhs) / scale;
}

/// Quotient of the weighted Hardy-Sobolev functional (numerator gradient
/// integral over the q-th root pair), compared against t_rad_constant.
inline QuotientReport hs_quotient(const RadialProfile& u, int N, double p, double q,
                                  double alpha, double beta, double R,
                                  const QuadratureConfig& cfg = {}) {
    if (!(1.0 < p && p < q)) throw AdmissibilityError("hs_quotient: 1 < p < q required");
    if (!(alpha < N)) throw AdmissibilityError("hs_quotient: alpha < N required");
    if (!(beta > 1.0)) throw AdmissibilityError("hs_quotient: beta > 1 required");
    const double gamma = (N - alpha) / (beta - 1.0);
    const double omega = unit_sphere_area(N);

    WeightSpec wn{N - 1.0 + p - alpha, p - beta, 0, gamma, R};
    IntegralResult num = integrate_weighted(profile_power_factor(u, p, 1), wn, cfg);
    num.value *= omega;
    num.error *= omega;

    WeightSpec wd{N - 1.0 - (N - (q / p) * (N - alpha)), -(1.0 + (beta - 1.0) / p * q), 0, gamma,
                  R};
    IntegralResult den = integrate_weighted(profile_power_factor(u, q), wd, cfg);
    den.value *= omega;
    den.error *= omega;

    QuotientReport rep;
    rep.numerator = num;
    rep.denominator = den;
    rep.sharp_constant = t_rad_constant(N, p, q, alpha);
    rep.divergent_numerator = num.divergent();
    rep.divergent_denominator = den.divergent();
    if (num.ok() && den.ok() && den.value > 0.0) {
        rep.quotient = num.value / std::pow(den.value, p / q);
        rep.relative_gap = rep.quotient / rep.sharp_constant - 1.0;
        rep.quad_error_bound = num.error / std::max(num.value, 1e-300) +
                               (p / q) * den.error / std::max(den.value, 1e-300);
    } else if (num.divergent() && den.ok()) {
        rep.quotient = inf();
        rep.relative_gap = inf();
    }
    return rep;
}

}  // namespace hardylab
