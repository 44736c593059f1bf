#pragma once

#include <cmath>
#include <functional>

#include "hardylab/constants.hpp"
#include "hardylab/functionals.hpp"
#include "hardylab/profile.hpp"
#include "hardylab/quadrature.hpp"

namespace hardylab {

/// The three radial charts tied together by
/// (|x|^{-gamma} - R^{-gamma}) = |y|^{-gamma} = log(R/|z|).
enum class Chart { Ball, FullSpace, LogBall };

inline std::string chart_name(Chart c) {
    switch (c) {
        case Chart::Ball: return "ball";
        case Chart::FullSpace: return "fullspace";
        default: return "logball";
    }
}

namespace detail_chart {

// clamp into the open chart interval so endpoint-singular factors are never
// evaluated exactly at 0 or R
inline double clamp_open(double r, double R) {
    const double lo = (std::isinf(R) ? 1.0 : R) * 1e-300;
    if (r < lo) return lo;
    if (!std::isinf(R) && r >= R) return std::nextafter(R, 0.0);
    return r;
}

// w = (R/r)^gamma - 1, exact near r = R
inline double wvar(double r, double gamma, double R) {
    return std::expm1(gamma * std::log(R / r));
}

inline double x_to_y(double r, double g, double R) {
    return clamp_open(R * std::pow(wvar(r, g, R), -1.0 / g), inf());
}
inline double y_to_x(double rho, double g, double R) {
    return clamp_open(R * std::exp(-std::log1p(std::pow(R / rho, g)) / g), R);
}
inline double y_to_z(double rho, double g, double R) {
    return clamp_open(R * std::exp(-std::pow(rho, -g)), R);
}
inline double z_to_y(double zeta, double g, double R) {
    return clamp_open(std::pow(std::log(R / zeta), -1.0 / g), inf());
}
inline double x_to_z(double r, double g, double R) {
    return clamp_open(R * std::exp(-std::pow(R, -g) * wvar(r, g, R)), R);
}
inline double z_to_x(double zeta, double g, double R) {
    return clamp_open(R * std::exp(-std::log1p(std::pow(R, g) * std::log(R / zeta)) / g), R);
}

inline double d_x_to_y(double r, double g, double R) {
    const double rho = x_to_y(r, g, R);
    return std::pow(rho, 1.0 + g) * std::pow(r, -g - 1.0);
}
inline double d_y_to_z(double rho, double g, double R) {
    return y_to_z(rho, g, R) * g * std::pow(rho, -g - 1.0);
}
inline double d_x_to_z(double r, double g, double R) {
    return x_to_z(r, g, R) * g * std::pow(r, -g - 1.0);
}

}  // namespace detail_chart

/// Strictly monotone radial coordinate map between two charts. Maps act on
/// radii only; integrals are recomputed per chart, never density-transformed.
struct ChartMap {
    Chart source = Chart::Ball;
    Chart target = Chart::Ball;
    double gamma = 1.0;
    double R = 1.0;

    double forward(double r) const { return map(source, target, r); }
    double inverse(double rp) const { return map(target, source, rp); }

    /// d(forward)/dr.
    double dforward(double r) const {
        using namespace detail_chart;
        if (source == target) return 1.0;
        if (source == Chart::Ball && target == Chart::FullSpace) return d_x_to_y(r, gamma, R);
        if (source == Chart::Ball && target == Chart::LogBall) return d_x_to_z(r, gamma, R);
        if (source == Chart::FullSpace && target == Chart::LogBall)
            return d_y_to_z(r, gamma, R);
        // inverse directions via the reciprocal at the image
        ChartMap rev{target, source, gamma, R};
        return 1.0 / rev.dforward(forward(r));
    }

    double dinverse(double rp) const {
        ChartMap rev{target, source, gamma, R};
        return rev.dforward(rp);
    }

    double source_radius() const { return source == Chart::FullSpace ? inf() : R; }
    double target_radius() const { return target == Chart::FullSpace ? inf() : R; }

private:
    double map(Chart from, Chart to, double r) const {
        using namespace detail_chart;
        if (from == to) return r;
        if (from == Chart::Ball && to == Chart::FullSpace) return x_to_y(r, gamma, R);
        if (from == Chart::Ball && to == Chart::LogBall) return x_to_z(r, gamma, R);
        if (from == Chart::FullSpace && to == Chart::LogBall) return y_to_z(r, gamma, R);
        if (from == Chart::FullSpace && to == Chart::Ball) return y_to_x(r, gamma, R);
        if (from == Chart::LogBall && to == Chart::FullSpace) return z_to_y(r, gamma, R);
        return z_to_x(r, gamma, R);  // LogBall -> Ball
    }
};

inline ChartMap radius_map(Chart from, Chart to, double gamma, double R) {
    if (gamma <= 0.0) throw AdmissibilityError("radius_map: gamma > 0 required");
    if (R <= 0.0) throw AdmissibilityError("radius_map: R > 0 required");
    return ChartMap{from, to, gamma, R};
}

/// v(r') = u(inverse(r')) with the chain-rule first derivative.
inline RadialProfile pushforward(const RadialProfile& u, const ChartMap& map) {
    if (map.source == map.target) return u;
    const int order = std::min(u.order(), 1);
    auto image = [&map](double r) -> double {
        if (r <= 0.0) return 0.0;
        const double Rs = map.source_radius();
        if (!std::isinf(Rs) && r >= Rs) return map.target_radius();
        return map.forward(r);
    };
    std::function<double(double, int)> fn = [u, map](double rp, int j) -> double {
        const double r = map.inverse(rp);
        if (j == 0) return u.eval(r);
        return u.deriv(r, 1) * map.dinverse(rp);
    };
    // Far tail of the full-space chart: beyond rho ~ R*10^{10/gamma} the
    // inverse map can no longer resolve the boundary distance in doubles, so
    // continue with the declared power asymptotic (the spliced region holds
    // a <= 1e-10 fraction of any convergent integral).
    if (map.target == Chart::FullSpace && !std::isinf(map.source_radius()) &&
        u.support_hi() >= map.source_radius()) {
        const double splice = map.R * std::pow(10.0, 10.0 / map.gamma);
        const double sig_t = -map.gamma * u.sigma1(0);
        const double v_rel = u.eval(map.inverse(splice));
        auto base = fn;
        fn = [base, splice, sig_t, v_rel](double rp, int j) -> double {
            if (rp <= splice) return base(rp, j);
            const double v = v_rel * std::pow(rp / splice, sig_t);
            return j == 0 ? v : v * sig_t / rp;
        };
    }

    detail::ProfileData d;
    std::vector<double> edges{u.support_lo()};
    for (double b : u.breakpoints()) edges.push_back(b);
    edges.push_back(u.support_hi());
    std::vector<double> mapped;
    for (double e : edges) mapped.push_back(image(e));
    for (std::size_t i = 0; i + 1 < mapped.size(); ++i)
        d.pieces.push_back(Piece::generic(mapped[i], mapped[i + 1], fn));
    d.order = order;
    d.supp_lo = mapped.front();
    d.supp_hi = mapped.back();
    d.domain_R = map.target_radius();

    // translate declared endpoint behavior; power-type ends translate
    // exactly, log-type ends fall back to the bounded declaration
    const double g = map.gamma;
    double s0 = u.sigma0(0), s1 = u.sigma1(0);
    if (map.source == Chart::Ball && map.target == Chart::FullSpace) {
        d.sigma0 = {s0, s0 - 1.0};
        d.sigma1 = {-g * s1, -g * s1 - 1.0};  // tail power of rho
        d.decl_gamma = g;
    } else if (map.source == Chart::FullSpace && map.target == Chart::Ball) {
        d.sigma0 = {s0, s0 - 1.0};
        d.sigma1 = {-s1 / g, -s1 / g - 1.0};
        d.decl_gamma = g;
    } else if (map.target == Chart::LogBall) {
        d.sigma0 = {0.0, 0.0};  // log-type origin behavior: conservative
        d.sigma1 = {s1, s1 - 1.0};
        d.decl_gamma = 1.0;
    } else {  // LogBall -> FullSpace
        d.sigma0 = {0.0, 0.0};
        d.sigma1 = {-g * s1, -g * s1 - 1.0};
        d.decl_gamma = g;
    }
    return RadialProfile(std::move(d));
}

/// Gradient-side and mass-side integrals of the combined Hardy inequality in
/// all three charts (with the exact gamma^{p-1} and gamma^{-1} factors);
/// returns the max pairwise relative deviation per side.
struct TransplantResiduals {
    double residual_grad = 0.0;
    double residual_mass = 0.0;
    double grad_integrals[3] = {0, 0, 0};  // ball, fullspace, logball
    double mass_integrals[3] = {0, 0, 0};
};

inline TransplantResiduals verify_transplant_equivalence(const RadialProfile& u, int N, double p,
                                                         double alpha, double beta, double R,
                                                         const QuadratureConfig& cfg = {}) {
    if (!(beta > 1.0)) throw AdmissibilityError("verify_transplant_equivalence: beta > 1");
    const double gamma = (N - alpha) / (beta - 1.0);
    if (!(gamma > 0.0)) throw AdmissibilityError("verify_transplant_equivalence: alpha < N");
    const double omega = unit_sphere_area(N);

    RadialProfile v = pushforward(u, radius_map(Chart::Ball, Chart::FullSpace, gamma, R));
    RadialProfile w = pushforward(u, radius_map(Chart::Ball, Chart::LogBall, gamma, R));

    auto val = [&](IntegralResult r, double scale) -> double {
        if (!r.ok()) throw std::runtime_error("verify_transplant_equivalence: integral diverged");
        return scale * r.value;
    };

    TransplantResiduals out;
    // gradient side
    out.grad_integrals[0] = val(
        integrate_weighted(profile_power_factor(u, p, 1),
                           WeightSpec{N - 1.0 + p - alpha, p - beta, 0, gamma, R}, cfg),
        omega);
    out.grad_integrals[1] =
        val(integrate_weighted(profile_power_factor(v, p, 1),
                               WeightSpec{N - 1.0 + p - alpha, 0, 0, 1.0, inf()}, cfg),
            omega);
    out.grad_integrals[2] =
        val(integrate_weighted(profile_power_factor(w, p, 1),
                               WeightSpec{p - 1.0, 0, p - beta, 1.0, R}, cfg),
            omega * std::pow(gamma, p - 1.0));
    // mass side
    out.mass_integrals[0] =
        val(integrate_weighted(profile_power_factor(u, p),
                               WeightSpec{N - 1.0 - alpha, -beta, 0, gamma, R}, cfg),
            omega);
    out.mass_integrals[1] =
        val(integrate_weighted(profile_power_factor(v, p),
                               WeightSpec{N - 1.0 - alpha, 0, 0, 1.0, inf()}, cfg),
            omega);
    out.mass_integrals[2] = val(integrate_weighted(profile_power_factor(w, p),
                                                   WeightSpec{-1.0, 0, -beta, 1.0, R}, cfg),
                                omega / gamma);

    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            out.residual_grad =
                std::max(out.residual_grad, rel_dev(out.grad_integrals[i], out.grad_integrals[j]));
            out.residual_mass =
                std::max(out.residual_mass, rel_dev(out.mass_integrals[i], out.mass_integrals[j]));
        }
    return out;
}

/// The scaling that leaves the critical-line inequality invariant:
/// Ball chart r~ = lambda r [1-(1-lambda^gamma)(r/R)^gamma]^{-1/gamma}
/// (realized as conjugation through the full-space chart);
/// LogBall chart r~ = R (r/R)^mu with mu = lambda^{-gamma}.
struct ScalingMap {
    double lambda = 1.0;
    double gamma = 1.0;
    double R = 1.0;
    Chart chart = Chart::Ball;

    double forward(double r) const {
        if (lambda == 1.0) return r;
        if (chart == Chart::Ball) {
            using namespace detail_chart;
            return y_to_x(lambda * x_to_y(r, gamma, R), gamma, R);
        }
        const double mu = std::pow(lambda, -gamma);
        return detail_chart::clamp_open(R * std::exp(mu * std::log(r / R)), R);
    }

    double inverse(double r) const {
        ScalingMap inv{1.0 / lambda, gamma, R, chart};
        return inv.forward(r);
    }

    double dforward(double r) const {
        if (lambda == 1.0) return 1.0;
        if (chart == Chart::Ball) {
            using namespace detail_chart;
            const double rho = x_to_y(r, gamma, R);
            return lambda * d_x_to_y(r, gamma, R) /
                   d_x_to_y(y_to_x(lambda * rho, gamma, R), gamma, R);
        }
        const double mu = std::pow(lambda, -gamma);
        return mu * std::exp((mu - 1.0) * std::log(r / R));
    }
};

inline ScalingMap scaling_map(double lambda, double gamma, double R, Chart chart = Chart::Ball) {
    if (lambda <= 0.0) throw AdmissibilityError("scaling_map: lambda > 0 required");
    return ScalingMap{lambda, gamma, R, chart};
}

/// u_lambda(r) = prefactor * u(r~(r)); the invariance prefactor is
/// lambda^{(N-alpha)/p} on the Ball chart and mu^{-(beta-1)/p} on LogBall.
inline RadialProfile apply_scaling(const RadialProfile& u, const ScalingMap& map,
                                   double prefactor) {
    auto fn = [u, map, prefactor](double r, int j) -> double {
        const double rt = map.forward(r);
        if (j == 0) return prefactor * u.eval(rt);
        return prefactor * u.deriv(rt, 1) * map.dforward(r);
    };
    std::vector<double> edges{u.support_lo()};
    for (double b : u.breakpoints()) edges.push_back(b);
    edges.push_back(u.support_hi());

    detail::ProfileData d;
    std::vector<double> mapped;
    for (double e : edges)
        mapped.push_back(e <= 0.0 ? 0.0 : (e >= map.R ? map.R : map.inverse(e)));
    for (std::size_t i = 0; i + 1 < mapped.size(); ++i)
        d.pieces.push_back(Piece::generic(mapped[i], mapped[i + 1], fn));
    d.order = std::min(u.order(), 1);
    d.supp_lo = mapped.front();
    d.supp_hi = mapped.back();
    d.domain_R = u.domain_radius();
    d.decl_gamma = u.decl_gamma();
    d.sigma0 = {u.sigma0(0), u.sigma0(0) - 1.0};
    d.sigma1 = {u.sigma1(0), u.sigma1(0) - 1.0};
    return RadialProfile(std::move(d));
}

/// The invariance prefactor lambda^{(N-alpha)/p} for the Ball-chart scaling.
inline double ball_scaling_prefactor(double lambda, int N, double alpha, double p) {
    return std::pow(lambda, (N - alpha) / p);
}

/// The invariance prefactor mu^{-(beta-1)/p} for the LogBall-chart scaling.
inline double logball_scaling_prefactor(double lambda, double gamma, double beta, double p) {
    const double mu = std::pow(lambda, -gamma);
    return std::pow(mu, -(beta - 1.0) / p);
}

}  // namespace hardylab
