#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "hardylab/numeric.hpp"
#include "hardylab/profile.hpp"

namespace hardylab {

/// Weight r^a (1-(r/R)^gamma)^b (log(R/r))^c on (0, R).
struct WeightSpec {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double gamma = 1.0;
    double R = 1.0;
};

struct QuadratureConfig {
    double rel_tol = 1e-11;  // must stay in (1e-14, 1e-2)
    int max_level = 11;
    bool endpoint_substitution = true;

    void validate() const {
        if (!(rel_tol > 1e-14 && rel_tol < 1e-2))
            throw std::invalid_argument("QuadratureConfig: tolerance outside (1e-14, 1e-2)");
    }
};

enum class IntStatus { Ok, Divergent, NoConverge };

/// Divergence is a value, not an exception: the non-attainability arguments
/// rely on asserting it.
struct IntegralResult {
    IntStatus status = IntStatus::Ok;
    double value = 0.0;
    double error = 0.0;
    bool divergent_at_origin = false;
    bool divergent_at_boundary = false;

    bool ok() const { return status == IntStatus::Ok; }
    bool divergent() const { return status == IntStatus::Divergent; }
};

namespace de {

struct CoreResult {
    double value = 0.0;
    double error = 0.0;
    bool converged = false;
};

// Trapezoidal double-exponential driver over the transformed variable.
// `node` maps the DE variable t to {abscissa weight-product contribution}.
template <typename NodeFn>
CoreResult de_levels(NodeFn&& node, double t_max, double tol, int max_level) {
    double h = 1.0;
    double sum = 0.0;
    // level 0: all integer nodes
    {
        double s = node(0.0);
        for (int side = -1; side <= 1; side += 2) {
            int stale = 0;
            for (int j = 1; j * h <= t_max; ++j) {
                double term = node(side * j * h);
                s += term;
                if (std::abs(term) <= 1e-280 + 1e-16 * std::abs(s)) {
                    if (++stale >= 3) break;
                } else {
                    stale = 0;
                }
            }
        }
        sum = s;
    }
    double prev = sum * h;
    double cur = prev;
    double err = std::abs(prev);
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        double s = 0.0;
        for (int side = -1; side <= 1; side += 2) {
            int stale = 0;
            for (int j = 1; j * h <= t_max; j += 2) {
                double term = node(side * j * h);
                s += term;
                if (std::abs(term) <= 1e-280 + 1e-16 * std::abs(s + sum)) {
                    if (++stale >= 3) break;
                } else {
                    stale = 0;
                }
            }
        }
        sum += s;
        cur = sum * h;
        err = std::abs(cur - prev);
        double scale = std::max(std::abs(cur), 1e-300);
        if (level >= 3 && err <= tol * scale) return {cur, err, true};
        prev = cur;
    }
    return {cur, err, false};
}

// tanh-sinh on a finite interval (integrand evaluated at interior abscissae).
inline CoreResult tanh_sinh(const std::function<double(double)>& F, double lo, double hi,
                            double tol, int max_level) {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (lo + hi);
    auto node = [&](double t) -> double {
        const double u = 0.5 * pi * std::sinh(t);
        const double au = std::abs(u);
        double sech2;
        if (au > 300.0) {
            sech2 = 4.0 * std::exp(-2.0 * au);
        } else {
            const double ch = std::cosh(u);
            sech2 = 1.0 / (ch * ch);
        }
        const double w = half * 0.5 * pi * std::cosh(t) * sech2;
        if (!(w > 1e-290)) return 0.0;
        const double x = mid + half * std::tanh(u);
        if (x <= lo || x >= hi) return 0.0;
        const double f = F(x);
        if (!std::isfinite(f)) return 0.0;  // endpoint rounding guard
        return w * f;
    };
    return de_levels(node, 6.0, tol, max_level);
}

// exp-sinh on [x0, inf) for integrands decaying at infinity.
inline CoreResult exp_sinh(const std::function<double(double)>& F, double x0, double tol,
                           int max_level) {
    auto node = [&](double t) -> double {
        const double u = 0.5 * pi * std::sinh(t);
        if (u > 690.0) return 0.0;
        const double eu = std::exp(u);
        const double w = eu * 0.5 * pi * std::cosh(t);
        if (!(w > 1e-290)) return 0.0;
        const double x = x0 + eu;
        const double f = F(x);
        if (!std::isfinite(f)) return 0.0;
        return w * f;
    };
    return de_levels(node, 6.7, tol, max_level);
}

}  // namespace de

/// Exact leading behavior of the integrand factor on an endpoint-adjacent
/// piece: factor = |ts|^pw there.
struct EndpointFold {
    bool exact = false;
    TermSum ts;
    double pw = 1.0;
};

/// The nonnegative radial factor G(r) multiplying the weight, with the
/// metadata the classifier and the endpoint substitutions need.
struct RadialFactor {
    std::function<double(double)> g;
    double supp_lo = 0.0;
    double supp_hi = 1.0;
    std::vector<double> splits;  // interior breakpoints (piece joints, |.| kinks)
    double sig0 = 0.0;           // G ~ r^{sig0} as r -> 0
    double sig1 = 0.0;           // G ~ ell^{sig1} at finite R; G ~ r^{sig1} at inf
    EndpointFold fold0, fold1;
};

namespace detail_quad {

inline double weight_eval(const WeightSpec& w, double r) {
    double v = 1.0;
    if (w.a != 0.0) v *= std::pow(r, w.a);
    if (w.b != 0.0) v *= std::pow(one_minus_pow(r, w.gamma, w.R), w.b);
    if (w.c != 0.0) v *= std::pow(std::log(w.R / r), w.c);
    return v;
}

}  // namespace detail_quad

/// Integrate weight(r) * G(r) over (0, R) (or (0, inf)): tanh-sinh away from
/// the endpoints, the substitutions t = log(R/r) near 0 and
/// e^{-s} = 1-(r/R)^gamma near R, each mapped through exp-sinh.
inline IntegralResult integrate_weighted(const RadialFactor& G, const WeightSpec& w,
                                         const QuadratureConfig& cfg = {}) {
    cfg.validate();
    const bool infinite = std::isinf(w.R);
    if (infinite && (w.b != 0.0 || w.c != 0.0))
        throw std::invalid_argument("integrate_weighted: ell/log weights need a finite R");

    const double L = std::max(0.0, G.supp_lo);
    const double U = infinite ? G.supp_hi : std::min(w.R, G.supp_hi);
    IntegralResult res;
    if (!(L < U)) return res;

    const bool touches0 = (L == 0.0);
    const bool touchesR = (!infinite && U == w.R);
    const bool touchesInf = (infinite && std::isinf(U));

    // -- divergence classifier ----------------------------------------------
    const double crit = 1e-12;
    if (touches0) {
        const double e0 = w.a + (G.fold0.exact ? G.fold0.pw * G.fold0.ts.min_sr() : G.sig0);
        if (e0 < -1.0 - crit || (std::abs(e0 + 1.0) <= crit && w.c >= -1.0)) {
            res.status = IntStatus::Divergent;
            res.divergent_at_origin = true;
        }
    }
    if (touchesR) {
        const double e1 =
            w.b + w.c + (G.fold1.exact ? G.fold1.pw * G.fold1.ts.min_sl() : G.sig1);
        if (e1 <= -1.0 + crit) {
            res.status = IntStatus::Divergent;
            res.divergent_at_boundary = true;
        }
    }
    if (touchesInf) {
        const double et = w.a + G.sig1;
        if (et >= -1.0 - crit) {
            res.status = IntStatus::Divergent;
            res.divergent_at_boundary = true;
        }
    }
    if (res.status == IntStatus::Divergent) {
        res.value = inf();
        return res;
    }

    // -- piece list -----------------------------------------------------------
    std::vector<double> edges{L, U};
    for (double s : G.splits)
        if (s > L && s < U) edges.push_back(s);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [](double x, double y) { return rel_dev(x, y) < 1e-13; }),
                edges.end());
    // never let one piece span both singular endpoints
    if (edges.size() == 2 && touches0 && (touchesR || touchesInf)) {
        edges.insert(edges.begin() + 1, touchesR ? 0.5 * w.R : 1.0);
    }

    const double Rref = infinite ? 1.0 : w.R;
    double total = 0.0, err = 0.0;
    bool all_ok = true;

    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double x0 = edges[i], x1 = edges[i + 1];
        de::CoreResult piece;
        if (i == 0 && touches0) {
            // r = Rref e^{-t}: algebraic origin behavior becomes exponential,
            // log factors become powers of t.
            const bool folded = G.fold0.exact;
            const double fold_exp = folded ? G.fold0.pw * G.fold0.ts.min_sr() : 0.0;
            const double ea = w.a + fold_exp;
            const double lR = std::log(Rref);
            TermSum shifted;
            double pw = 1.0;
            if (folded) {
                shifted = G.fold0.ts.shifted(-G.fold0.ts.min_sr(), 0.0);
                pw = G.fold0.pw;
            }
            auto F = [&, ea, lR, folded, shifted, pw](double t) -> double {
                const double r = Rref * std::exp(-t);
                double v = std::exp((ea + 1.0) * (lR - t));
                if (w.b != 0.0) v *= std::pow(-std::expm1(-w.gamma * t), w.b);
                if (w.c != 0.0) v *= std::pow(t, w.c);
                if (folded) {
                    v *= std::pow(std::abs(shifted.eval(r)), pw);
                } else {
                    v *= G.g(r);
                }
                return v;
            };
            piece = de::exp_sinh(F, std::log(Rref / x1), cfg.rel_tol, cfg.max_level);
        } else if (i + 2 == edges.size() && touchesR) {
            // e^{-s} = 1-(r/R)^{gamma_s}
            const bool folded = G.fold1.exact;
            double gs = (w.b != 0.0) ? w.gamma : (folded ? G.fold1.ts.g0 : 1.0);
            const double fold_exp = folded ? G.fold1.pw * G.fold1.ts.min_sl() : 0.0;
            const double eb = w.b + fold_exp;
            TermSum shifted;
            double pw = 1.0, gts = 1.0;
            if (folded) {
                shifted = G.fold1.ts.shifted(0.0, -G.fold1.ts.min_sl());
                pw = G.fold1.pw;
                gts = G.fold1.ts.g0;
            }
            auto F = [&, gs, eb, folded, shifted, pw, gts, fold_exp](double s) -> double {
                const double ems = std::exp(-s);
                const double l1p = std::log1p(-ems);  // log(1 - e^{-s})
                const double lr = std::log(w.R) + l1p / gs;
                const double r = std::exp(lr);
                double v = std::exp(w.a * lr - (eb + 1.0) * s);
                if (w.c != 0.0) v *= std::pow(-l1p / gs, w.c);
                v *= (w.R / gs) * std::exp((1.0 / gs - 1.0) * l1p);
                if (folded) {
                    // profile ell in its own base, from the exact e^{-s}
                    const double el_ts = (gts == gs) ? ems : -std::expm1((gts / gs) * l1p);
                    if (fold_exp != 0.0) v *= std::pow(el_ts / ems, fold_exp);
                    v *= std::pow(std::abs(shifted.eval_with_ell(r, el_ts)), pw);
                } else {
                    v *= G.g(r);
                }
                return v;
            };
            const double s0 = -std::log(one_minus_pow(x0, gs, w.R));
            piece = de::exp_sinh(F, s0, cfg.rel_tol, cfg.max_level);
        } else if (i + 2 == edges.size() && touchesInf) {
            // log-space product: x^a can overflow while G underflows
            auto F = [&](double x) -> double {
                const double gv = G.g(x);
                if (!(gv > 0.0) || !std::isfinite(gv)) return 0.0;
                return std::exp(w.a * std::log(x) + std::log(gv));
            };
            piece = de::exp_sinh(F, x0, cfg.rel_tol, cfg.max_level);
        } else {
            auto F = [&](double x) -> double { return detail_quad::weight_eval(w, x) * G.g(x); };
            piece = de::tanh_sinh(F, x0, x1, cfg.rel_tol, cfg.max_level);
        }
        total += piece.value;
        err += piece.error;
        all_ok = all_ok && piece.converged;
    }

    res.value = total;
    res.error = err;
    res.status = all_ok ? IntStatus::Ok : IntStatus::NoConverge;
    return res;
}

/// Locate sign changes of a scalar function on [lo, hi] (bisection-refined);
/// |f|^p is only finitely smooth at interior zeros unless p is an even
/// integer, so quotients split their integrals there.
inline std::vector<double> scan_sign_changes(const std::function<double(double)>& f, double lo,
                                             double hi, int samples = 400) {
    std::vector<double> zs;
    if (!(hi > lo)) return zs;
    double prev_x = lo + (hi - lo) * 1e-9;
    double prev_v = f(prev_x);
    for (int i = 1; i <= samples; ++i) {
        double x = lo + (hi - lo) * (static_cast<double>(i) / samples);
        if (i == samples) x = hi - (hi - lo) * 1e-9;
        double v = f(x);
        if (v == 0.0) {  // a zero landing exactly on the grid
            zs.push_back(x);
            prev_x = x;
            continue;  // keep the last nonzero sign
        }
        if (prev_v != 0.0 && std::signbit(prev_v) != std::signbit(v)) {
            double a = prev_x, b = x, fa = prev_v;
            for (int it = 0; it < 80; ++it) {
                double m = 0.5 * (a + b);
                double fm = f(m);
                if (fm == 0.0) {
                    a = b = m;
                    break;
                }
                if (std::signbit(fm) == std::signbit(fa)) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            zs.push_back(0.5 * (a + b));
        }
        prev_x = x;
        prev_v = v;
    }
    return zs;
}

inline bool is_even_integer(double p) {
    return p == std::floor(p) && static_cast<long long>(p) % 2 == 0;
}

/// Build the |f|^p factor of a profile, with exact endpoint folding where the
/// adjacent pieces are pure TermSums and |.|^p kink splits elsewhere.
inline RadialFactor profile_power_factor(const RadialProfile& f, double p, int deriv = 0) {
    RadialFactor G;
    G.supp_lo = f.support_lo();
    G.supp_hi = f.support_hi();
    G.splits = f.breakpoints();
    G.sig0 = p * f.sigma0(deriv);
    G.sig1 = p * f.sigma1(deriv);
    G.g = [f, p, deriv](double r) -> double {
        const Piece* pc = f.find_piece(r);
        if (!pc) return 0.0;
        return std::pow(std::abs(pc->deriv(r, deriv)), p);
    };

    const auto& pieces = f.pieces();
    if (!pieces.empty()) {
        const Piece& first = pieces.front();
        if (first.lo == 0.0 && G.supp_lo == 0.0 && first.is_pure_term_sum()) {
            TermSum ts = first.ts_derivs[deriv];
            G.fold0 = {true, std::move(ts), p};
        }
        const Piece& last = pieces.back();
        if (last.hi == G.supp_hi && last.hi == f.domain_radius() && last.is_pure_term_sum()) {
            TermSum ts = last.ts_derivs[deriv];
            G.fold1 = {true, std::move(ts), p};
        }
    }

    if (!is_even_integer(p)) {
        auto signed_val = [f, deriv](double r) -> double {
            const Piece* pc = f.find_piece(r);
            return pc ? pc->deriv(r, deriv) : 0.0;
        };
        std::vector<double> edges{G.supp_lo};
        for (double b : G.splits) edges.push_back(b);
        edges.push_back(std::isinf(G.supp_hi) ? G.supp_lo + 100.0 : G.supp_hi);
        for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
            for (double z : scan_sign_changes(signed_val, edges[i], edges[i + 1]))
                G.splits.push_back(z);
        }
        std::sort(G.splits.begin(), G.splits.end());
    }
    return G;
}

/// Integral of weight * |f|^p over (0, R), or Divergent when the endpoint
/// classifier fires.
inline IntegralResult integrate(const RadialProfile& f, double p, const WeightSpec& w,
                                const QuadratureConfig& cfg = {}) {
    return integrate_weighted(profile_power_factor(f, p), w, cfg);
}

}  // namespace hardylab
