#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "hardylab/numeric.hpp"

namespace hardylab {

/// Finite sum of c * r^sr * ell^sl with ell(r) = 1 - (r/R0)^g0. Closed under
/// d/dr, which keeps derivatives of all the paper-style radial families exact.
struct TermSum {
    struct Term {
        double c, sr, sl;
    };
    double g0 = 1.0;
    double R0 = 1.0;
    std::vector<Term> terms;

    static TermSum single(double c, double sr, double sl, double g0 = 1.0, double R0 = 1.0) {
        return TermSum{g0, R0, {{c, sr, sl}}};
    }

    bool uses_ell() const {
        for (const auto& t : terms)
            if (t.sl != 0.0) return true;
        return false;
    }

    double ell(double r) const { return one_minus_pow(r, g0, R0); }

    double eval(double r) const { return eval_with_ell(r, ell(r)); }

    // Caller supplies ell when it has a more accurate value than ell(r)
    // (endpoint-substituted quadrature nodes near r = R0).
    double eval_with_ell(double r, double el) const {
        double sum = 0.0;
        for (const auto& t : terms) {
            double v = t.c;
            if (t.sr != 0.0) v *= std::pow(r, t.sr);
            if (t.sl != 0.0) v *= std::pow(el, t.sl);
            sum += v;
        }
        return sum;
    }

    TermSum derivative() const {
        TermSum d{g0, R0, {}};
        const double lf = -g0 * std::pow(R0, -g0);  // ell' = lf * r^{g0-1}
        for (const auto& t : terms) {
            if (t.sr != 0.0) d.push_term(t.c * t.sr, t.sr - 1.0, t.sl);
            if (t.sl != 0.0) d.push_term(t.c * t.sl * lf, t.sr + g0 - 1.0, t.sl - 1.0);
        }
        return d;
    }

    /// Multiply by r^dsr * ell^dsl (used to factor out the leading
    /// endpoint behavior before quadrature).
    TermSum shifted(double dsr, double dsl) const {
        TermSum s{g0, R0, terms};
        for (auto& t : s.terms) {
            t.sr += dsr;
            t.sl += dsl;
        }
        return s;
    }

    TermSum scaled(double factor) const {
        TermSum s{g0, R0, terms};
        for (auto& t : s.terms) t.c *= factor;
        return s;
    }

    double min_sr() const {
        double m = 0.0;
        bool first = true;
        for (const auto& t : terms) {
            if (first || t.sr < m) m = t.sr;
            first = false;
        }
        return m;
    }

    double min_sl() const {
        double m = 0.0;
        bool first = true;
        for (const auto& t : terms) {
            if (first || t.sl < m) m = t.sl;
            first = false;
        }
        return m;
    }

    void push_term(double c, double sr, double sl) {
        if (c == 0.0) return;
        for (auto& t : terms) {
            if (t.sr == sr && t.sl == sl) {
                t.c += c;
                return;
            }
        }
        terms.push_back({c, sr, sl});
    }

    static TermSum add(const TermSum& a, const TermSum& b) {
        TermSum s = a;
        for (const auto& t : b.terms) s.push_term(t.c, t.sr, t.sl);
        return s;
    }
};

/// Quintic smoothstep ramp on [t0, t1]; rising: 0 -> 1, else 1 -> 0.
struct CutoffRamp {
    double t0, t1;
    bool rising;

    double deriv(double r, int j) const {
        const double w = t1 - t0;
        double tau = (r - t0) / w;
        double slope = 1.0 / w;
        if (!rising) {
            tau = 1.0 - tau;
            slope = -slope;
        }
        return Smoothstep::deriv(tau, j) * pow_int(slope, j);
    }
};

/// One piece of a radial profile on [lo, hi]: either an exact TermSum
/// (optionally times a cutoff ramp) or a generic smooth callable f(r, j).
struct Piece {
    double lo = 0.0, hi = 1.0;
    std::optional<TermSum> ts;  // with precomputed derivative stack
    std::vector<TermSum> ts_derivs;
    std::optional<CutoffRamp> cut;
    std::function<double(double, int)> fn;

    static Piece term_sum(double lo, double hi, TermSum t, int order,
                          std::optional<CutoffRamp> cut = std::nullopt) {
        Piece p;
        p.lo = lo;
        p.hi = hi;
        p.ts = std::move(t);
        p.cut = cut;
        p.ts_derivs.push_back(*p.ts);
        for (int j = 0; j < order; ++j) p.ts_derivs.push_back(p.ts_derivs.back().derivative());
        return p;
    }

    static Piece generic(double lo, double hi, std::function<double(double, int)> f) {
        Piece p;
        p.lo = lo;
        p.hi = hi;
        p.fn = std::move(f);
        return p;
    }

    bool is_pure_term_sum() const { return ts.has_value() && !cut.has_value(); }

    double deriv(double r, int j) const {
        if (ts) {
            if (!cut) return ts_derivs[j].eval(r);
            // Leibniz with the polynomial ramp
            double sum = 0.0;
            double binom = 1.0;
            for (int i = 0; i <= j; ++i) {
                sum += binom * cut->deriv(r, i) * ts_derivs[j - i].eval(r);
                binom = binom * (j - i) / (i + 1.0);
            }
            return sum;
        }
        return fn(r, j);
    }
};

namespace detail {
struct ProfileData {
    std::vector<Piece> pieces;  // sorted, disjoint
    int order = 0;
    double supp_lo = 0.0, supp_hi = 1.0;
    double domain_R = 1.0;  // inf() for the full-space chart
    double decl_gamma = 1.0;
    std::vector<double> sigma0;  // per derivative order
    std::vector<double> sigma1;
    bool abs_eval = false;
};
}  // namespace detail

/// Immutable radial function r -> u(r) with derivatives up to a stated
/// order, declared support and endpoint behavior. At the origin u ~ r^{sigma0};
/// at the outer edge u ~ (1-(r/R)^gamma)^{sigma1} on a ball of radius R, or
/// u ~ r^{sigma1} as r -> inf on the full-space chart.
class RadialProfile {
public:
    RadialProfile() : d_(std::make_shared<detail::ProfileData>()) {}
    explicit RadialProfile(detail::ProfileData data)
        : d_(std::make_shared<detail::ProfileData>(std::move(data))) {}

    double eval(double r) const { return deriv(r, 0); }

    double deriv(double r, int j) const {
        if (j > d_->order) throw std::invalid_argument("RadialProfile: derivative order too low");
        const Piece* p = find_piece(r);
        if (!p) return 0.0;
        double v = p->deriv(r, j);
        return (d_->abs_eval && j == 0) ? std::abs(v) : v;
    }

    int order() const { return d_->order; }
    double support_lo() const { return d_->supp_lo; }
    double support_hi() const { return d_->supp_hi; }
    double domain_radius() const { return d_->domain_R; }
    double decl_gamma() const { return d_->decl_gamma; }

    double sigma0(int j = 0) const {
        if (j < static_cast<int>(d_->sigma0.size())) return d_->sigma0[j];
        return d_->sigma0.empty() ? 0.0 : d_->sigma0[0] - j;
    }
    double sigma1(int j = 0) const {
        if (j < static_cast<int>(d_->sigma1.size())) return d_->sigma1[j];
        return d_->sigma1.empty() ? 0.0 : d_->sigma1[0] - j;
    }

    const std::vector<Piece>& pieces() const { return d_->pieces; }

    /// Piece edges interior to the support (quadrature split points).
    std::vector<double> breakpoints() const {
        std::vector<double> b;
        for (const auto& p : d_->pieces) {
            if (p.lo > d_->supp_lo) b.push_back(p.lo);
            if (p.hi < d_->supp_hi) b.push_back(p.hi);
        }
        std::sort(b.begin(), b.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
        return b;
    }

    const Piece* find_piece(double r) const {
        if (r < d_->supp_lo || r > d_->supp_hi) return nullptr;
        for (const auto& p : d_->pieces) {
            if (r >= p.lo && r <= p.hi) return &p;
        }
        return nullptr;
    }

private:
    std::shared_ptr<const detail::ProfileData> d_;
};

/// Power-law sigma declarations: j-th derivative exponent sigma - j.
inline std::vector<double> power_law_sigmas(double sigma, int order) {
    std::vector<double> v(order + 1);
    for (int j = 0; j <= order; ++j) v[j] = sigma - j;
    return v;
}

inline std::vector<double> flat_sigmas(int order) {
    return std::vector<double>(static_cast<std::size_t>(order) + 1, 0.0);
}

}  // namespace hardylab
