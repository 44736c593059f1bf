#pragma once

#include <cmath>

#include "hardylab/numeric.hpp"
#include "hardylab/params.hpp"

namespace hardylab {

/// Sharp constant ((N-alpha)/p)^p of the interior-singularity Hardy inequality.
inline double hardy_constant(int N, double p, double alpha) {
    if (p <= 1.0) throw AdmissibilityError("hardy_constant: p > 1 required");
    if (alpha >= N) throw AdmissibilityError("hardy_constant: alpha < N required");
    return std::pow((N - alpha) / p, p);
}

/// Sharp constant ((beta-1)/p)^p of the boundary-distance Hardy inequality.
inline double geometric_hardy_constant(double p, double beta) {
    if (p <= 1.0) throw AdmissibilityError("geometric_hardy_constant: p > 1 required");
    if (beta <= 1.0) throw AdmissibilityError("geometric_hardy_constant: beta > 1 required");
    return std::pow((beta - 1.0) / p, p);
}

/// Sharp constant ((beta-1)*gamma/p)^p of the combined (interior + boundary
/// profile) Hardy inequality.
inline double improved_hardy_constant(double p, double beta, double gamma) {
    if (p < 1.0) throw AdmissibilityError("improved_hardy_constant: p >= 1 required");
    if (beta <= 1.0) throw AdmissibilityError("improved_hardy_constant: beta > 1 required");
    if (gamma <= 0.0) throw AdmissibilityError("improved_hardy_constant: gamma > 0 required");
    return std::pow((beta - 1.0) * gamma / p, p);
}

/// The Rellich product constant A_{k,p,alpha}. Sign preserved as written
/// (no absolute value). k = 1 is admitted as the Hardy prefix (N-alpha)/p
/// so that the composition identities A_{2}A_{k-2} = A_{k} close for odd k.
inline double rellich_product_constant(int k, double p, double alpha, int N) {
    if (k < 1) throw AdmissibilityError("rellich_product_constant: k >= 1 required");
    if (p <= 1.0) throw AdmissibilityError("rellich_product_constant: p > 1 required");
    const int m = k / 2;
    double prod = 1.0;
    for (int j = 0; j < m; ++j)
        prod *= (N - alpha + 2.0 * j * p) * (N * (p - 1.0) + alpha - 2.0 * (j + 1) * p) / (p * p);
    if (k % 2 == 1) prod *= (N - alpha + 2.0 * m * p) / p;
    return prod;
}

/// Sharp constant of the Rellich-type form selected by params.form.
inline double improved_rellich_constant(const InequalityParams& q) {
    q.validate();
    const double a = q.alpha, b = q.beta, g = q.gamma, p = q.p;
    const int N = q.N, k = q.k;
    switch (q.form) {
        case Form::Rellich:
            return std::pow(rellich_product_constant(k, p, a, N), p);
        case Form::GeometricRellich: {
            double prod = 1.0;
            for (int j = 1; j <= k; ++j) prod *= (j * p - 1.0) / p;
            return std::pow(prod, p);
        }
        case Form::ImprovedRellichP2:
            return sq((N + a - 4.0) / 4.0 * g);
        case Form::ImprovedRellichBP2:
            return sq(0.75 * g * g);
        case Form::ImprovedRellichKP2:
            return sq(g / (N - a) * rellich_product_constant(k, 2.0, a, N));
        case Form::ImprovedRellichRad:
            return std::pow((p - 1.0) / (N - a) * g * rellich_product_constant(k, p, a, N), p);
        case Form::ImprovedRellichRadB: {
            double prod = 1.0;
            for (int j = 0; j < k; ++j) prod *= (b - j * p - 1.0) / p * g;
            return std::pow(prod, p);
        }
        case Form::CriticalRellich:
            return std::pow((p - 1.0) / (N - a) * rellich_product_constant(k, p, a, N), p);
        case Form::HardyRellichStep:
            return std::pow(std::abs((N * (p - 1.0) + a - p) / p), p);
        case Form::ImprovedHardyRellichStep:
            return std::pow((b - 1.0) * g / p, p);
        default:
            throw AdmissibilityError("improved_rellich_constant: not a Rellich-type form");
    }
}

/// Sharp constant of the Hardy-type form selected by params.form.
inline double sharp_hardy_constant(const InequalityParams& q) {
    q.validate();
    const double a = q.alpha, b = q.beta, g = q.gamma, p = q.p;
    const int N = q.N;
    switch (q.form) {
        case Form::ClassicalHardy:
            return std::pow((N - a) / p, p);
        case Form::GeometricHardy:
            return std::pow((b - 1.0) / p, p);
        case Form::ImprovedHardy:
        case Form::ImprovedHardyB:
            return std::pow((b - 1.0) * g / p, p);
        case Form::ImprovedHardyA:
            return std::pow((N - a) / p, p);
        case Form::LogHardy:
            return std::pow((b - 1.0) / p, p);
        case Form::OneDimHardy:
            return std::pow(std::abs((a + 1.0 - p) / p), p);
        case Form::OneDimImprovedHardy:
            return std::pow((b - 1.0) * g / p, p);
        default:
            return improved_rellich_constant(q);
    }
}

/// Sharp constant for any form tag.
inline double sharp_constant(const InequalityParams& q) { return sharp_hardy_constant(q); }

/// Closed form of the attained infimum T_rad of the weighted radial
/// Hardy-Sobolev quotient on the ball. Evaluated through log-Gamma so the
/// large Gamma ratios never overflow.
inline double t_rad_constant(int N, double p, double q, double alpha) {
    if (N < 2) throw AdmissibilityError("t_rad_constant: N >= 2 required");
    if (!(1.0 < p && p < q)) throw AdmissibilityError("t_rad_constant: 1 < p < q required");
    if (!(alpha < N)) throw AdmissibilityError("t_rad_constant: alpha < N required");
    const double e = (q - p) / q;  // the recurring exponent
    double log_val = 0.5 * N * e * std::log(pi) + std::log(static_cast<double>(N)) +
                     (p - 1.0) * std::log(N * p / (q * (p - 1.0))) +
                     (p - 1.0 + p / q) * std::log(q * (N - alpha) / (N * p)) +
                     e * (std::log(2.0 * q * (p - 1.0) / (N * (q - p))) +
                          std::lgamma(q / (q - p)) + std::lgamma(q * (p - 1.0) / (q - p)) -
                          std::lgamma(0.5 * N) - std::lgamma(q * p / (q - p)));
    return std::exp(log_val);
}

/// Closed form of the attained infimum S_rad of the weighted radial Sobolev
/// quotient on the full space (log-Gamma evaluation).
inline double s_rad_constant(const SRadParams& s) {
    s.validate();
    const int N = s.N;
    const double p = s.p, A = s.A, B = s.B;
    const double t = s.one_minus_A_plus_B();
    const double e = p * t / N;
    double log_val = 0.5 * p * t * std::log(pi) + std::log(static_cast<double>(N)) +
                     (p - 1.0) * std::log((N - t * p) / (p - 1.0)) +
                     (p - e) * std::log((N - p + p * A) / (N - t * p)) +
                     e * (std::log(2.0 * (p - 1.0) / (t * p)) +
                          std::lgamma(N / (p * t)) + std::lgamma(N * (p - 1.0) / (p * t)) -
                          std::lgamma(0.5 * N) - std::lgamma(N / t));
    return std::exp(log_val);
}

/// S_rad parameters equivalent to the ball-chart data (N, p, q, alpha):
/// A = (p-alpha)/p and B = -(N - (q/p)(N-alpha))/q.
inline SRadParams srad_params_from_ball(int N, double p, double q, double alpha) {
    return SRadParams::make(N, p, (p - alpha) / p, -(N - (q / p) * (N - alpha)) / q);
}

}  // namespace hardylab
