#pragma once

#include <cmath>
#include <vector>

#include "hardylab/numeric.hpp"
#include "hardylab/profile.hpp"
#include "hardylab/profiles.hpp"

namespace hardylab {

/// Coefficients C_{k,1..k} of grad^k (1-(r/R)^gamma)^A =
/// sum_j C_{k,j} r^{j gamma - k} (1-r^gamma)^{A-j} (unit ball form).
struct DerivCoefficients {
    int k = 1;
    double gamma = 1.0;
    double A = 1.0;
    int N = 3;
    std::vector<double> coeffs;  // coeffs[j-1] = C_{k,j}

    double leading() const { return coeffs.back(); }  // C_{k,k}
};

namespace detail {
// One recursion step C_{k-1,*} -> C_{k,*}. The even step is the
// gamma-corrected divergence step; the odd step is the plain radial
// derivative, matching the k=1,2 base rows and the nested-differentiation
// oracle. `printed_even_branch` reproduces the uncorrected variant (kept
// only so the verify suite can document that it fails the oracle).
inline std::vector<double> ckj_step(const std::vector<double>& prev, int k, double A,
                                    double gamma, int N, bool printed_even_branch) {
    const bool even = (k % 2 == 0);
    std::vector<double> cur(k, 0.0);
    auto at = [&prev](int j) -> double {  // C_{k-1,j}, 1-based
        return (j >= 1 && j <= static_cast<int>(prev.size())) ? prev[j - 1] : 0.0;
    };
    for (int j = 1; j <= k; ++j) {
        double keep, carry;
        if (even) {
            keep = N + j * gamma - k;
            carry = printed_even_branch ? (A - j + 1.0) : (A - j + 1.0) * gamma;
        } else {
            keep = j * gamma - k + 1.0;
            carry = (A - j + 1.0) * gamma;
        }
        cur[j - 1] = at(j) * keep - at(j - 1) * carry;
    }
    return cur;
}
}  // namespace detail

/// C_{k,j} by the two-branch recursion, base C_{1,1} = -gamma A.
inline DerivCoefficients grad_k_coefficients(int k, double A, double gamma, int N,
                                             bool printed_even_branch = false) {
    if (k < 1) throw AdmissibilityError("grad_k_coefficients: k >= 1 required");
    std::vector<double> row{-gamma * A};
    for (int kk = 2; kk <= k; ++kk)
        row = detail::ckj_step(row, kk, A, gamma, N, printed_even_branch);
    return DerivCoefficients{k, gamma, A, N, std::move(row)};
}

/// |grad^k r^B| = coefficient * r^{B-k}; returns the (absolute) coefficient
/// prod (B-2j)(N+B-2j-2), with the extra (B-2m) factor when k is odd.
inline double grad_k_radial_power(int k, double B, int N) {
    if (k < 1) throw AdmissibilityError("grad_k_radial_power: k >= 1 required");
    const int m = k / 2;
    double prod = 1.0;
    for (int j = 0; j < m; ++j) prod *= (B - 2.0 * j) * (N + B - 2.0 * j - 2.0);
    if (k % 2 == 1) prod *= (B - 2.0 * m);
    return std::abs(prod);
}

/// Constant coefficients a_j of grad^k u = sum_j a_j r^{j-k} u^{(j)}
/// (radial form of the iterated Laplacian, final d/dr when k is odd).
inline std::vector<double> radial_grad_coeffs(int k, int N) {
    std::vector<double> a{1.0};  // k = 0
    int cur_k = 0;
    auto lap_step = [&]() {
        std::vector<double> nxt(a.size() + 2, 0.0);
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (a[j] == 0.0) continue;
            const double s = static_cast<double>(j) - cur_k;
            nxt[j] += a[j] * s * (s + N - 2.0);
            nxt[j + 1] += a[j] * (2.0 * s + N - 1.0);
            nxt[j + 2] += a[j];
        }
        a = std::move(nxt);
        cur_k += 2;
    };
    auto deriv_step = [&]() {
        std::vector<double> nxt(a.size() + 1, 0.0);
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (a[j] == 0.0) continue;
            const double s = static_cast<double>(j) - cur_k;
            nxt[j] += a[j] * s;
            nxt[j + 1] += a[j];
        }
        a = std::move(nxt);
        cur_k += 1;
    };
    for (int i = 0; i < k / 2; ++i) lap_step();
    if (k % 2 == 1) deriv_step();
    a.resize(k + 1, 0.0);
    return a;
}

/// |grad^k u| as a radial profile, built by iterating the radial Laplacian
/// u'' + (N-1)u'/r (and one final radial derivative for odd k).
/// The input must have order >= k.
inline RadialProfile apply_grad_k(const RadialProfile& u, int k, int N) {
    if (u.order() < k) {
        throw std::invalid_argument("apply_grad_k: profile order too low for requested k");
    }
    const std::vector<double> a = radial_grad_coeffs(k, N);

    hardylab::detail::ProfileData d;
    for (const auto& piece : u.pieces()) {
        if (piece.is_pure_term_sum()) {
            // exact: sum_j a_j r^{j-k} * (d/dr)^j ts
            TermSum acc{piece.ts->g0, piece.ts->R0, {}};
            TermSum der = *piece.ts;
            for (int j = 0; j <= k; ++j) {
                if (a[j] != 0.0) {
                    TermSum part = der.shifted(static_cast<double>(j) - k, 0.0).scaled(a[j]);
                    acc = TermSum::add(acc, part);
                }
                if (j < k) der = der.derivative();
            }
            d.pieces.push_back(Piece::term_sum(piece.lo, piece.hi, std::move(acc), 0));
        } else {
            auto fn = [piece, a, k](double r, int /*j*/) -> double {
                double sum = 0.0;
                for (int j = 0; j <= k; ++j)
                    if (a[j] != 0.0) sum += a[j] * std::pow(r, static_cast<double>(j) - k) *
                                            piece.deriv(r, j);
                return sum;
            };
            d.pieces.push_back(Piece::generic(piece.lo, piece.hi, fn));
        }
    }
    d.order = 0;
    d.supp_lo = u.support_lo();
    d.supp_hi = u.support_hi();
    d.domain_R = u.domain_radius();
    d.decl_gamma = u.decl_gamma();
    d.sigma0 = {u.sigma0(0) - k};
    d.sigma1 = {u.sigma1(0) - k};
    d.abs_eval = true;
    return RadialProfile(std::move(d));
}

/// |grad^k (1-(r/R)^gamma)^A| assembled from the C_{k,j} expansion
/// (the independent route against apply_grad_k).
inline RadialProfile grad_k_boundary_power_expansion(int k, double A, double gamma, int N,
                                                     double R = 1.0) {
    DerivCoefficients C = grad_k_coefficients(k, A, gamma, N);
    TermSum ts{gamma, R, {}};
    for (int j = 1; j <= k; ++j) {
        // C_{k,j} (r/R)^{j gamma - k} ell^{A-j}, overall scale R^{-k}
        ts.push_term(C.coeffs[j - 1] * std::pow(R, -(j * gamma - k)) * std::pow(R, -k),
                     j * gamma - k, A - j);
    }
    detail::ProfileData d;
    d.pieces.push_back(Piece::term_sum(0.0, R, std::move(ts), 0));
    d.order = 0;
    d.supp_lo = 0.0;
    d.supp_hi = R;
    d.domain_R = R;
    d.decl_gamma = gamma;
    d.sigma0 = {gamma - k};
    d.sigma1 = {A - k};
    d.abs_eval = true;
    return RadialProfile(std::move(d));
}

}  // namespace hardylab
