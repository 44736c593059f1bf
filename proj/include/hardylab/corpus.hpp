#pragma once

#include <vector>

#include "hardylab/constants.hpp"
#include "hardylab/numeric.hpp"
#include "hardylab/params.hpp"
#include "hardylab/profiles.hpp"

namespace hardylab {

/// Seeded, admissible parameter draw for one inequality form. The same seed
/// always produces the same tuple (splitmix64 stream, no std distributions).
inline InequalityParams sample_params(Form form, Rng& rng) {
    auto pick_p = [&rng](std::initializer_list<double> opts) {
        std::vector<double> v(opts);
        return v[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(v.size()) - 1))];
    };
    for (int attempt = 0; attempt < 64; ++attempt) {
        InequalityParams q;
        q.form = form;
        q.R = 1.0;
        switch (form) {
            case Form::ClassicalHardy: {
                q.N = rng.uniform_int(2, 8);
                q.p = pick_p({1.5, 2.0, 2.5, 3.0});
                q.alpha = q.N - rng.uniform(0.3, 3.0);
                break;
            }
            case Form::GeometricHardy: {
                q.N = rng.uniform_int(2, 7);
                q.p = pick_p({1.5, 2.0, 3.0});
                q.beta = 1.0 + rng.uniform(0.3, 2.5);
                break;
            }
            case Form::ImprovedHardy: {
                q.N = rng.uniform_int(2, 7);
                q.p = pick_p({1.0, 1.5, 2.0, 3.0});
                q.beta = 1.0 + rng.uniform(0.3, 2.0);
                q.gamma = rng.uniform(0.3, 2.5);
                const double slack = rng.uniform() < 0.3 ? 0.0 : rng.uniform(0.0, 2.0);
                q.alpha = q.N - (q.beta - 1.0) * q.gamma - slack;
                break;
            }
            case Form::ImprovedHardyA: {
                q.N = rng.uniform_int(2, 7);
                q.p = pick_p({1.0, 1.5, 2.0, 3.0});
                q.beta = rng.uniform(0.0, 3.0);
                q.gamma = rng.uniform(0.3, 2.5);
                q.alpha = q.N - rng.uniform(0.0, 2.5);
                break;
            }
            case Form::ImprovedHardyB: {
                q.N = rng.uniform_int(2, 7);
                q.p = pick_p({1.0, 1.5, 2.0, 3.0});
                q.beta = 1.0 + rng.uniform(0.3, 2.0);
                q.gamma = rng.uniform(0.3, 2.0);
                q.alpha = q.N - (q.p - 1.0) * q.gamma - rng.uniform(0.1, 2.0);
                break;
            }
            case Form::LogHardy: {
                q.N = rng.uniform_int(2, 7);
                q.p = pick_p({1.0, 1.5, 2.0, 3.0});
                q.beta = 1.0 + rng.uniform(0.3, 2.0);
                q.alpha = q.N - rng.uniform(0.0, 2.5);
                break;
            }
            case Form::Rellich: {
                q.N = rng.uniform_int(5, 9);
                q.p = pick_p({1.5, 2.0, 2.5});
                q.k = rng.uniform_int(2, 3);
                const double lo = 2.0 + 2.0 * (q.m() - 1) * q.p;
                q.alpha = rng.uniform(lo + 0.2, q.N - 0.2);
                break;
            }
            case Form::GeometricRellich: {
                q.N = rng.uniform_int(2, 7);
                q.p = 2.0;
                q.k = rng.uniform_int(1, 3);
                break;
            }
            case Form::ImprovedRellichP2: {
                q.N = rng.uniform_int(5, 9);
                q.p = 2.0;
                q.k = 2;
                q.gamma = rng.uniform(0.3, 2.0);
                q.alpha = rng.uniform(std::max(4.0 - q.N + 0.2, 0.5), q.N - q.gamma);
                break;
            }
            case Form::ImprovedRellichBP2: {
                q.N = rng.uniform_int(7, 10);
                q.p = 2.0;
                q.k = 2;
                q.gamma = rng.uniform(0.3, (q.N - 3.0) / 3.0 * 0.9);
                q.alpha = rng.uniform(3.0, std::min(q.N - q.gamma + 2.0, q.N - 3.0 * q.gamma));
                break;
            }
            case Form::ImprovedRellichKP2: {
                q.k = rng.uniform_int(3, 4);
                q.N = rng.uniform_int(4 * (q.k / 2) + 3, 4 * (q.k / 2) + 6);
                q.p = 2.0;
                q.gamma = rng.uniform(0.3, 1.5);
                q.alpha = rng.uniform(-2.0 + 4.0 * q.m() + 0.3, q.N - q.gamma - 0.1);
                break;
            }
            case Form::ImprovedRellichRad: {
                q.N = rng.uniform_int(6, 10);
                q.p = pick_p({1.5, 2.0, 2.5});
                q.k = rng.uniform_int(2, 3);
                q.gamma = rng.uniform(0.3, 1.5);
                const double hi = q.N - (q.p - 1.0) * q.gamma;
                q.alpha = hi - rng.uniform(0.0, 2.0);
                break;
            }
            case Form::ImprovedRellichRadB: {
                q.N = rng.uniform_int(4, 8);
                q.p = pick_p({1.5, 2.0});
                q.k = 2;
                q.beta = (q.k - 1) * q.p + 1.0 + rng.uniform(0.3, 1.5);
                q.gamma = rng.uniform(0.2, 0.8);
                const double hi = std::min(q.N - (q.beta - q.p - 1.0) * q.gamma - (q.N - 2) * q.p,
                                           q.N - (q.beta - 1.0) * q.gamma);
                q.alpha = hi - rng.uniform(0.1, 1.5);
                break;
            }
            case Form::CriticalRellich: {
                q.N = rng.uniform_int(5, 9);
                q.p = pick_p({1.5, 2.0, 3.0});
                q.k = rng.uniform_int(1, 3);
                q.alpha = q.N - rng.uniform(0.5, 3.0);
                break;
            }
            case Form::OneDimHardy: {
                q.p = pick_p({1.5, 2.0, 3.0});
                q.alpha = rng.uniform(-1.0, 3.0);
                if (std::abs(q.alpha + 1.0 - q.p) < 0.2) continue;  // keep sharp away from 0
                break;
            }
            case Form::OneDimImprovedHardy: {
                q.p = pick_p({1.0, 1.5, 2.0, 3.0});
                q.beta = 1.0 + rng.uniform(0.3, 2.0);
                q.gamma = rng.uniform(0.3, 1.5);
                q.alpha = (q.beta - 1.0) * q.gamma - 1.0 + rng.uniform(0.1, 2.0);
                break;
            }
            case Form::HardyRellichStep: {
                q.N = rng.uniform_int(3, 8);
                q.p = pick_p({1.5, 2.0, 3.0});
                q.alpha = q.N - rng.uniform(0.3, 3.0);
                if (std::abs(q.N * (q.p - 1.0) + q.alpha - q.p) < 0.2) continue;
                break;
            }
            case Form::ImprovedHardyRellichStep: {
                q.N = rng.uniform_int(2, 5);
                q.p = pick_p({1.0, 1.5, 2.0});
                q.beta = 1.0 + rng.uniform(0.3, 1.5);
                q.gamma = rng.uniform(0.3, 1.5);
                q.alpha = q.N - (q.beta - 1.0) * q.gamma - (q.N - 1) * q.p - rng.uniform(0.1, 1.5);
                break;
            }
        }
        if (!q.admissible()) continue;
        // Rellich product factors must stay positive where a p-th power of
        // the constant is taken
        if (form == Form::Rellich || form == Form::ImprovedRellichRad ||
            form == Form::CriticalRellich || form == Form::ImprovedRellichKP2) {
            if (rellich_product_constant(q.k, q.p, q.alpha, q.N) <= 0.0) continue;
            bool ok = true;
            for (int j = 0; j < q.m(); ++j) {
                if (q.N - q.alpha + 2.0 * j * q.p <= 0.0 ||
                    q.N * (q.p - 1.0) + q.alpha - 2.0 * (j + 1) * q.p <= 0.0)
                    ok = false;
            }
            if (!ok) continue;
        }
        return q;
    }
    throw std::runtime_error("sample_params: no admissible draw for " + form_name(form));
}

/// Random polynomial bump with enough smoothness for grad^k up to k = 4.
inline RadialProfile sample_bump(Rng& rng, double R = 1.0) {
    const double lo = rng.uniform(0.08, 0.45) * R;
    const double width = rng.uniform(0.15, 0.45) * R;
    const double hi = std::min(lo + width, 0.92 * R);
    const int J = rng.uniform_int(5, 7);
    const double amp = rng.uniform(0.5, 2.0);
    return poly_bump(lo, hi, J, amp, R);
}

/// Profile mix for the identity suite: interior bumps, boundary-touching
/// ell-powers cut at the origin, boundary test functions.
inline RadialProfile sample_identity_profile(Rng& rng, const InequalityParams& q) {
    const double pick = rng.uniform();
    if (pick < 0.4) return sample_bump(rng, q.R);
    if (pick < 0.7) {
        const double kappa = (q.beta - 1.0) / q.p + rng.uniform(1.0, 2.0);
        TermSum body = TermSum::single(1.0, 0.0, kappa, q.gamma, q.R);
        return origin_cut_profile(body, rng.uniform(0.15, 0.35) * q.R, q.R, q.gamma, kappa, 6);
    }
    const double A = (q.beta - 1.0) / q.p + rng.uniform(0.3, 1.0);
    return boundary_test_function(A, rng.uniform(0.06, 0.2), q.gamma, q.R);
}

}  // namespace hardylab
