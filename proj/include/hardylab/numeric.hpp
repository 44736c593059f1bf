#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace hardylab {

inline constexpr double pi = 3.141592653589793238462643383279502884;

constexpr double inf() { return std::numeric_limits<double>::infinity(); }
constexpr double quiet_nan() { return std::numeric_limits<double>::quiet_NaN(); }

/// Area of the unit sphere S^{N-1} in R^N: 2 pi^{N/2} / Gamma(N/2).
inline double unit_sphere_area(int dim) {
    return 2.0 * std::pow(pi, 0.5 * dim) / std::tgamma(0.5 * dim);
}

/// 1 - (r/R)^gamma without cancellation near r = R.
inline double one_minus_pow(double r, double gamma, double R) {
    if (r <= 0.0) return 1.0;
    if (r >= R) return 0.0;
    return -std::expm1(gamma * std::log(r / R));
}

inline double sq(double x) { return x * x; }

/// x^n for integer n by repeated squaring (exact sign handling).
inline double pow_int(double x, int n) {
    if (n < 0) return 1.0 / pow_int(x, -n);
    double acc = 1.0, base = x;
    while (n > 0) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

inline double rel_dev(double a, double b) {
    double scale = std::max(std::abs(a), std::abs(b));
    if (scale == 0.0) return 0.0;
    return std::abs(a - b) / scale;
}

// Quintic smoothstep bridge 6t^5 - 15t^4 + 10t^3 on [0,1]; max slope 1.875.
struct Smoothstep {
    static double eval(double t) {
        if (t <= 0.0) return 0.0;
        if (t >= 1.0) return 1.0;
        return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
    }
    // j-th derivative (zero outside (0,1) and for j > 5)
    static double deriv(double t, int j) {
        if (j == 0) return eval(t);
        if (t <= 0.0 || t >= 1.0 || j > 5) return 0.0;
        switch (j) {
            case 1: return 30.0 * t * t * (1.0 - t) * (1.0 - t);
            case 2: return 60.0 * t * (1.0 - t) * (1.0 - 2.0 * t);
            case 3: return 60.0 * (1.0 - 6.0 * t + 6.0 * t * t);
            case 4: return 360.0 * (2.0 * t - 1.0);
            default: return 720.0;
        }
    }
};

/// Deterministic uniform doubles from a 64-bit state (splitmix64).
/// std::uniform_real_distribution is implementation-defined, so reports
/// seeded through this stay byte-identical everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::uint64_t state_;
};

/// Raised when parameters violate an inequality's hypothesis list.
class AdmissibilityError : public std::runtime_error {
public:
    explicit AdmissibilityError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hardylab
