#pragma once

#include <cmath>
#include <limits>

#include "mittag/errors.hpp"

namespace mittag {

namespace detail {

// Lanczos approximation, g = 7, 9 coefficients (Godfrey's set). Relative
// error on Gamma is a few 1e-15 over the positive axis, which keeps the
// log-gamma contract (<= 1e-13 relative) with an order of magnitude to spare
// once the regions near the zeros of log-gamma are handled separately.
inline constexpr double kLanczosCoef[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

inline constexpr double kLnSqrt2Pi = 0.91893853320467274178032973640562;
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240;

// zeta(2) .. zeta(16)
inline constexpr double kZeta[15] = {
    1.6449340668482264365, 1.2020569031595942854, 1.0823232337111381916,
    1.0369277551433699263, 1.0173430619844491397, 1.0083492773819228268,
    1.0040773561979443394, 1.0020083928260822144, 1.0009945751278180853,
    1.0004941886041194646, 1.0002460865533080483, 1.0001227133475784891,
    1.0000612481350587048, 1.0000305882363070205, 1.0000152822594086519,
};

// ln Gamma(1 + d) = -euler*d + sum_{k>=2} (-1)^k zeta(k) d^k / k, |d| <= 0.09.
// Truncation after zeta(16) is below 1e-19 on that window.
inline double log_gamma_taylor_near_one(double d) {
    double sum = 0.0;
    double dk = d * d;
    double sign = 1.0;
    for (int k = 2; k <= 16; ++k) {
        sum += sign * kZeta[k - 2] * dk / static_cast<double>(k);
        dk *= d;
        sign = -sign;
    }
    return -kEulerGamma * d + sum;
}

// Valid for x >= 0.5; callers shift smaller arguments.
inline double log_gamma_lanczos(double x) {
    double a = kLanczosCoef[0];
    for (int i = 1; i < 9; ++i) {
        a += kLanczosCoef[i] / (x - 1.0 + static_cast<double>(i));
    }
    const double t = x + 6.5;
    return kLnSqrt2Pi + (x - 0.5) * std::log(t) - t + std::log(a);
}

// Extended-precision kernel for series term computation (80-bit on x86-64).
// The public double-precision entry points below are the fixed-coefficient
// implementation; this one exists so that alternating series can be summed
// with headroom below the double rounding floor.
inline long double log_gamma_ext(long double x) {
    int sign = 0;
    return ::lgammal_r(x, &sign);
}

} // namespace detail

/// Natural log of the Gamma function on the positive half-line.
/// Relative error <= 1e-13 for x in [1e-6, 170].
inline double log_gamma(double x) {
    if (!(x > 0.0) || std::isinf(x)) {
        throw domain_error("log_gamma: argument must be positive and finite");
    }
    if (x < 0.5) {
        // One recurrence step; no cancellation since -log(x) > 0.69 while
        // |log_gamma(x + 1)| <= 0.13 on (1, 1.5).
        return log_gamma(x + 1.0) - std::log(x);
    }
    if (std::fabs(x - 1.0) <= 0.09) {
        return detail::log_gamma_taylor_near_one(x - 1.0);
    }
    if (std::fabs(x - 2.0) <= 0.09) {
        return std::log1p(x - 2.0) + detail::log_gamma_taylor_near_one(x - 2.0);
    }
    return detail::log_gamma_lanczos(x);
}

/// Overflow guard: Gamma(x) fits in a double for x <= 170.
inline constexpr double kGammaMaxArgument = 170.0;

/// Gamma(x) = exp(log_gamma(x)) for 0 < x <= 170.
inline double gamma(double x) {
    if (!(x > 0.0) || std::isinf(x)) {
        throw domain_error("gamma: argument must be positive and finite");
    }
    if (x > kGammaMaxArgument) {
        throw overflow_error("gamma: argument exceeds overflow guard (170)");
    }
    return std::exp(log_gamma(x));
}

/// Location and value of the unique minimum of Gamma on (0, inf).
struct GammaMinimum {
    double x0;       ///< abscissa of the minimum, in (1, 2)
    double gamma_x0; ///< Gamma(x0)
};

/// Locates Gamma's minimum by golden-section search of log_gamma on [1, 2].
/// The bracket is shrunk until its width is below `tolerance`; the returned
/// abscissa is the bracket midpoint. Effective resolution saturates around
/// 1e-8 (the value-comparison floor of a double minimizer); gamma_x0 is
/// accurate to full precision well before that.
inline GammaMinimum find_gamma_minimum(double tolerance) {
    if (!(tolerance > 0.0) || tolerance > 0.1) {
        throw domain_error("find_gamma_minimum: tolerance must be in (0, 0.1]");
    }
    constexpr double inv_phi = 0.6180339887498948482;
    constexpr int kEvalBudget = 10000;
    double a = 1.0, b = 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = log_gamma(c);
    double fd = log_gamma(d);
    int evals = 2;
    while (b - a > tolerance) {
        if (evals >= kEvalBudget) {
            throw no_convergence_error("find_gamma_minimum: evaluation budget exhausted");
        }
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = log_gamma(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = log_gamma(d);
        }
        ++evals;
    }
    const double x0 = 0.5 * (a + b);
    return GammaMinimum{x0, gamma(x0)};
}

/// Process-wide cached minimum, resolved once at the saturation tolerance.
inline const GammaMinimum& gamma_minimum() {
    static const GammaMinimum m = find_gamma_minimum(1e-8);
    return m;
}

} // namespace mittag
