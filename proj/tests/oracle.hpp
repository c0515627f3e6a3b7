// Test-only reference oracles, independent of the library's evaluation path:
//   - exact rational arithmetic (boost cpp_rational) for multinomial
//     coefficients, powers of double-valued z, and factorial tails;
//   - 50-digit floating gamma (boost multiprecision + boost::math) standing
//     in for interval-bounded Gamma: its error (~1e-45) is dozens of orders
//     below every tolerance asserted against it;
//   - a Stirling-series/product log-gamma that shares no code or
//     coefficients with the library's Lanczos kernel.
#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "mittag/composition.hpp"
#include "mittag/params.hpp"

namespace oracle {

using hp = boost::multiprecision::cpp_bin_float_50;
using rat = boost::multiprecision::cpp_rational;
using mittag::bigint;

inline hp hp_gamma(const hp& x) { return boost::math::tgamma(x); }

/// Partial sum of the two-parameter series through index k_last, plus the
/// sum of term magnitudes (the conditioning scale).
struct ClassicPartial {
    hp value;
    hp abs_scale;
};

inline ClassicPartial classic_partial(double mu, double nu, double x, int k_last) {
    ClassicPartial out{0, 0};
    const hp hx(x);
    hp power(1);
    for (int k = 0; k <= k_last; ++k) {
        const hp term = power / hp_gamma(hp(mu) * k + hp(nu));
        out.value += term;
        out.abs_scale += boost::multiprecision::abs(term);
        power *= hx;
    }
    return out;
}

/// Exact rational tail of sum_{k >= from_k}^{k_last} |x|^k / k!  (mu = nu = 1).
inline rat factorial_tail(const rat& abs_x, int from_k, int k_last) {
    rat sum = 0;
    rat fact = 1;
    rat power = 1;
    for (int k = 1; k <= k_last; ++k) {
        fact *= k;
        power *= abs_x;
        if (k >= from_k) sum += power / fact;
    }
    if (from_k == 0) sum += 1;
    return sum;
}

/// One outer term of the multinomial series at degree k: exact rational
/// numerator (coefficient times z powers), 50-digit gamma denominators.
struct BlockValue {
    hp value;
    hp abs_scale; ///< same sum with |z_i|
};

inline BlockValue multinomial_block(std::span<const double> mus, double gamma_param,
                                    std::span<const double> z, int k) {
    const int n = static_cast<int>(mus.size());
    BlockValue out{0, 0};
    for (mittag::CompositionStream s(k, n, UINT64_MAX); s.valid(); s.advance()) {
        const bigint coef = mittag::multinomial_exact(s.current());
        rat numer(coef);
        hp arg(gamma_param);
        for (int i = 0; i < n; ++i) {
            const int li = s.parts()[static_cast<std::size_t>(i)];
            for (int rep = 0; rep < li; ++rep) numer *= rat(z[static_cast<std::size_t>(i)]);
            arg += hp(mus[static_cast<std::size_t>(i)]) * li;
        }
        const hp term = hp(numer) / hp_gamma(arg);
        out.value += term;
        out.abs_scale += boost::multiprecision::abs(term);
    }
    return out;
}

/// Partial sum over outer degrees 0..k_last.
inline BlockValue multinomial_partial(std::span<const double> mus, double gamma_param,
                                      std::span<const double> z, int k_last) {
    BlockValue out{0, 0};
    for (int k = 0; k <= k_last; ++k) {
        const BlockValue b = multinomial_block(mus, gamma_param, z, k);
        out.value += b.value;
        out.abs_scale += b.abs_scale;
    }
    return out;
}

/// Independent log-gamma: shift the argument up by 50 recurrence steps and
/// apply the Stirling series there. No shared constants with the library.
inline long double stirling_log_gamma(long double x) {
    static const long double bern[8] = {
        1.0L / 12, -1.0L / 360, 1.0L / 1260, -1.0L / 1680,
        1.0L / 1188, -691.0L / 360360, 1.0L / 156, -3617.0L / 122400,
    };
    constexpr int kShift = 50;
    long double shifted = x;
    long double log_product = 0.0L;
    for (int i = 0; i < kShift; ++i) {
        log_product += std::log(shifted);
        shifted += 1.0L;
    }
    const long double half_log_2pi = 0.91893853320467274178032973640561764L;
    long double series = 0.0L;
    long double inv = 1.0L / shifted;
    long double inv2 = inv * inv;
    long double p = inv;
    for (int j = 0; j < 8; ++j) {
        series += bern[j] * p;
        p *= inv2;
    }
    return (shifted - 0.5L) * std::log(shifted) - shifted + half_log_2pi + series - log_product;
}

inline double stirling_gamma(double x) {
    return static_cast<double>(std::exp(stirling_log_gamma(static_cast<long double>(x))));
}

} // namespace oracle
