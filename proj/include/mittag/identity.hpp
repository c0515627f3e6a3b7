#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "mittag/composition.hpp"
#include "mittag/detail/accumulate.hpp"
#include "mittag/rng.hpp"

namespace mittag {

/// Deviation of the composition expansion from the closed form at one point:
/// max over k <= k_max of |sum_{|l|=k} (k;l) prod z_i^{l_i} - (sum z_i)^k|,
/// measured against the magnitude scale (sum |z_i|)^k (floored at 1) so that
/// near-cancelling z vectors are judged by the precision actually available.
inline double multinomial_identity_deviation(std::span<const double> z, int k_max) {
    if (z.empty() || k_max < 0) {
        throw domain_error("multinomial_identity_deviation: need n >= 1, k_max >= 0");
    }
    const int n = static_cast<int>(z.size());
    double sum_z = 0.0, sum_abs = 0.0;
    for (double zi : z) {
        sum_z += zi;
        sum_abs += std::fabs(zi);
    }
    double worst = 0.0;
    for (int k = 0; k <= k_max; ++k) {
        detail::CompensatedSum<double> lhs;
        for (CompositionStream s(k, n); s.valid(); s.advance()) {
            // exact coefficient; fits a double exactly for the k in scope
            const double coef = static_cast<double>(multinomial_exact(s.current()));
            double term = coef;
            for (int i = 0; i < n; ++i) {
                term *= std::pow(z[static_cast<std::size_t>(i)],
                                 s.parts()[static_cast<std::size_t>(i)]);
            }
            lhs.add(term);
        }
        const double rhs = std::pow(sum_z, k);
        const double scale = std::max(1.0, std::pow(sum_abs, k));
        worst = std::max(worst, std::fabs(lhs.value() - rhs) / scale);
    }
    return worst;
}

/// Randomized sweep of the identity over `trials` draws of z in [-3, 3]^n.
/// Returns the largest scale-relative deviation observed.
inline double multinomial_identity_sweep(int n, int k_max, std::uint64_t trials,
                                         std::uint64_t seed) {
    if (n < 1 || n > 6 || k_max < 0 || k_max > 15 || trials < 1) {
        throw domain_error("multinomial_identity_sweep: need 1 <= n <= 6, k_max <= 15, trials >= 1");
    }
    double worst = 0.0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        TrialRng rng(seed, t);
        std::vector<double> z;
        for (int i = 0; i < n; ++i) z.push_back(rng.uniform(-3.0, 3.0));
        worst = std::max(worst, multinomial_identity_deviation(z, k_max));
    }
    return worst;
}

} // namespace mittag
