#pragma once

#include <algorithm>
#include <cmath>

#include "mittag/gamma.hpp"
#include "mittag/params.hpp"

namespace mittag {

/// The constants of the series estimate, in two variants: `*_paper` is the
/// printed constant C0 = Gamma(gamma + mu_1 n0) / Gamma(gamma); `*_safe` is
/// the constant the max/min argument actually supports,
/// C0 = max_{0<=k<=n0} Gamma(gamma + mu_1 k) / Gamma(x0), which dominates
/// every ratio Gamma(gamma + mu_1 k) / Gamma(gamma + sum mu_i l_i) because
/// Gamma(x0) minorizes Gamma on the whole half-line. All certified tail
/// bounds use the safe variant; the printed one is reported for comparison.
struct EstimateConstants {
    double x0 = 0.0;
    double gamma_x0 = 0.0;
    int n0 = 0;
    double c0_paper = 0.0;
    double c_paper = 0.0;
    double c0_safe = 0.0;
    double c_safe = 0.0;
};

/// Threshold index: largest n0 with mu_1 * n0 <= x0 - gamma, and 0 when
/// gamma >= x0 (the argument then already sits on Gamma's increasing
/// branch). Boundary ties within 1e-12 of an exact multiple resolve to the
/// multiple itself.
inline int compute_n0(const MultiMLParams& p) {
    validate(p);
    require_ascending(p);
    const double x0 = gamma_minimum().x0;
    if (p.gamma >= x0) return 0;
    const double ratio = (x0 - p.gamma) / p.mus.front();
    return static_cast<int>(std::floor(ratio + 1e-12));
}

inline EstimateConstants compute_constants(const MultiMLParams& p) {
    validate(p);
    require_ascending(p);
    const GammaMinimum& gm = gamma_minimum();
    EstimateConstants c;
    c.x0 = gm.x0;
    c.gamma_x0 = gm.gamma_x0;
    c.n0 = compute_n0(p);
    const double mu1 = p.mus.front();
    const double lg_gamma = log_gamma(p.gamma);
    c.c0_paper = std::exp(log_gamma(p.gamma + mu1 * static_cast<double>(c.n0)) - lg_gamma);
    double max_gamma = 0.0;
    for (int k = 0; k <= c.n0; ++k) {
        max_gamma = std::max(max_gamma, std::exp(log_gamma(p.gamma + mu1 * static_cast<double>(k))));
    }
    c.c0_safe = max_gamma / gm.gamma_x0;
    c.c_paper = 1.0 + c.c0_paper;
    c.c_safe = 1.0 + c.c0_safe;
    return c;
}

} // namespace mittag
