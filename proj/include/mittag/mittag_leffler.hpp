#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "mittag/detail/accumulate.hpp"
#include "mittag/gamma.hpp"
#include "mittag/params.hpp"

namespace mittag {

namespace detail {

/// Hard ceiling on ln|term|; beyond this a term no longer fits in a double.
inline constexpr double kLogTermOverflow = 700.0;

/// Geometric tail certificate for sum_{k >= from_k} |x|^k / Gamma(mu k + nu),
/// inclusive of the from_k term: term(from_k) / (1 - q) with
/// q = |x| Gamma(a) / Gamma(a + mu), a = mu from_k + nu. Valid because the
/// term ratio is strictly decreasing in k (digamma is increasing), so q
/// dominates every later ratio. Returns nullopt while the preconditions
/// (a > x0 + mu, q < 1) do not hold yet.
inline std::optional<double> classic_tail_bound_opt(double mu, double nu, double abs_x,
                                                    int from_k) {
    if (abs_x == 0.0) return 0.0;
    const double a = mu * static_cast<double>(from_k) + nu;
    if (!(a > gamma_minimum().x0 + mu)) return std::nullopt;
    const double lg_a = log_gamma(a);
    const double q = abs_x * std::exp(lg_a - log_gamma(a + mu));
    if (!(q < 1.0)) return std::nullopt;
    const double ln_term = static_cast<double>(from_k) * std::log(abs_x) - lg_a;
    return std::exp(ln_term) / (1.0 - q);
}

/// Long-double variant used inside the series loop.
inline std::optional<long double> classic_tail_bound_opt_ld(long double mu, long double nu,
                                                            long double abs_x, int from_k) {
    if (abs_x == 0.0L) return 0.0L;
    const long double a = mu * static_cast<long double>(from_k) + nu;
    if (!(a > static_cast<long double>(gamma_minimum().x0) + mu)) return std::nullopt;
    const long double lg_a = log_gamma_ext(a);
    const long double q = abs_x * std::exp(lg_a - log_gamma_ext(a + mu));
    if (!(q < 1.0L)) return std::nullopt;
    const long double ln_term = static_cast<long double>(from_k) * std::log(abs_x) - lg_a;
    return std::exp(ln_term) / (1.0L - q);
}

/// Sums sum_{k>=0} x^k / Gamma(mu k + nu) by signed log-space terms in
/// extended precision with compensated accumulation, stopping at the first
/// index whose tail certificate drops below `tolerance`. The extended
/// precision keeps the alternating case (x < 0) accurate relative to the
/// result, not just to the largest term.
inline EvalResult eval_single_series(double mu, double nu, double x, double tolerance,
                                     int k_max) {
    const long double lmu = mu, lnu = nu;
    if (x == 0.0) {
        const double value = static_cast<double>(std::exp(-log_gamma_ext(lnu)));
        return EvalResult{value, 0, 0.0, 1, true};
    }
    const long double ln_ax = std::log(std::fabs(static_cast<long double>(x)));
    const bool negative = x < 0.0;
    CompensatedSum<long double> acc;
    for (int k = 0; k <= k_max; ++k) {
        const long double ln_term =
            static_cast<long double>(k) * ln_ax - log_gamma_ext(lmu * k + lnu);
        if (ln_term > static_cast<long double>(kLogTermOverflow)) {
            throw overflow_error("eval: ln|term| exceeds 700 at k=" + std::to_string(k));
        }
        long double term = std::exp(ln_term);
        if (negative && (k & 1)) term = -term;
        acc.add(term);
        const auto bound = classic_tail_bound_opt_ld(lmu, lnu, std::fabs(static_cast<long double>(x)), k + 1);
        if (bound && static_cast<double>(*bound) <= tolerance) {
            return EvalResult{static_cast<double>(acc.value()), k,
                              static_cast<double>(*bound), k + 1, true};
        }
    }
    throw no_convergence_error("eval: no tail certificate within k_max=" +
                               std::to_string(k_max) + " terms");
}

} // namespace detail

/// Evaluates E_{mu,nu}(x) = sum_{k>=0} x^k / Gamma(mu k + nu) for real x
/// with a certified truncation: |error| <= tail_bound <= tolerance.
inline EvalResult eval_classic(const MLParams& p, double x, double tolerance,
                               const EvalConfig& cfg = {}) {
    validate(p);
    if (!std::isfinite(x) || std::fabs(x) > 1e6) {
        throw domain_error("eval_classic: |x| must be finite and <= 1e6");
    }
    if (!(tolerance >= 1e-15) || !(tolerance <= 1e-3)) {
        throw domain_error("eval_classic: tolerance must be in [1e-15, 1e-3]");
    }
    if (cfg.k_max_classic < 1) {
        throw domain_error("eval_classic: k_max_classic must be >= 1");
    }
    return detail::eval_single_series(p.mu, p.nu, x, tolerance, cfg.k_max_classic);
}

/// Certified upper bound on the tail sum_{k >= from_k} |x|^k / Gamma(mu k + nu).
/// Throws not_applicable_error while the argument has not passed Gamma's
/// minimum or the term ratio is still >= 1; extend the series and retry.
inline double classic_tail_bound(const MLParams& p, double x, int from_k) {
    validate(p);
    if (from_k < 1) {
        throw domain_error("classic_tail_bound: from_k must be >= 1");
    }
    if (!std::isfinite(x)) {
        throw domain_error("classic_tail_bound: x must be finite");
    }
    const auto bound = detail::classic_tail_bound_opt(p.mu, p.nu, std::fabs(x), from_k);
    if (!bound) {
        throw not_applicable_error(
            "classic_tail_bound: preconditions not met at from_k=" + std::to_string(from_k));
    }
    return *bound;
}

} // namespace mittag
