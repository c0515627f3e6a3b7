#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mittag/composition.hpp"
#include "mittag/detail/accumulate.hpp"
#include "mittag/estimate.hpp"
#include "mittag/gamma.hpp"
#include "mittag/mittag_leffler.hpp"
#include "mittag/params.hpp"

namespace mittag {

namespace detail {

/// The nonzero-z slice of an evaluation: compositions that put weight on a
/// zero coordinate contribute nothing, so the series is summed over this
/// reduced variable set only.
struct Support {
    std::vector<double> mus;
    std::vector<double> ln_abs_z;
    std::vector<unsigned char> negative;
    double r = 0.0; ///< sum of |z_i| over the full vector
};

inline Support make_support(const MultiMLParams& p, std::span<const double> z) {
    Support s;
    for (std::size_t i = 0; i < z.size(); ++i) {
        s.r += std::fabs(z[i]);
        if (z[i] != 0.0) {
            s.mus.push_back(p.mus[i]);
            s.ln_abs_z.push_back(std::log(std::fabs(z[i])));
            s.negative.push_back(z[i] < 0.0 ? 1 : 0);
        }
    }
    return s;
}

inline void extend_ln_factorials(std::vector<double>& lf, int upto) {
    while (static_cast<int>(lf.size()) <= upto) {
        lf.push_back(log_gamma(static_cast<double>(lf.size()) + 1.0));
    }
}

/// Sum over all compositions of degree k on the support:
///   sum (k; l) prod z_i^{l_i} / Gamma(gamma + sum mu_i l_i)
/// in reverse-lexicographic order with compensated accumulation.
/// `lf` must hold ln i! for i <= k.
inline double block_sum(const Support& s, double gamma_param, int k,
                        const std::vector<double>& lf, bool per_term_overflow_guard,
                        std::uint64_t budget, std::uint64_t* terms_counter) {
    const int m = static_cast<int>(s.mus.size());
    CompensatedSum<double> block;
    CompositionStream stream(k, m, budget);
    for (; stream.valid(); stream.advance()) {
        const std::vector<int>& l = stream.parts();
        double sum_lf = 0.0;
        double sum_zl = 0.0;
        double arg = gamma_param;
        int parity = 0;
        for (int i = 0; i < m; ++i) {
            const int li = l[static_cast<std::size_t>(i)];
            sum_lf += lf[static_cast<std::size_t>(li)];
            sum_zl += static_cast<double>(li) * s.ln_abs_z[static_cast<std::size_t>(i)];
            arg += static_cast<double>(li) * s.mus[static_cast<std::size_t>(i)];
            if (s.negative[static_cast<std::size_t>(i)]) parity += li;
        }
        const double ln_term = lf[static_cast<std::size_t>(k)] - sum_lf + sum_zl - log_gamma(arg);
        if (per_term_overflow_guard && ln_term > kLogTermOverflow) {
            throw overflow_error("eval_multinomial: ln|term| exceeds 700 at k=" +
                                 std::to_string(k));
        }
        double term = std::exp(ln_term);
        if (parity & 1) term = -term;
        block.add(term);
    }
    if (terms_counter) *terms_counter += stream.count();
    return block.value();
}

} // namespace detail

/// Lemma-based certified upper bound on the omitted absolute tail
/// sum_{k >= from_k} |block_k|, inclusive of the from_k block:
/// C_safe * classic_tail_bound(mu_1, gamma, sum|z_i|, from_k).
inline double multinomial_tail_bound(const MultiMLParams& p, std::span<const double> z,
                                     int from_k) {
    validate(p);
    require_ascending(p);
    if (from_k < 1) {
        throw domain_error("multinomial_tail_bound: from_k must be >= 1");
    }
    if (z.size() != p.mus.size()) {
        throw domain_error("multinomial_tail_bound: z and mus must have equal length");
    }
    double r = 0.0;
    for (double zi : z) {
        if (!std::isfinite(zi)) throw domain_error("multinomial_tail_bound: z must be finite");
        r += std::fabs(zi);
    }
    const auto bound = detail::classic_tail_bound_opt(p.mus.front(), p.gamma, r, from_k);
    if (!bound) {
        throw not_applicable_error("multinomial_tail_bound: classic certificate not applicable at from_k=" +
                                   std::to_string(from_k));
    }
    return compute_constants(p).c_safe * (*bound);
}

/// The k-th outer term of the defining double series:
///   sum_{l_1+...+l_n=k} (k; l) prod z_i^{l_i} / Gamma(gamma + sum mu_i l_i).
inline double term_block(const MultiMLParams& p, std::span<const double> z, int k,
                         const EvalConfig& cfg = {}) {
    validate(p);
    if (z.size() != p.mus.size()) {
        throw domain_error("term_block: z and mus must have equal length");
    }
    if (k < 0) {
        throw domain_error("term_block: k must be >= 0");
    }
    for (double zi : z) {
        if (!std::isfinite(zi)) throw domain_error("term_block: z must be finite");
    }
    const detail::Support s = detail::make_support(p, z);
    if (s.mus.empty()) {
        return k == 0 ? std::exp(-log_gamma(p.gamma)) : 0.0;
    }
    std::vector<double> lf;
    detail::extend_ln_factorials(lf, k);
    return detail::block_sum(s, p.gamma, k, lf, true, cfg.composition_budget, nullptr);
}

/// Evaluates the multinomial function
///   E_{(mu_1..mu_n),gamma}(z_1..z_n) =
///   sum_{k>=0} sum_{l_1+...+l_n=k} (k; l) prod z_i^{l_i} / Gamma(gamma + sum mu_i l_i)
/// with a certified truncation whenever a certificate exists:
///   - strictly ascending mus: the outer truncation is certified through the
///     series estimate (multinomial_tail_bound);
///   - exactly one nonzero z: the sum collapses to a single two-parameter
///     series, certified by its own geometric tail bound;
///   - otherwise (repeated mus, several nonzero z): heuristic stop after
///     three consecutive blocks below tolerance, flagged certified = false.
inline EvalResult eval_multinomial(const MultiMLParams& p, std::span<const double> z,
                                   double tolerance, const EvalConfig& cfg = {}) {
    validate(p);
    if (z.size() != p.mus.size()) {
        throw domain_error("eval_multinomial: z and mus must have equal length");
    }
    if (p.mus.size() > 8) {
        throw domain_error("eval_multinomial: n must be <= 8");
    }
    if (!(tolerance >= 1e-14) || !(tolerance <= 1e-3)) {
        throw domain_error("eval_multinomial: tolerance must be in [1e-14, 1e-3]");
    }
    if (cfg.k_max_multinomial < 1) {
        throw domain_error("eval_multinomial: k_max_multinomial must be >= 1");
    }
    for (double zi : z) {
        if (!std::isfinite(zi)) throw domain_error("eval_multinomial: z must be finite");
    }
    const detail::Support s = detail::make_support(p, z);
    if (s.r > 100.0) {
        throw domain_error("eval_multinomial: sum |z_i| must be <= 100");
    }
    const int m = static_cast<int>(s.mus.size());
    const int k_max = cfg.k_max_multinomial;

    if (m == 0) {
        return EvalResult{std::exp(-log_gamma(p.gamma)), 0, 0.0, 1, true};
    }
    if (m == 1) {
        // Single surviving series: its own tail certificate is both tighter
        // than the lemma's C_safe-inflated one and valid without any
        // ordering hypothesis on the full mu vector.
        const double x = s.negative[0] ? -std::exp(s.ln_abs_z[0]) : std::exp(s.ln_abs_z[0]);
        return detail::eval_single_series(s.mus[0], p.gamma, x, tolerance, k_max);
    }

    if (strictly_ascending(p.mus)) {
        // Certified path. The stopping index depends only on scalar data
        // (mu_1, gamma, r, C_safe), so scan for it before enumerating any
        // composition; infeasible evaluations fail in microseconds.
        const double c_safe = compute_constants(p).c_safe;
        const double mu1 = p.mus.front();
        const double ln_c_safe = std::log(c_safe);
        const double ln_r = std::log(s.r);
        int k_stop = -1;
        double tail = 0.0;
        for (int from_k = 1; from_k <= k_max + 1; ++from_k) {
            const auto bound = detail::classic_tail_bound_opt(mu1, p.gamma, s.r, from_k);
            if (bound && c_safe * (*bound) <= tolerance) {
                k_stop = from_k - 1;
                tail = c_safe * (*bound);
                break;
            }
            // block from_k will be summed; check its certified magnitude
            const double ln_majorant = ln_c_safe + static_cast<double>(from_k) * ln_r -
                                       log_gamma(p.gamma + mu1 * static_cast<double>(from_k));
            if (ln_majorant > detail::kLogTermOverflow) {
                throw overflow_error("eval_multinomial: certified term bound exceeds e^700 at k=" +
                                     std::to_string(from_k));
            }
        }
        if (k_stop < 0) {
            throw no_convergence_error("eval_multinomial: no tail certificate within k_max=" +
                                       std::to_string(k_max) + " outer terms");
        }
        const std::uint64_t total = composition_count_cumulative(k_stop, m);
        if (total > cfg.composition_budget) {
            throw budget_error("eval_multinomial: " + std::to_string(total) +
                               " compositions exceed budget " +
                               std::to_string(cfg.composition_budget));
        }
        std::vector<double> lf;
        detail::extend_ln_factorials(lf, k_stop);
        detail::CompensatedSum<double> acc;
        std::uint64_t terms = 0;
        for (int k = 0; k <= k_stop; ++k) {
            acc.add(detail::block_sum(s, p.gamma, k, lf, false, cfg.composition_budget, &terms));
        }
        return EvalResult{acc.value(), k_stop, tail, static_cast<std::int64_t>(terms), true};
    }

    // Heuristic path for repeated/unordered mus: stop once three consecutive
    // blocks fall below tolerance. Uncertified by construction.
    std::vector<double> lf;
    detail::CompensatedSum<double> acc;
    std::uint64_t terms = 0;
    double last3[3] = {0.0, 0.0, 0.0};
    int small_streak = 0;
    for (int k = 0; k <= k_max; ++k) {
        const std::uint64_t count = composition_count(k, m);
        if (terms + count > cfg.composition_budget) {
            throw budget_error("eval_multinomial: composition budget exceeded at k=" +
                               std::to_string(k));
        }
        detail::extend_ln_factorials(lf, k);
        const double block = detail::block_sum(s, p.gamma, k, lf, true, cfg.composition_budget, &terms);
        acc.add(block);
        last3[k % 3] = std::fabs(block);
        small_streak = std::fabs(block) < tolerance ? small_streak + 1 : 0;
        if (small_streak >= 3) {
            const double tail = std::max({last3[0], last3[1], last3[2]});
            return EvalResult{acc.value(), k, tail, static_cast<std::int64_t>(terms), false};
        }
    }
    throw no_convergence_error("eval_multinomial: heuristic stop not reached within k_max=" +
                               std::to_string(k_max) + " outer terms");
}

} // namespace mittag
