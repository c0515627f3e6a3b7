#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <span>
#include <thread>
#include <vector>

#include "mittag/estimate.hpp"
#include "mittag/mittag_leffler.hpp"
#include "mittag/multinomial.hpp"
#include "mittag/params.hpp"
#include "mittag/rng.hpp"

namespace mittag {

/// One evaluation of the estimate's two sides. ok_* tolerates the certified
/// truncation tails of both evaluations plus the caller's slack.
struct BoundCheck {
    double lhs = 0.0;
    double rhs_paper = 0.0;
    double rhs_safe = 0.0;
    bool ok_paper = false;
    bool ok_safe = false;
};

inline BoundCheck check_bound(const MultiMLParams& p, std::span<const double> z,
                              double tolerance, const EvalConfig& cfg = {}) {
    validate(p);
    require_ascending(p);
    const EvalResult multi = eval_multinomial(p, z, tolerance, cfg);
    double r = 0.0;
    for (double zi : z) r += std::fabs(zi);
    const EvalResult classic = eval_classic(MLParams{p.mus.front(), p.gamma}, r, tolerance, cfg);
    const EstimateConstants c = compute_constants(p);
    BoundCheck out;
    out.lhs = std::fabs(multi.value);
    out.rhs_paper = c.c_paper * classic.value;
    out.rhs_safe = c.c_safe * classic.value;
    out.ok_paper =
        out.lhs <= out.rhs_paper + multi.tail_bound + c.c_paper * classic.tail_bound + tolerance;
    out.ok_safe =
        out.lhs <= out.rhs_safe + multi.tail_bound + c.c_safe * classic.tail_bound + tolerance;
    return out;
}

/// Sampling ranges for randomized verification (defaults per contract).
struct VerifyRanges {
    int n_min = 1;
    int n_max = 4;
    double mu_max = 2.0;     ///< mus drawn from (0, mu_max], sorted, min gap 1e-3
    double gamma_min = 0.05; ///< gamma drawn from (gamma_min, gamma_max]
    double gamma_max = 3.0;
    double z_max = 10.0;     ///< z_i drawn from [-z_max, z_max]
};

struct TrialParams {
    std::vector<double> mus;
    double gamma = 0.0;
    std::vector<double> z;
};

struct VerifyReport {
    std::uint64_t trials = 0;
    std::uint64_t violations_paper = 0;
    std::uint64_t violations_safe = 0;
    double max_ratio_paper = 0.0; ///< max over trials of lhs / rhs_paper
    double max_ratio_safe = 0.0;  ///< max over trials of lhs / rhs_safe
    std::uint64_t seed = 0;
    TrialParams worst_case;            ///< trial attaining max_ratio_safe
    std::uint64_t error_trials = 0;    ///< budget/convergence/overflow failures,
                                       ///< excluded from the violation tally
};

inline constexpr double kMinMuGap = 1e-3;

/// The parameters of trial `index` under `seed`: a pure function of
/// (seed, index), so any subset of trials can be reproduced in any order.
inline TrialParams draw_trial(const VerifyRanges& r, std::uint64_t seed, std::uint64_t index) {
    if (r.n_min < 1 || r.n_max < r.n_min || !(r.mu_max > 0.0) || !(r.gamma_min >= 0.0) ||
        !(r.gamma_max > r.gamma_min) || !(r.z_max >= 0.0)) {
        throw domain_error("draw_trial: invalid ranges");
    }
    TrialRng rng(seed, index);
    TrialParams t;
    const int n = rng.uniform_int(r.n_min, r.n_max);
    for (int attempt = 0;; ++attempt) {
        t.mus.clear();
        for (int i = 0; i < n; ++i) t.mus.push_back(rng.uniform_left_open(0.0, r.mu_max));
        std::sort(t.mus.begin(), t.mus.end());
        bool ok = true;
        for (int i = 1; i < n; ++i) ok = ok && (t.mus[i] - t.mus[i - 1] >= kMinMuGap);
        if (ok) break;
        if (attempt > 10000) {
            throw domain_error("draw_trial: cannot satisfy mu gap within mu_max range");
        }
    }
    t.gamma = rng.uniform_left_open(r.gamma_min, r.gamma_max);
    for (int i = 0; i < n; ++i) t.z.push_back(rng.uniform(-r.z_max, r.z_max));
    return t;
}

/// Randomized falsification run of the estimate: draws `trials` instances,
/// checks both constants, and aggregates with order-independent reductions
/// so the report is identical regardless of thread count. Trials that fail
/// to evaluate (typed numerical errors) are counted in error_trials and are
/// excluded from violations and ratios.
inline VerifyReport verify_random(const VerifyRanges& ranges, std::uint64_t trials,
                                  std::uint64_t seed, double tolerance = 1e-12,
                                  const EvalConfig& cfg = {}, unsigned threads = 0) {
    if (trials < 1) {
        throw domain_error("verify_random: trials must be >= 1");
    }
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    struct Partial {
        std::uint64_t v_paper = 0, v_safe = 0, errors = 0;
        double max_paper = 0.0;
        double max_safe = 0.0;
        std::uint64_t safe_idx = UINT64_MAX;
        TrialParams safe_params;
    };
    std::vector<Partial> partials(threads);
    std::atomic<std::uint64_t> next{0};

    auto worker = [&](unsigned tid) {
        Partial& part = partials[tid];
        for (;;) {
            const std::uint64_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= trials) break;
            TrialParams t = draw_trial(ranges, seed, i);
            MultiMLParams p{t.mus, t.gamma};
            BoundCheck bc;
            try {
                bc = check_bound(p, t.z, tolerance, cfg);
            } catch (const domain_error&) {
                throw; // generator bug, not a trial outcome
            } catch (const error&) {
                ++part.errors;
                continue;
            }
            if (!bc.ok_paper) ++part.v_paper;
            if (!bc.ok_safe) ++part.v_safe;
            const double ratio_paper = bc.lhs / bc.rhs_paper;
            const double ratio_safe = bc.lhs / bc.rhs_safe;
            part.max_paper = std::max(part.max_paper, ratio_paper);
            if (ratio_safe > part.max_safe ||
                (ratio_safe == part.max_safe && i < part.safe_idx)) {
                part.max_safe = ratio_safe;
                part.safe_idx = i;
                part.safe_params = std::move(t);
            }
        }
    };

    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned tid = 0; tid < threads; ++tid) pool.emplace_back(worker, tid);
        for (auto& th : pool) th.join();
    }

    VerifyReport report;
    report.trials = trials;
    report.seed = seed;
    std::uint64_t best_idx = UINT64_MAX;
    for (const Partial& part : partials) {
        report.violations_paper += part.v_paper;
        report.violations_safe += part.v_safe;
        report.error_trials += part.errors;
        report.max_ratio_paper = std::max(report.max_ratio_paper, part.max_paper);
        if (part.safe_idx != UINT64_MAX &&
            (part.max_safe > report.max_ratio_safe ||
             (part.max_safe == report.max_ratio_safe && part.safe_idx < best_idx))) {
            report.max_ratio_safe = part.max_safe;
            best_idx = part.safe_idx;
            report.worst_case = part.safe_params;
        }
    }
    return report;
}

} // namespace mittag
