#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "mittag/errors.hpp"

namespace mittag {

/// Parameters of the two-parameter function E_{mu,nu}.
struct MLParams {
    double mu; ///< series exponent weight, > 0
    double nu; ///< offset, > 0
};

/// Parameters (mu_1, ..., mu_n; gamma) of the multinomial function.
/// Evaluation only needs positivity; the estimate and verification paths
/// additionally require strict ascending order of the mus.
struct MultiMLParams {
    std::vector<double> mus;
    double gamma;
};

/// A function value with its truncation certificate.
struct EvalResult {
    double value = 0.0;
    int truncation_k = 0;          ///< last outer index summed
    double tail_bound = 0.0;       ///< bound on the omitted remainder
    std::int64_t terms_used = 0;   ///< series terms actually computed
    bool certified = true;         ///< false when only the heuristic stop applied
};

/// Evaluation budgets, overridable per call.
struct EvalConfig {
    int k_max_classic = 10000;
    int k_max_multinomial = 500;
    std::uint64_t composition_budget = 100'000'000;
};

inline bool strictly_ascending(std::span<const double> xs) {
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (!(xs[i - 1] < xs[i])) return false;
    }
    return true;
}

inline void validate(const MLParams& p) {
    if (!(p.mu > 0.0) || !std::isfinite(p.mu) || !(p.nu > 0.0) || !std::isfinite(p.nu)) {
        throw domain_error("MLParams: mu and nu must be positive and finite");
    }
}

inline void validate(const MultiMLParams& p) {
    if (p.mus.empty()) {
        throw domain_error("MultiMLParams: needs at least one mu");
    }
    for (double mu : p.mus) {
        if (!(mu > 0.0) || !std::isfinite(mu)) {
            throw domain_error("MultiMLParams: every mu must be positive and finite");
        }
    }
    if (!(p.gamma > 0.0) || !std::isfinite(p.gamma)) {
        throw domain_error("MultiMLParams: gamma must be positive and finite");
    }
}

inline void require_ascending(const MultiMLParams& p) {
    if (!strictly_ascending(p.mus)) {
        throw domain_error("MultiMLParams: mus must be strictly ascending here");
    }
}

} // namespace mittag
