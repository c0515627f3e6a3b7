#pragma once

#include <cmath>

namespace mittag::detail {

/// Neumaier-compensated accumulator. Keeps a running correction term so that
/// long alternating sums lose only O(eps) instead of O(n * eps).
template <typename Real>
struct CompensatedSum {
    Real sum = 0;
    Real carry = 0;

    void add(Real x) {
        const Real t = sum + x;
        if (std::fabs(sum) >= std::fabs(x)) {
            carry += (sum - t) + x;
        } else {
            carry += (x - t) + sum;
        }
        sum = t;
    }

    Real value() const { return sum + carry; }
};

} // namespace mittag::detail
