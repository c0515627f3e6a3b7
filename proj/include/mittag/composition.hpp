#pragma once

#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mittag/errors.hpp"
#include "mittag/gamma.hpp"

namespace mittag {

using bigint = boost::multiprecision::cpp_int;

/// Default cumulative term budget for composition enumeration.
inline constexpr std::uint64_t kDefaultCompositionBudget = 100'000'000;

/// A weak composition (l_1, ..., l_n) of `degree` into n nonnegative parts.
struct Composition {
    std::vector<int> parts;
    int degree = 0; ///< sum of parts

    static Composition of(std::vector<int> parts) {
        if (parts.empty()) {
            throw domain_error("Composition: needs at least one part");
        }
        int sum = 0;
        for (int p : parts) {
            if (p < 0) throw domain_error("Composition: parts must be nonnegative");
            sum += p;
        }
        return Composition{std::move(parts), sum};
    }
};

/// Number of weak compositions of k into n parts: binomial(k+n-1, n-1).
/// Throws overflow_error if the count does not fit in 64 bits.
inline std::uint64_t composition_count(int k, int n) {
    if (k < 0 || n < 1) {
        throw domain_error("composition_count: need k >= 0, n >= 1");
    }
    // binomial(k+n-1, n-1) multiplicatively; n-1 <= small in practice
    unsigned __int128 num = 1;
    for (int i = 1; i <= n - 1; ++i) {
        num = num * static_cast<unsigned>(k + i);
        num /= static_cast<unsigned>(i); // exact: prefix products of binomials
        if (num > static_cast<unsigned __int128>(UINT64_MAX)) {
            throw overflow_error("composition_count: count exceeds 64 bits");
        }
    }
    return static_cast<std::uint64_t>(num);
}

/// Cumulative count of compositions for all degrees 0..k into n parts:
/// binomial(k+n, n).
inline std::uint64_t composition_count_cumulative(int k, int n) {
    return composition_count(k, n + 1);
}

/// Streams the weak compositions of k into n parts in reverse-lexicographic
/// order of the parts vector: (k,0,...,0) first, (0,...,0,k) last. The
/// cursor owns its buffer and must not be shared mid-iteration; distinct
/// streams are independent.
class CompositionStream {
  public:
    CompositionStream(int k, int n, std::uint64_t budget = kDefaultCompositionBudget)
        : parts_(static_cast<std::size_t>(n), 0), k_(k), n_(n) {
        if (k < 0 || n < 1) {
            throw domain_error("CompositionStream: need k >= 0, n >= 1");
        }
        count_ = composition_count(k, n);
        if (count_ > budget) {
            throw budget_error("CompositionStream: " + std::to_string(count_) +
                               " compositions exceed budget " + std::to_string(budget));
        }
        parts_[0] = k;
        valid_ = true;
    }

    bool valid() const { return valid_; }
    const std::vector<int>& parts() const { return parts_; }
    int degree() const { return k_; }
    std::uint64_t count() const { return count_; }

    /// Advances to the next composition; after the last one valid() is false.
    void advance() {
        if (n_ == 1 || parts_[static_cast<std::size_t>(n_ - 1)] == k_) {
            valid_ = false;
            return;
        }
        const int tail = parts_[static_cast<std::size_t>(n_ - 1)];
        int j = n_ - 2;
        while (parts_[static_cast<std::size_t>(j)] == 0) --j;
        parts_[static_cast<std::size_t>(n_ - 1)] = 0;
        parts_[static_cast<std::size_t>(j)] -= 1;
        parts_[static_cast<std::size_t>(j + 1)] = tail + 1;
        valid_ = true;
    }

    Composition current() const { return Composition{parts_, k_}; }

  private:
    std::vector<int> parts_;
    int k_;
    int n_;
    std::uint64_t count_ = 0;
    bool valid_ = false;
};

/// Exact multinomial coefficient k! / (l_1! ... l_n!) in unbounded integers.
inline bigint multinomial_exact(const Composition& c) {
    // product of binomials over prefix sums; each factor is exact
    bigint result = 1;
    int prefix = 0;
    for (int l : c.parts) {
        prefix += l;
        // result *= binomial(prefix, l)
        bigint factor = 1;
        for (int i = 1; i <= l; ++i) {
            factor *= (prefix - l + i);
            factor /= i;
        }
        result *= factor;
    }
    return result;
}

/// log of the multinomial coefficient: log_gamma(k+1) - sum log_gamma(l_i+1).
inline double log_multinomial(const Composition& c) {
    double s = log_gamma(static_cast<double>(c.degree) + 1.0);
    for (int l : c.parts) {
        s -= log_gamma(static_cast<double>(l) + 1.0);
    }
    return s;
}

} // namespace mittag
