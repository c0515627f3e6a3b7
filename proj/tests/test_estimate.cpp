#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "mittag/estimate.hpp"
#include "mittag/rng.hpp"
#include "mittag/verify.hpp"
#include "oracle.hpp"

using mittag::check_bound;
using mittag::compute_constants;
using mittag::compute_n0;
using mittag::draw_trial;
using mittag::MultiMLParams;
using mittag::verify_random;
using mittag::VerifyRanges;

TEST_CASE("n0 threshold: examples and degenerate regime") {
    CHECK(compute_n0(MultiMLParams{{0.3, 0.9}, 0.5}) == 3);
    CHECK(compute_n0(MultiMLParams{{0.7}, 2.0}) == 0);
    CHECK(compute_n0(MultiMLParams{{0.5}, 1.0}) == 0);

    // independent oracle for x0: grid scan on [1.46, 1.4625] at 1e-7 steps
    double best = 1e300, x0_scan = 0.0;
    for (int i = 0; i <= 25000; ++i) {
        const double x = 1.46 + 1e-7 * static_cast<double>(i);
        const double g = mittag::gamma(x);
        if (g < best) {
            best = g;
            x0_scan = x;
        }
    }
    CHECK(static_cast<int>(std::floor((x0_scan - 0.5) / 0.3)) == 3);
}

TEST_CASE("n0 boundary tie resolves to the exact multiple") {
    const double x0 = mittag::gamma_minimum().x0;
    const double gamma_param = x0 - 0.9; // makes (x0 - gamma)/0.3 == 3 exactly up to rounding
    const int n0 = compute_n0(MultiMLParams{{0.3, 1.0}, gamma_param});
    CHECK(n0 == 3);
}

TEST_CASE("constants: worked example against direct gamma evaluation") {
    const auto c = compute_constants(MultiMLParams{{0.3, 0.9}, 0.5});
    CHECK(c.n0 == 3);
    CHECK(std::fabs(c.c0_paper - 0.500585003694) <= 1e-9);
    CHECK(std::fabs(c.c_paper - 1.500585003694) <= 1e-9);
    CHECK(std::fabs(c.c0_safe - 2.00140860161) <= 1e-8);
    // cross-check with Gamma(1/2) = sqrt(pi)
    CHECK(std::fabs(c.c0_paper - mittag::gamma(1.4) / std::sqrt(M_PI)) <= 1e-13);
    // the max over k <= n0 is attained at k = 0 left of x0
    CHECK(std::fabs(c.c0_safe - mittag::gamma(0.5) / c.gamma_x0) <= 1e-13);
}

TEST_CASE("constants: degenerate regime forces C_paper = 2") {
    const auto c = compute_constants(MultiMLParams{{0.5}, 2.0});
    CHECK(c.n0 == 0);
    CHECK(std::fabs(c.c0_paper - 1.0) <= 1e-14);
    CHECK(std::fabs(c.c_paper - 2.0) <= 1e-14);
}

TEST_CASE("constants invariants over random parameters") {
    mittag::TrialRng rng(53, 0);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = rng.uniform_int(1, 4);
        std::vector<double> mus;
        for (;;) {
            mus.clear();
            for (int i = 0; i < n; ++i) mus.push_back(rng.uniform_left_open(0.0, 2.0));
            std::sort(mus.begin(), mus.end());
            bool ok = true;
            for (int i = 1; i < n; ++i) ok = ok && (mus[i] - mus[i - 1] >= 1e-3);
            if (ok) break;
        }
        const MultiMLParams p{mus, rng.uniform_left_open(0.05, 3.0)};
        const auto c = compute_constants(p);
        const double mu1 = mus.front();
        if (p.gamma < c.x0) {
            CHECK(mu1 * c.n0 <= c.x0 - p.gamma + 1e-12);
            CHECK(c.x0 - p.gamma < mu1 * (c.n0 + 1) + 1e-12);
            CHECK(p.gamma + mu1 * (c.n0 + 1) > c.x0 - 1e-12);
        } else {
            CHECK(c.n0 == 0);
        }
        CHECK(c.c_paper == 1.0 + c.c0_paper);
        CHECK(c.c_safe == 1.0 + c.c0_safe);
        CHECK(c.c_safe >= 1.0);
        CHECK(c.c_safe >= c.c0_safe);
        const double direct = mittag::gamma(p.gamma + mu1 * c.n0) / mittag::gamma(p.gamma);
        CHECK(std::fabs(c.c0_paper - direct) <= 1e-12 * direct);
    }
}

TEST_CASE("per-composition inequalities around the threshold index") {
    mittag::TrialRng rng(53, 1);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = rng.uniform_int(2, 3);
        std::vector<double> mus;
        for (;;) {
            mus.clear();
            for (int i = 0; i < n; ++i) mus.push_back(rng.uniform_left_open(0.05, 2.0));
            std::sort(mus.begin(), mus.end());
            bool ok = true;
            for (int i = 1; i < n; ++i) ok = ok && (mus[i] - mus[i - 1] >= 1e-3);
            if (ok) break;
        }
        const MultiMLParams p{mus, rng.uniform_left_open(0.05, 3.0)};
        const auto c = compute_constants(p);
        for (int k = 0; k <= c.n0 + 25; ++k) {
            const double gk = mittag::gamma(p.gamma + mus.front() * k);
            for (mittag::CompositionStream s(k, n); s.valid(); s.advance()) {
                double arg = p.gamma;
                for (int i = 0; i < n; ++i) {
                    arg += mus[static_cast<std::size_t>(i)] *
                           s.parts()[static_cast<std::size_t>(i)];
                }
                const double ga = mittag::gamma(arg);
                if (k > c.n0) {
                    REQUIRE(ga >= gk * (1.0 - 1e-12));
                } else {
                    REQUIRE(1.0 / ga <= c.c0_safe / gk + 1e-12);
                }
            }
        }
    }
}

TEST_CASE("check_bound: trivial, reduction, and reference instances") {
    const MultiMLParams pz{{0.4, 1.1}, 0.9};
    const auto zero = check_bound(pz, std::vector<double>{0.0, 0.0}, 1e-12);
    const double inv_gamma = std::exp(-mittag::log_gamma(0.9));
    CHECK(std::fabs(zero.lhs - inv_gamma) <= 1e-14);
    CHECK(zero.rhs_safe >= zero.lhs);
    CHECK(zero.ok_safe);
    CHECK(zero.ok_paper);

    const auto n1 = check_bound(MultiMLParams{{0.8}, 1.2}, std::vector<double>{-1.7}, 1e-12);
    CHECK(n1.ok_safe);
    CHECK(n1.ok_paper);

    const auto big = check_bound(MultiMLParams{{0.5, 1.0}, 1.0}, std::vector<double>{3.0, -2.0},
                                 1e-12);
    CHECK(big.ok_safe);
    CHECK(std::fabs(big.lhs - 212.87282869919366) / 212.87282869919366 <= 1e-10);
    CHECK(std::fabs(big.rhs_safe - 306621902587.0206) / 306621902587.0206 <= 1e-10);
}

TEST_CASE("rhs scales monotonically when shrinking the arguments") {
    const MultiMLParams p{{0.6, 1.3}, 0.7};
    const std::vector<double> z{1.5, -0.8};
    double prev = -1.0;
    for (int i = 0; i <= 10; ++i) {
        const double s = 0.1 * static_cast<double>(i);
        std::vector<double> zs;
        for (double zi : z) zs.push_back(s * zi);
        const auto bc = check_bound(p, zs, 1e-12);
        if (prev >= 0.0) CHECK(prev <= bc.rhs_safe * (1.0 + 1e-12));
        prev = bc.rhs_safe;
    }
}

TEST_CASE("paper and safe ratios differ only by the constants, per trial") {
    mittag::TrialRng rng(53, 2);
    for (int trial = 0; trial < 20; ++trial) {
        const auto t = draw_trial(VerifyRanges{1, 3, 2.0, 0.05, 3.0, 2.0}, 99, trial);
        const MultiMLParams p{t.mus, t.gamma};
        mittag::BoundCheck bc;
        try {
            bc = check_bound(p, t.z, 1e-12);
        } catch (const mittag::error&) {
            continue;
        }
        const auto c = compute_constants(p);
        CHECK(std::fabs(bc.rhs_paper * c.c_safe - bc.rhs_safe * c.c_paper) <=
              1e-10 * std::fabs(bc.rhs_safe) * c.c_paper);
    }
}

TEST_CASE("draw_trial respects its ranges and is a pure function") {
    const VerifyRanges r{};
    for (std::uint64_t i = 0; i < 200; ++i) {
        const auto t = draw_trial(r, 42, i);
        const auto again = draw_trial(r, 42, i);
        CHECK(t.mus == again.mus);
        CHECK(t.gamma == again.gamma);
        CHECK(t.z == again.z);
        CHECK(t.mus.size() >= 1);
        CHECK(t.mus.size() <= 4);
        CHECK(mittag::strictly_ascending(t.mus));
        for (std::size_t j = 1; j < t.mus.size(); ++j) {
            CHECK(t.mus[j] - t.mus[j - 1] >= 1e-3);
        }
        CHECK(t.mus.front() > 0.0);
        CHECK(t.mus.back() <= 2.0);
        CHECK(t.gamma > 0.05);
        CHECK(t.gamma <= 3.0);
        for (double zi : t.z) CHECK(std::fabs(zi) <= 10.0);
    }
}

TEST_CASE("verify_random: forced-zero arguments never violate") {
    VerifyRanges r;
    r.z_max = 0.0;
    const auto rep = verify_random(r, 25, 7, 1e-12);
    CHECK(rep.trials == 25);
    CHECK(rep.violations_safe == 0);
    CHECK(rep.violations_paper == 0);
    CHECK(rep.error_trials == 0);
    CHECK(rep.max_ratio_safe > 0.0);
    CHECK(rep.max_ratio_safe <= 1.0);
}

TEST_CASE("verify_random is reproducible and thread-count independent") {
    VerifyRanges r;
    r.z_max = 2.0; // keep the unit test quick
    const auto a = verify_random(r, 60, 1234, 1e-12, {}, 1);
    const auto b = verify_random(r, 60, 1234, 1e-12, {}, 2);
    const auto c = verify_random(r, 60, 1234, 1e-12, {}, 3);
    CHECK(a.violations_paper == b.violations_paper);
    CHECK(a.violations_safe == b.violations_safe);
    CHECK(a.error_trials == b.error_trials);
    CHECK(a.max_ratio_paper == b.max_ratio_paper);
    CHECK(a.max_ratio_safe == b.max_ratio_safe);
    CHECK(a.worst_case.mus == b.worst_case.mus);
    CHECK(a.worst_case.z == b.worst_case.z);
    CHECK(a.worst_case.gamma == b.worst_case.gamma);
    CHECK(b.max_ratio_safe == c.max_ratio_safe);
    CHECK(b.worst_case.z == c.worst_case.z);
    CHECK(a.violations_safe == 0);
}

TEST_CASE("verify_random counts evaluation failures separately") {
    // tiny mu with large z cannot converge within the default budgets
    VerifyRanges r;
    r.n_min = r.n_max = 2;
    r.mu_max = 0.1;
    r.z_max = 9.0;
    const auto rep = verify_random(r, 10, 5, 1e-12);
    CHECK(rep.error_trials == 10);
    CHECK(rep.violations_safe == 0);
    CHECK(rep.violations_paper == 0);
    CHECK(rep.max_ratio_safe == 0.0);
    CHECK(rep.worst_case.mus.empty());
}

TEST_CASE("estimate paths insist on strictly ascending mus") {
    CHECK_THROWS_AS(compute_constants(MultiMLParams{{0.9, 0.3}, 1.0}), mittag::domain_error);
    CHECK_THROWS_AS(compute_n0(MultiMLParams{{0.5, 0.5}, 1.0}), mittag::domain_error);
    CHECK_THROWS_AS(check_bound(MultiMLParams{{0.5, 0.5}, 1.0}, std::vector<double>{0.1, 0.1},
                                1e-12),
                    mittag::domain_error);
    CHECK_THROWS_AS(verify_random(VerifyRanges{}, 0, 1), mittag::domain_error);
}
