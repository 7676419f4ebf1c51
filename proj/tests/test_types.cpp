#include "doctest.h"

#include <cmath>

#include "rdg/errors.hpp"
#include "rdg/numeric.hpp"
#include "rdg/types.hpp"

using namespace rdg;

namespace {

// q_t proportional to 1/t^3, truncated at S and renormalized.
TypeDistribution cubic_tail(int s) {
    std::vector<double> raw(static_cast<std::size_t>(s));
    for (int t = 1; t <= s; ++t)
        raw[static_cast<std::size_t>(t - 1)] = 1.0 / (static_cast<double>(t) * t * t);
    return validate_distribution(raw, /*renormalize=*/true);
}

Kernel constant_kernel(int s, double value) {
    return make_kernel(Matrix(s, s, value));
}

} // namespace

TEST_CASE("validate_distribution accepts the reference pmf") {
    const TypeDistribution dist = validate_distribution({0.1, 0.15, 0.25, 0.5});
    CHECK(dist.size() == 4);
    CHECK(dist[3] == doctest::Approx(0.5));
}

TEST_CASE("validate_distribution accepts a degenerate single type") {
    const TypeDistribution dist = validate_distribution({1.0});
    CHECK(dist.size() == 1);
}

TEST_CASE("validate_distribution rejects bad mass") {
    CHECK_THROWS_AS(validate_distribution({0.5, 0.6}), NotNormalized);
    CHECK_THROWS_AS(validate_distribution({-0.1, 1.1}), NegativeMass);
    CHECK_THROWS_AS(validate_distribution({}), std::invalid_argument);
}

TEST_CASE("validate_distribution renormalizes only on request") {
    CHECK_THROWS_AS(validate_distribution({2.0, 2.0}), NotNormalized);
    const TypeDistribution dist = validate_distribution({2.0, 2.0}, true);
    CHECK(dist[0] == doctest::Approx(0.5));
    CHECK(dist[1] == doctest::Approx(0.5));
}

TEST_CASE("classify_stability flags the cubic-tail counterexample type") {
    const TypeDistribution dist = cubic_tail(30);
    const StabilityReport report = classify_stability(dist, 1000, 0.1);
    // Type ceil(n^{1/3}) = 10 sits in the unstable tail.
    CHECK_FALSE(report.stable[9]);
    // Independent suffix scan over the support.
    const double threshold = std::pow(1000.0, 0.1 - 1.0);
    int expected_u_up = 1;
    for (int t = 0; t < dist.size(); ++t)
        if (dist[t] >= threshold)
            expected_u_up = t + 2;
    CHECK(report.u_up == expected_u_up);
    for (int t = 0; t < dist.size(); ++t)
        CHECK(report.stable[static_cast<std::size_t>(t)] == (t + 1 < expected_u_up));
}

TEST_CASE("classify_stability keeps a single type always stable") {
    const TypeDistribution dist = validate_distribution({1.0});
    for (std::int64_t n : {2, 10, 1000000}) {
        const StabilityReport report = classify_stability(dist, n, 0.3);
        CHECK(report.u_up == 2); // S + 1
        CHECK(report.stable[0]);
    }
}

TEST_CASE("classify_stability direct inequality check") {
    const StabilityReport report =
        classify_stability(validate_distribution({0.5, 0.5}), 100, 0.5);
    CHECK(report.stable[0]);
    CHECK(report.stable[1]); // 0.5 >= 100^{-1/2} = 0.1
    CHECK(report.u_up == 3);
}

TEST_CASE("classify_stability is monotone in n") {
    const TypeDistribution dist = cubic_tail(40);
    std::vector<bool> previous;
    for (std::int64_t n : {10, 100, 1000, 10000, 100000, 1000000}) {
        const StabilityReport report = classify_stability(dist, n, 0.2);
        if (!previous.empty())
            for (std::size_t t = 0; t < previous.size(); ++t)
                if (previous[t])
                    CHECK(report.stable[t]);
        previous = report.stable;
    }
}

TEST_CASE("stable_count_bound closed form") {
    CHECK(stable_count_bound(1.0, 10000, 0.5) == 10);
    CHECK(stable_count_bound(0.7, 1, 0.3) == 1);
    CHECK(stable_count_bound(0.5, 1000, 0.9) == 2);
}

TEST_CASE("stable_count_bound dominates u_up when the tail premise holds") {
    // q_t = C/t^3 with C < 1 satisfies q_t <= t^{-1-delta} for delta = 2.
    const TypeDistribution dist = cubic_tail(30);
    for (int t = 0; t < dist.size(); ++t)
        REQUIRE(dist[t] <= std::pow(static_cast<double>(t + 1), -3.0));
    for (std::int64_t n : {100, 1000, 10000, 100000}) {
        const StabilityReport report = classify_stability(dist, n, 0.3);
        CHECK(stable_count_bound(2.0, n, 0.3) >= report.u_up);
    }
}

TEST_CASE("kappa_to_lambda single-type floor") {
    const TypeDistribution dist = validate_distribution({1.0});
    const ArcCountTable table = kappa_to_lambda(constant_kernel(1, 2.5), dist, 1000, 0.4);
    CHECK(table.counts(0, 0) == 2500);
}

TEST_CASE("kappa_to_lambda zero kernel") {
    const TypeDistribution dist = validate_distribution({0.5, 0.5});
    const ArcCountTable table = kappa_to_lambda(constant_kernel(2, 0.0), dist, 500, 0.4);
    for (std::int64_t c : table.counts.data())
        CHECK(c == 0);
}

TEST_CASE("kappa_to_lambda two-type hand evaluation") {
    const TypeDistribution dist = validate_distribution({0.5, 0.5});
    const ArcCountTable table = kappa_to_lambda(constant_kernel(2, 4.0), dist, 100, 0.5);
    for (int t = 0; t < 2; ++t)
        for (int s = 0; s < 2; ++s)
            CHECK(table.counts(t, s) == 100); // floor(4 * 0.25 * 100)
}

TEST_CASE("kappa_to_lambda zeroes unstable rows and columns and respects the budget") {
    const TypeDistribution dist = cubic_tail(30);
    const std::int64_t n = 1000;
    const double tau = 0.1;
    const Kernel kernel = constant_kernel(30, 3.0);
    const ArcCountTable table = kappa_to_lambda(kernel, dist, n, tau);
    const StabilityReport report = classify_stability(dist, n, tau);
    double budget = 0.0;
    std::int64_t total = 0;
    for (int t = 0; t < 30; ++t)
        for (int s = 0; s < 30; ++s) {
            if (!report.stable[t] || !report.stable[s])
                CHECK(table.counts(t, s) == 0);
            CHECK(table.counts(t, s) <= static_cast<std::int64_t>(std::ceil(3.0 * n)));
            budget += kernel.kappa(t, s) * dist[t] * dist[s];
            total += table.counts(t, s);
        }
    CHECK(static_cast<double>(total) <= static_cast<double>(n) * budget + 1e-6);
}

TEST_CASE("check_kernel_bound vacuous when every type is stable") {
    const TypeDistribution dist = validate_distribution({0.5, 0.5});
    CHECK(check_kernel_bound(constant_kernel(2, 100.0), dist, 100, 0.5, 0.45, 1.0));
}

TEST_CASE("check_kernel_bound zero kernel") {
    const TypeDistribution dist = cubic_tail(30);
    CHECK(check_kernel_bound(constant_kernel(30, 0.0), dist, 1000, 0.1, 0.49, 1.0));
}

TEST_CASE("check_kernel_bound matches a brute-force scan on the cubic tail") {
    const TypeDistribution dist = cubic_tail(30);
    const std::int64_t n = 1000000;
    const double tau = 0.1;
    const double alpha = 0.49;
    const double c = 1.0;
    const Kernel kernel = constant_kernel(30, 1.0);

    // Oracle: independent scan over every pair with an unstable member.
    const double threshold = std::pow(static_cast<double>(n), tau - 1.0);
    int last_big = 0;
    for (int t = 0; t < dist.size(); ++t)
        if (dist[t] >= threshold)
            last_big = t + 1;
    bool expected = true;
    for (int t = 0; t < 30; ++t)
        for (int s = 0; s < 30; ++s) {
            const bool unstable = (t + 1 > last_big) || (s + 1 > last_big);
            if (!unstable)
                continue;
            const double bound = c * std::pow(static_cast<double>(n), -0.5 + alpha) /
                                 std::sqrt(dist[t] * dist[s]);
            if (1.0 > bound)
                expected = false;
        }
    CHECK(check_kernel_bound(kernel, dist, n, tau, alpha, c) == expected);
}

TEST_CASE("check_kernel_bound rejects alpha outside the admissible interval") {
    const TypeDistribution dist = validate_distribution({0.5, 0.5});
    CHECK_THROWS_AS(check_kernel_bound(constant_kernel(2, 1.0), dist, 100, 0.5, 0.1, 1.0),
                    InvalidAlpha);
    CHECK_THROWS_AS(check_kernel_bound(constant_kernel(2, 1.0), dist, 100, 0.5, 0.6, 1.0),
                    InvalidAlpha);
}

TEST_CASE("floor and ceil helpers survive representation error") {
    CHECK(floor_count(0.3 * 10.0) == 3);      // 2.9999999999999996 without the snap
    CHECK(floor_count(2.5 * 1000.0) == 2500);
    CHECK(ceil_count(std::pow(10000.0, 0.25)) == 10);
}

TEST_CASE("kernel perturbation feeds the effective kernel") {
    Matrix phi(1, 1, 0.5);
    const Kernel kernel = make_kernel(Matrix(1, 1, 2.0), phi);
    CHECK(kernel.kappa(0, 0) == doctest::Approx(2.0));
    CHECK(kernel.effective(0, 0) == doctest::Approx(3.0));
    CHECK_THROWS_AS(make_kernel(Matrix(1, 1, 2.0), Matrix(1, 1, -1.5)), std::invalid_argument);
    CHECK_THROWS_AS(make_kernel(Matrix(1, 1, -2.0)), std::invalid_argument);
}
