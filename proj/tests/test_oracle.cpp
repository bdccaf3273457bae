// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "qxsort/oracle.hpp"

using namespace qxsort;
using namespace qxsort::oracle;
using theory::rational;

namespace {

std::vector<ExactRational> insertion_base(unsigned t) {
    std::vector<ExactRational> base;
    for (unsigned n = 0; n < 2 * t + 1; ++n) {
        base.push_back(insertion_sort_avg(n));
    }
    return base;
}

}  // namespace

TEST_CASE("merge cost closed form") {
    CHECK(expected_merge_cost(0, 4) == 0);
    CHECK(expected_merge_cost(1, 1) == 1);
    CHECK(expected_merge_cost(2, 2) == rational(8, 3));
    CHECK(expected_merge_cost(1, 2) == rational(5, 3));
    CHECK(exact_mergesort_avg(4) == rational(14, 3));
    CHECK(exact_mergesort_avg(2) == 1);
}

TEST_CASE("bottom-up and top-down tables") {
    const auto td = mergesort_avg_table(64, MergeVariant::TopDown);
    const auto bu = mergesort_avg_table(64, MergeVariant::BottomUp);
    for (unsigned j = 0; j <= 6; ++j) {
        CHECK(td[1u << j] == bu[1u << j]);
    }
    CHECK(td[6] != bu[6]);
}

TEST_CASE("A indicators partition the outcomes") {
    for (auto alpha : {rational(1, 2), ExactRational(1), rational(1, 3)}) {
        for (unsigned n = 1; n < 50; ++n) {
            for (unsigned j = 0; j < n; ++j) {
                CHECK(recurse_on_first(j, n, alpha) != recurse_on_second(n - 1 - j, n, alpha));
            }
        }
        for (unsigned t : {0u, 1u, 2u}) {
            for (unsigned n = 2 * t + 1; n < 30; ++n) {
                CHECK(recursion_weight_sum(n, t, alpha) == 1);
            }
        }
    }
}

TEST_CASE("toll at small sizes") {
    const auto x = mergesort_avg_table(10, MergeVariant::TopDown);
    // n = 5, t = 0, alpha = 1/2: X takes sizes 0, 1, 2, 1, 0 for j = 0..4
    CHECK(toll(5, x, 0, rational(1, 2)) == 4 + rational(1, 5) * (x[0] + x[1] + x[2] + x[1] + x[0]));
    CHECK(toll(5, x, 0, rational(1, 2)) == rational(21, 5));
    CHECK_THROWS_AS(toll(2, x, 1, rational(1, 2)), ContractViolation);
}

TEST_CASE("DP equals enumeration of the implementation for t in {0, 1}") {
    for (Algorithm alg : {Algorithm::QuickMergesortTD, Algorithm::QuickMergesortBU, Algorithm::QuickMergesortAlpha1,
                          Algorithm::QuickHeapsort}) {
        const auto x = exact_x_table(8, alg);
        const BufferRatio r = algorithm_alpha(alg);
        for (unsigned t : {0u, 1u}) {
            const auto dp = solve_recurrence(8, x, insertion_base(t), t, rational(r.num, r.den));
            for (unsigned n = 0; n <= 8; ++n) {
                CAPTURE(n);
                CAPTURE(t);
                CHECK(exhaustive_avg(n, alg, t) == dp.c[n]);
            }
        }
    }
}

TEST_CASE("enumerated and closed-form base tables agree") {
    CHECK(enumerated_base_table(3) == insertion_base(3));
}

TEST_CASE("DP small values") {
    const auto x = mergesort_avg_table(8, MergeVariant::TopDown);
    const auto dp = solve_recurrence(8, x, insertion_base(0), 0, rational(1, 2));
    CHECK(dp.c[1] == 0);
    CHECK(dp.c[3] == rational(8, 3));
    CHECK(dp.base_threshold() == 0);
    for (unsigned n = 1; n <= 8; ++n) {
        CHECK(dp.c[n] >= dp.c[n - 1]);
    }
}

TEST_CASE("float DP tracks the exact DP") {
    const unsigned N = 200;
    const auto x = mergesort_avg_table(N, MergeVariant::TopDown);
    for (unsigned t : {0u, 1u, 3u}) {
        const auto base = insertion_base(t);
        const auto exact = solve_recurrence(N, x, base, t, rational(1, 2));
        const auto xf = to_high(x);
        const auto bf = to_high(base);
        const auto approx = solve_recurrence_float(N, xf, bf, t, rational(1, 2));
        for (unsigned n = 0; n <= N; n += 7) {
            const double e = theory::to_double(exact.c[n]);
            const double f = static_cast<double>(approx.c[n]);
            CHECK(std::fabs(e - f) <= 1e-9 * std::max(1.0, e));
            CHECK(approx.error_bound[n] < 1e-20 * std::max(1.0, e));
        }
    }
}

TEST_CASE("recurrence input checks") {
    const auto x = mergesort_avg_table(4, MergeVariant::TopDown);
    CHECK_THROWS_AS(solve_recurrence(10, x, insertion_base(0), 0, rational(1, 2)), ContractViolation);
    CHECK_THROWS_AS(solve_recurrence(4, x, insertion_base(0), 1, rational(1, 2)), ContractViolation);
    CHECK_THROWS_AS(solve_recurrence(4, x, insertion_base(0), 0, 0), ContractViolation);
    CHECK_THROWS_AS(enumerate_average(kMaxEnumeration + 1, [](std::span<CountedElement>) { return Count{0}; }),
                    ContractViolation);
}

TEST_CASE("empirical X table is exact at small sizes") {
    const auto e = empirical_x_table(12, Algorithm::QuickHeapsort, 200, 3);
    const auto x = exact_x_table(6, Algorithm::QuickHeapsort);
    for (unsigned m = 0; m <= 6; ++m) {
        CHECK(static_cast<double>(e[m]) == doctest::Approx(theory::to_double(x[m])));
    }
    CHECK(e.size() == 13);
    CHECK(static_cast<double>(e[12]) > static_cast<double>(e[8]));
}

TEST_CASE("leading term of QuickMergesort matches Mergesort") {
    const unsigned N = 1 << 13;
    const auto x = to_high(mergesort_avg_table(N, MergeVariant::TopDown));
    const auto base = to_high(insertion_base(0));
    const auto dp = solve_recurrence_float(N, x, base, 0, rational(1, 2));
    const double ratio = static_cast<double>(dp.c[N]) / (N * 13.0);
    CHECK(std::fabs(ratio - 1) < 0.05);
}
