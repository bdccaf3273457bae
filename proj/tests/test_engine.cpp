// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "qxsort/algorithms.hpp"
#include "qxsort/engine.hpp"
#include "qxsort/oracle.hpp"
#include "qxsort/rng.hpp"

using namespace qxsort;

namespace {

std::vector<CountedElement> permutation(std::size_t n, std::uint64_t seed) {
    std::vector<CountedElement> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = {static_cast<std::int64_t>(i), i};
    }
    Rng rng(seed);
    shuffle(std::span<CountedElement>(v), rng);
    return v;
}

bool sorted_by_key(const std::vector<CountedElement> &v) {
    return std::is_sorted(v.begin(), v.end(), KeyLess{});
}

}  // namespace

TEST_CASE("BufferRatio") {
    CHECK(BufferRatio::half().floor_of(7) == 3);
    CHECK(BufferRatio::one().floor_of(7) == 7);
    CHECK(BufferRatio{2, 3}.valid());
    CHECK_FALSE(BufferRatio{3, 2}.valid());
    CHECK_FALSE(BufferRatio{0, 1}.valid());
}

TEST_CASE("select_pivot needs at least k elements") {
    auto v = permutation(2, 1);
    Rng rng(1);
    CHECK_THROWS_AS(select_pivot(std::span<CountedElement>(v), SamplingScheme::prefix(1), rng, KeyLess{}),
                    ContractViolation);
}

TEST_CASE("median-of-3 sample sort averages 8/3 comparisons") {
    std::vector<std::int64_t> keys{0, 1, 2};
    Count total = 0;
    unsigned count = 0;
    do {
        std::vector<CountedElement> v;
        for (std::size_t i = 0; i < 3; ++i) {
            v.push_back({keys[i], i});
        }
        v.push_back({10, 3});
        Rng rng(0);
        Tally tally;
        const PivotChoice p = select_pivot(std::span<CountedElement>(v), SamplingScheme::prefix(1), rng,
                                           CountingLess<KeyLess>(KeyLess{}, tally, Channel::Sample));
        CHECK(p.index == 1);
        CHECK(p.sample_size == 3);
        CHECK(v[1].key == 1);
        total += tally.total();
        ++count;
    } while (std::next_permutation(keys.begin(), keys.end()));
    CHECK(theory::rational(total, count) == theory::rational(8, 3));
}

TEST_CASE("random sample positions pick the median of a sampled subset") {
    for (unsigned t : {0u, 1u, 2u, 5u}) {
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            auto v = permutation(40, seed);
            const auto before = v;
            Rng rng(seed + 100);
            SamplingScheme scheme = SamplingScheme::random(t, seed);
            const PivotChoice p = select_pivot(std::span<CountedElement>(v), scheme, rng, KeyLess{});
            CHECK(p.index == t);
            CHECK(std::is_sorted(v.begin(), v.begin() + static_cast<long>(scheme.k()), KeyLess{}));
            CHECK(std::is_permutation(v.begin(), v.end(), before.begin(),
                                      [](auto &a, auto &b) { return a.id == b.id; }));
        }
    }
}

TEST_CASE("partition costs exactly n-k and splits around the pivot") {
    for (unsigned t : {0u, 1u, 3u}) {
        for (std::size_t n : {std::size_t(2 * t + 1), std::size_t(2 * t + 2), std::size_t(20), std::size_t(257)}) {
            for (std::uint64_t seed = 0; seed < 40; ++seed) {
                auto v = permutation(n, seed * 31 + n);
                Rng rng(seed);
                std::span<CountedElement> seg(v);
                const PivotChoice pivot = select_pivot(seg, SamplingScheme::random(t, seed), rng, KeyLess{});
                Tally tally;
                const PartitionOutcome out =
                    partition_around(seg, pivot, CountingLess<KeyLess>(KeyLess{}, tally, Channel::Partition));
                CHECK(tally.total() == n - (2 * t + 1));
                CHECK(out.comparisons == n - (2 * t + 1));
                CHECK(out.j1 + out.j2 + 1 == n);
                CHECK(out.pivot_pos == out.j1);
                const auto p = v[out.pivot_pos].key;
                CHECK(p == static_cast<std::int64_t>(out.j1));
                for (std::size_t i = 0; i < out.j1; ++i) {
                    CHECK(v[i].key < p);
                }
                for (std::size_t i = out.pivot_pos + 1; i < n; ++i) {
                    CHECK(v[i].key > p);
                }
                CHECK(out.j1 >= t);
                CHECK(out.j2 >= t);
            }
        }
    }
}

TEST_CASE("assign_sides follows the buffer-fit rule") {
    const auto half = BufferRatio::half();
    // n-1 = 10, threshold 10/1.5 = 6.67
    CHECK(assign_sides(3, 7, half).x_side == Side::Left);
    CHECK(assign_sides(7, 3, half).x_side == Side::Right);
    CHECK(assign_sides(6, 4, half).x_side == Side::Left);
    CHECK(assign_sides(4, 6, half).x_side == Side::Right);
    CHECK(assign_sides(5, 5, half).x_side == Side::Right);
    CHECK(assign_sides(5, 5, half).recurse_side == Side::Left);
    const auto one = BufferRatio::one();
    CHECK(assign_sides(4, 6, one).x_side == Side::Left);
    CHECK(assign_sides(6, 4, one).x_side == Side::Right);
    CHECK(assign_sides(5, 5, one).x_side == Side::Right);
    CHECK(assign_sides(0, 9, one).x_side == Side::Left);
    CHECK(assign_sides(0, 0, one).x_side == Side::Right);
}

TEST_CASE("assign_sides agrees with the oracle's indicators") {
    for (auto alpha : {BufferRatio::half(), BufferRatio::one(), BufferRatio{1, 3}, BufferRatio{2, 3}}) {
        const auto q = theory::rational(alpha.num, alpha.den);
        for (unsigned n = 1; n < 60; ++n) {
            for (unsigned j = 0; j < n; ++j) {
                const unsigned j2 = n - 1 - j;
                const auto s = assign_sides(j, j2, alpha);
                CHECK((s.recurse_side == Side::Left) == oracle::recurse_on_first(j, n, q));
                CHECK((s.recurse_side == Side::Right) == oracle::recurse_on_second(j2, n, q));
                const std::size_t x_size = s.x_side == Side::Left ? j : j2;
                const std::size_t buf = s.x_side == Side::Left ? j2 : j;
                CHECK(alpha.floor_of(x_size) <= buf);
            }
        }
    }
}

TEST_CASE("EngineOptions cutoff") {
    EngineOptions o;
    CHECK(o.cutoff(1) == 16);
    CHECK(o.cutoff(21) == 21);
    o.base_threshold = 0;
    CHECK(o.cutoff(1) == 0);
    CHECK(o.cutoff(7) == 6);
}

TEST_CASE("quickxsort sorts and reports every round") {
    for (Algorithm alg : kAllAlgorithms) {
        for (unsigned t : {0u, 1u, 2u}) {
            auto v = permutation(3000, 7 + t);
            const auto before = v;
            std::size_t rounds = 0;
            Count partition_total = 0;
            EngineOptions options;
            options.on_round = [&](const RoundRecord &r) {
                ++rounds;
                CHECK(r.outcome.comparisons == r.n - r.k);
                CHECK(r.x_size + r.buffer_size + 1 == r.n);
                CHECK(algorithm_alpha(alg).floor_of(r.x_size) <= r.buffer_size);
                partition_total += r.outcome.comparisons;
            };
            Rng rng(t);
            const RunStats s = run_algorithm(alg, v, SamplingScheme::random(t, 3), rng, options);
            CHECK(sorted_by_key(v));
            CHECK(verify_run(before, v, s).ok());
            CHECK(s.max_recursion_depth == rounds);
            CHECK(s.partition_comparisons == partition_total);
            CHECK(rounds > 0);
        }
    }
}

TEST_CASE("small inputs go straight to Insertionsort") {
    auto v = permutation(16, 4);
    Rng rng(0);
    const RunStats s = run_algorithm(Algorithm::QuickMergesortTD, v, SamplingScheme::random(0, 1), rng);
    CHECK(s.max_recursion_depth == 0);
    CHECK(s.comparisons == s.base_case_comparisons);
    CHECK(sorted_by_key(v));
    std::vector<CountedElement> empty;
    CHECK(run_algorithm(Algorithm::QuickHeapsort, empty, SamplingScheme::random(0, 1), rng).comparisons == 0);
}

TEST_CASE("runs are reproducible from the seed") {
    auto a = permutation(5000, 11);
    auto b = a;
    Rng r1(5);
    Rng r2(5);
    const auto s1 = run_algorithm(Algorithm::QuickHeapsort, a, SamplingScheme::random(1, 5), r1);
    const auto s2 = run_algorithm(Algorithm::QuickHeapsort, b, SamplingScheme::random(1, 5), r2);
    CHECK(s1.comparisons == s2.comparisons);
    CHECK(s1.max_recursion_depth == s2.max_recursion_depth);
}

TEST_CASE("duplicate keys are sorted") {
    for (Algorithm alg : kAllAlgorithms) {
        std::vector<CountedElement> v(2000);
        Rng rng(3);
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] = {static_cast<std::int64_t>(uniform_below(rng, 5)), i};
        }
        const auto before = v;
        const auto s = run_algorithm(alg, v, SamplingScheme::random(1, 9), rng);
        CHECK(verify_run(before, v, s).ok());
    }
}
