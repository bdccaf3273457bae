// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <vector>

#include "qxsort/algorithms.hpp"
#include "qxsort/merge_x.hpp"
#include "qxsort/oracle.hpp"
#include "qxsort/rng.hpp"

using namespace qxsort;

namespace {

std::vector<CountedElement> keyed(std::initializer_list<std::int64_t> keys, std::uint64_t first_id = 0) {
    std::vector<CountedElement> v;
    for (auto k : keys) {
        v.push_back({k, first_id++});
    }
    return v;
}

std::vector<std::uint64_t> ids(const std::vector<CountedElement> &v) {
    std::vector<std::uint64_t> out;
    for (const auto &e : v) {
        out.push_back(e.id);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::int64_t> keys(const std::vector<CountedElement> &v) {
    std::vector<std::int64_t> out;
    for (const auto &e : v) {
        out.push_back(e.key);
    }
    return out;
}

Count merge(std::vector<CountedElement> &range, std::size_t mid, std::vector<CountedElement> &buffer) {
    return merge_with_buffer(std::span<CountedElement>(range), mid, std::span<CountedElement>(buffer), KeyLess{});
}

}  // namespace

TEST_CASE("merge examples") {
    auto buffer = keyed({100, 101}, 50);
    const auto buffer_ids = ids(buffer);

    auto r1 = keyed({1, 3, 2, 4});
    CHECK(merge(r1, 2, buffer) == 3);
    CHECK(keys(r1) == std::vector<std::int64_t>{1, 2, 3, 4});
    CHECK(ids(buffer) == buffer_ids);

    auto r2 = keyed({2, 4});
    CHECK(merge(r2, 0, buffer) == 0);
    CHECK(keys(r2) == std::vector<std::int64_t>{2, 4});

    auto r3 = keyed({1, 2, 3, 4});
    CHECK(merge(r3, 2, buffer) == 2);
    CHECK(keys(r3) == std::vector<std::int64_t>{1, 2, 3, 4});
    CHECK(ids(buffer) == buffer_ids);
}

TEST_CASE("merge with the second run shorter") {
    auto buffer = keyed({-5}, 90);
    auto r = keyed({1, 3, 5, 2});
    CHECK(merge(r, 3, buffer) == 3);
    CHECK(keys(r) == std::vector<std::int64_t>{1, 2, 3, 5});
    CHECK(buffer[0].id == 90);
}

TEST_CASE("merge rejects a short buffer") {
    std::vector<CountedElement> buffer = keyed({0});
    auto r = keyed({1, 3, 2, 4});
    CHECK_THROWS_AS(merge(r, 2, buffer), ContractViolation);
}

TEST_CASE("merge matches a brute-force merge on all small run splits") {
    Rng rng(17);
    for (int round = 0; round < 2000; ++round) {
        const std::size_t n = 1 + uniform_below(rng, 12);
        const std::size_t mid = uniform_below(rng, n + 1);
        std::vector<CountedElement> r(n);
        for (std::size_t i = 0; i < n; ++i) {
            r[i] = {static_cast<std::int64_t>(uniform_below(rng, 6)), i};
        }
        std::sort(r.begin(), r.begin() + static_cast<long>(mid), KeyLess{});
        std::sort(r.begin() + static_cast<long>(mid), r.end(), KeyLess{});
        // stable merge with ties to the first run, scanning from the left when
        // the first run is not longer and from the right otherwise
        std::vector<CountedElement> expect(n);
        Count expect_cmp = 0;
        if (mid <= n - mid) {
            std::size_t i = 0;
            std::size_t j = mid;
            std::size_t out = 0;
            while (i < mid && j < n) {
                ++expect_cmp;
                expect[out++] = r[j].key < r[i].key ? r[j++] : r[i++];
            }
            while (i < mid) {
                expect[out++] = r[i++];
            }
            while (j < n) {
                expect[out++] = r[j++];
            }
        } else {
            std::size_t i = mid;
            std::size_t j = n;
            std::size_t out = n;
            while (i > 0 && j > mid) {
                ++expect_cmp;
                expect[--out] = r[j - 1].key < r[i - 1].key ? r[--i] : r[--j];
            }
            while (j > mid) {
                expect[--out] = r[--j];
            }
            while (i > 0) {
                expect[--out] = r[--i];
            }
        }

        auto buffer = keyed({-1, -2, -3, -4, -5, -6}, 1000);
        const auto buffer_ids = ids(buffer);
        const Count got = merge(r, mid, buffer);
        CHECK(got == expect_cmp);
        for (std::size_t p = 0; p < n; ++p) {
            CHECK(r[p].id == expect[p].id);
        }
        CHECK(ids(buffer) == buffer_ids);
    }
}

TEST_CASE("sort_segment needs floor(alpha m) buffer cells") {
    Rng rng(5);
    for (MergeVariant variant : {MergeVariant::TopDown, MergeVariant::BottomUp}) {
        for (std::size_t m : {1u, 2u, 3u, 7u, 64u, 100u, 1001u}) {
            std::vector<CountedElement> seg(m);
            for (std::size_t i = 0; i < m; ++i) {
                seg[i] = {static_cast<std::int64_t>(i), i};
            }
            shuffle(std::span<CountedElement>(seg), rng);
            std::vector<CountedElement> buffer(m / 2);
            for (std::size_t i = 0; i < buffer.size(); ++i) {
                buffer[i] = {-1 - static_cast<std::int64_t>(i), 5000 + i};
            }
            const auto buffer_ids = ids(buffer);
            const MergeXConfig cfg{variant, AlphaMode::Half};
            sort_segment(std::span<CountedElement>(seg), std::span<CountedElement>(buffer), cfg, KeyLess{});
            CHECK(std::is_sorted(seg.begin(), seg.end(), KeyLess{}));
            CHECK(ids(buffer) == buffer_ids);
            if (m >= 2) {
                std::vector<CountedElement> short_buffer(m / 2 - 1);
                CHECK_THROWS_AS(sort_segment(std::span<CountedElement>(seg), std::span<CountedElement>(short_buffer),
                                             cfg, KeyLess{}),
                                ContractViolation);
            }
        }
    }
}

TEST_CASE("Mergesort X small-size costs") {
    auto one = keyed({4});
    CHECK(run_x_alone(Algorithm::QuickMergesortTD, one) == 0);
    for (auto pair : {std::vector<std::int64_t>{1, 2}, std::vector<std::int64_t>{2, 1}}) {
        std::vector<CountedElement> v{{pair[0], 0}, {pair[1], 1}};
        CHECK(run_x_alone(Algorithm::QuickMergesortTD, v) == 1);
    }
    CHECK(oracle::exhaustive_x_avg(4, Algorithm::QuickMergesortTD) == theory::rational(14, 3));
}

TEST_CASE("enumerated Mergesort averages equal the exact tables") {
    const auto td = oracle::mergesort_avg_table(8, MergeVariant::TopDown);
    const auto bu = oracle::mergesort_avg_table(8, MergeVariant::BottomUp);
    for (unsigned m = 0; m <= 8; ++m) {
        CHECK(oracle::exhaustive_x_avg(m, Algorithm::QuickMergesortTD) == td[m]);
        CHECK(oracle::exhaustive_x_avg(m, Algorithm::QuickMergesortBU) == bu[m]);
        CHECK(oracle::exhaustive_x_avg(m, Algorithm::QuickMergesortAlpha1) == td[m]);
    }
    CHECK(td[4] == theory::rational(14, 3));
    CHECK(td[4] == bu[4]);
    CHECK(td[3] == theory::rational(8, 3));
}

TEST_CASE("Mergesort is stable") {
    Rng rng(2);
    std::vector<CountedElement> seg(500);
    for (std::size_t i = 0; i < seg.size(); ++i) {
        seg[i] = {static_cast<std::int64_t>(uniform_below(rng, 10)), i};
    }
    std::vector<CountedElement> buffer(250, CountedElement{-1, 9999});
    sort_segment(std::span<CountedElement>(seg), std::span<CountedElement>(buffer),
                 MergeXConfig{MergeVariant::TopDown, AlphaMode::Half}, KeyLess{});
    for (std::size_t i = 0; i + 1 < seg.size(); ++i) {
        CHECK((seg[i].key < seg[i + 1].key || (seg[i].key == seg[i + 1].key && seg[i].id < seg[i + 1].id)));
    }
}
