// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>

#include "qxsort/instrument.hpp"
#include "qxsort/rng.hpp"

namespace qxsort {

/// Exact buffer ratio alpha = num/den in (0, 1].
struct BufferRatio {
    std::uint32_t num = 1;
    std::uint32_t den = 2;

    static constexpr BufferRatio half() noexcept { return {1, 2}; }
    static constexpr BufferRatio one() noexcept { return {1, 1}; }

    [[nodiscard]] constexpr bool valid() const noexcept { return den > 0 && num > 0 && num <= den; }
    /// floor(alpha * m)
    [[nodiscard]] constexpr std::size_t floor_of(std::size_t m) const noexcept {
        return static_cast<std::size_t>((static_cast<unsigned __int128>(m) * num) / den);
    }
    [[nodiscard]] double value() const noexcept { return static_cast<double>(num) / den; }
    friend constexpr bool operator==(BufferRatio, BufferRatio) = default;
};

enum class SamplePolicy : std::uint8_t { PseudoRandomPositions, DeterministicPrefix };

/// Median-of-k pivot sampling with k = 2t + 1.
struct SamplingScheme {
    unsigned t = 0;
    SamplePolicy policy = SamplePolicy::PseudoRandomPositions;
    std::uint64_t seed = 0;

    [[nodiscard]] constexpr std::size_t k() const noexcept { return 2 * static_cast<std::size_t>(t) + 1; }

    static constexpr SamplingScheme random(unsigned t, std::uint64_t seed) noexcept {
        return {t, SamplePolicy::PseudoRandomPositions, seed};
    }
    static constexpr SamplingScheme prefix(unsigned t) noexcept { return {t, SamplePolicy::DeterministicPrefix, 0}; }
};

enum class Side : std::uint8_t { Left, Right };

constexpr Side other(Side s) noexcept { return s == Side::Left ? Side::Right : Side::Left; }

struct PivotChoice {
    std::size_t index = 0;
    std::size_t sample_size = 1;
    Count comparisons = 0;
};

struct PartitionOutcome {
    std::size_t j1 = 0;
    std::size_t j2 = 0;
    std::size_t pivot_pos = 0;
    Side x_side = Side::Right;
    Side recurse_side = Side::Left;
    Count comparisons = 0;
};

/// Moves a sample of k = 2t+1 elements to the front of `segment`, sorts it by
/// Insertionsort and reports the median's index (always t).
template <class T, class Less>
PivotChoice select_pivot(std::span<T> segment, const SamplingScheme &scheme, Rng &rng, Less less) {
    const std::size_t k = scheme.k();
    require(segment.size() >= k, "select_pivot: segment shorter than the sample size");
    if (scheme.policy == SamplePolicy::PseudoRandomPositions) {
        using std::swap;
        for (std::size_t i = 0; i < k; ++i) {
            const auto r = i + static_cast<std::size_t>(uniform_below(rng, segment.size() - i));
            swap(segment[i], segment[r]);
        }
    }
    PivotChoice choice;
    choice.sample_size = k;
    choice.index = scheme.t;
    choice.comparisons = insertion_sort(segment.first(k), less);
    return choice;
}

/// Partitions the n - k non-sample elements around the sample median with one
/// comparison each, then rotates so the segment reads
/// [below-pivot | pivot | above-pivot] with the sample's lower and upper
/// halves adjacent to the pivot.
///
/// Expects the layout select_pivot leaves behind: sorted sample in [0, k),
/// pivot at index t.
template <class T, class Less>
PartitionOutcome partition_around(std::span<T> segment, const PivotChoice &pivot, Less less) {
    const std::size_t n = segment.size();
    const std::size_t k = pivot.sample_size;
    require(k % 2 == 1 && n >= k && pivot.index == k / 2, "partition_around: pivot not prepared by select_pivot");
    const std::size_t t = pivot.index;
    const T &p = segment[t];

    using std::swap;
    Count comparisons = 0;
    // [k, i) < p, [j, n) > p, [i, j) unclassified
    std::size_t i = k;
    std::size_t j = n;
    while (i < j) {
        ++comparisons;
        if (less(segment[i], p)) {
            ++i;
            continue;
        }
        // segment[i] belongs right; find a partner from the right end
        bool found = false;
        while (--j > i) {
            ++comparisons;
            if (!less(p, segment[j])) {
                found = true;
                break;
            }
        }
        if (!found) {
            break;
        }
        swap(segment[i], segment[j]);
        ++i;
    }
    const std::size_t below = i - k;

    // [s_low, p, s_high, L, R] -> [L, s_low, p, s_high, R]
    std::rotate(segment.begin(), segment.begin() + static_cast<std::ptrdiff_t>(k),
                segment.begin() + static_cast<std::ptrdiff_t>(k + below));

    PartitionOutcome out;
    out.j1 = below + t;
    out.j2 = n - 1 - out.j1;
    out.pivot_pos = out.j1;
    out.comparisons = comparisons;
    return out;
}

struct SideAssignment {
    Side x_side;
    Side recurse_side;
};

/// Chooses which segment X sorts. If both segments fit under (n-1)/(1+alpha), X
/// takes the larger one (the right one on a tie); otherwise X takes the
/// smaller one and the larger is recursed on.
constexpr SideAssignment assign_sides(std::size_t j1, std::size_t j2, BufferRatio alpha) {
    require(alpha.valid(), "assign_sides: alpha must lie in (0, 1]");
    using Wide = unsigned __int128;
    const Wide rest = static_cast<Wide>(j1) + j2;  // n - 1
    auto fits = [&](std::size_t j) { return static_cast<Wide>(j) * (alpha.num + alpha.den) <= rest * alpha.den; };
    const bool recurse_left = (fits(j1) && fits(j2)) ? (j1 <= j2) : !fits(j1);
    return recurse_left ? SideAssignment{Side::Right, Side::Left} : SideAssignment{Side::Left, Side::Right};
}

/// An "X" for QuickXsort: sorts a segment using a disjoint buffer of at least
/// floor(alpha * m) elements that it touches only by swaps, and reports the
/// comparisons it spent. `side` says where the segment lies relative to the
/// pivot (Left: all its elements are below every buffer element).
template <class X, class T, class Cmp>
concept BufferedSorter = requires(X &x, std::span<T> seg, std::span<T> buf, Side side, const Cmp &cmp) {
    { x.alpha() } -> std::convertible_to<BufferRatio>;
    { x.sort(seg, buf, side, cmp) } -> std::convertible_to<Count>;
};

struct RoundRecord {
    std::size_t round = 0;
    std::size_t n = 0;
    std::size_t k = 0;
    Count sample_comparisons = 0;
    PartitionOutcome outcome;
    std::size_t x_size = 0;
    std::size_t buffer_size = 0;
    Count x_comparisons = 0;
};

struct EngineOptions {
    /// Segments of size <= max(base_threshold, k-1) go to Insertionsort.
    /// Unset means max(k, 16).
    std::optional<std::size_t> base_threshold;
    std::function<void(const RoundRecord &)> on_round;

    [[nodiscard]] std::size_t cutoff(std::size_t k) const noexcept {
        const std::size_t base = base_threshold.value_or(std::max<std::size_t>(k, 16));
        return std::max(base, k - 1);
    }
};

/// Sorts `a` ascending with QuickXsort: partition around a median-of-k pivot,
/// sort one segment with `x` while the other serves as its buffer, then
/// continue with the other segment. The loop replaces the single recursive call.
template <class T, class X, class Less = std::less<>>
    requires BufferedSorter<X, T, CountingLess<Less>>
RunStats quickxsort(std::span<T> a, const SamplingScheme &scheme, X &x, Rng &rng, const EngineOptions &options = {},
                    Less less = {}) {
    Tally tally;
    const CountingLess<Less> base_cmp(less, tally, Channel::Base);
    const auto sample_cmp = base_cmp.on(Channel::Sample);
    const auto partition_cmp = base_cmp.on(Channel::Partition);
    const auto x_cmp = base_cmp.on(Channel::X);

    const BufferRatio alpha = x.alpha();
    const std::size_t k = scheme.k();
    const std::size_t cutoff = options.cutoff(k);

    std::span<T> seg = a;
    std::size_t rounds = 0;
    while (seg.size() > cutoff) {
        ++rounds;
        const Count sample_before = tally[Channel::Sample];
        const PivotChoice pivot = select_pivot(seg, scheme, rng, sample_cmp);
        PartitionOutcome outcome = partition_around(seg, pivot, partition_cmp);
        const auto sides = assign_sides(outcome.j1, outcome.j2, alpha);
        outcome.x_side = sides.x_side;
        outcome.recurse_side = sides.recurse_side;

        std::span<T> left = seg.first(outcome.j1);
        std::span<T> right = seg.subspan(outcome.pivot_pos + 1);
        std::span<T> x_seg = outcome.x_side == Side::Left ? left : right;
        std::span<T> buffer = outcome.x_side == Side::Left ? right : left;

        const Count x_before = tally[Channel::X];
        x.sort(x_seg, buffer, outcome.x_side, x_cmp);

        if (options.on_round) {
            RoundRecord rec;
            rec.round = rounds;
            rec.n = seg.size();
            rec.k = k;
            rec.sample_comparisons = tally[Channel::Sample] - sample_before;
            rec.outcome = outcome;
            rec.x_size = x_seg.size();
            rec.buffer_size = buffer.size();
            rec.x_comparisons = tally[Channel::X] - x_before;
            options.on_round(rec);
        }
        seg = buffer;
    }
    insertion_sort(seg, base_cmp);
    return RunStats::from(tally, rounds);
}

/// Convenience overload drawing pivot samples from a generator seeded with scheme.seed.
template <class T, class X, class Less = std::less<>>
    requires BufferedSorter<X, T, CountingLess<Less>>
RunStats quickxsort(std::span<T> a, const SamplingScheme &scheme, X &x, const EngineOptions &options = {},
                    Less less = {}) {
    Rng rng(scheme.seed);
    return quickxsort(a, scheme, x, rng, options, std::move(less));
}

}  // namespace qxsort
