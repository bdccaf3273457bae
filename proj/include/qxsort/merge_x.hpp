// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>

#include "qxsort/engine.hpp"
#include "qxsort/instrument.hpp"

namespace qxsort {

enum class MergeVariant : std::uint8_t { TopDown, BottomUp };
enum class AlphaMode : std::uint8_t { Half, One };

struct MergeXConfig {
    MergeVariant variant = MergeVariant::TopDown;
    AlphaMode alpha_mode = AlphaMode::Half;

    [[nodiscard]] constexpr BufferRatio alpha() const noexcept {
        return alpha_mode == AlphaMode::Half ? BufferRatio::half() : BufferRatio::one();
    }
};

/// Merges the sorted runs range[0, mid) and range[mid, size) in place, parking
/// the shorter run in `buffer`. Elements move only by swaps, so `buffer` ends
/// up holding its original elements in some order. Ties go to the first run.
template <class T, class Less>
Count merge_with_buffer(std::span<T> range, std::size_t mid, std::span<T> buffer, Less less) {
    require(mid <= range.size(), "merge_with_buffer: split point outside the range");
    const std::size_t n1 = mid;
    const std::size_t n2 = range.size() - mid;
    require(std::min(n1, n2) <= buffer.size(), "merge_with_buffer: buffer smaller than the shorter run");
    if (n1 == 0 || n2 == 0) {
        return 0;
    }

    using std::swap;
    Count comparisons = 0;
    if (n1 <= n2) {
        std::swap_ranges(range.begin(), range.begin() + static_cast<std::ptrdiff_t>(n1), buffer.begin());
        std::size_t i1 = 0;   // next of run 1, in buffer
        std::size_t i2 = n1;  // next of run 2, in place
        std::size_t out = 0;
        while (i1 < n1 && i2 < range.size()) {
            ++comparisons;
            if (!less(range[i2], buffer[i1])) {
                swap(range[out++], buffer[i1++]);
            } else {
                swap(range[out++], range[i2++]);
            }
        }
        while (i1 < n1) {
            swap(range[out++], buffer[i1++]);
        }
    } else {
        // mirror image: run 2 to the buffer, fill from the right end
        std::swap_ranges(range.begin() + static_cast<std::ptrdiff_t>(n1), range.end(), buffer.begin());
        std::size_t i1 = n1;  // one past next of run 1, in place
        std::size_t i2 = n2;  // one past next of run 2, in buffer
        std::size_t out = range.size();
        while (i1 > 0 && i2 > 0) {
            ++comparisons;
            if (less(buffer[i2 - 1], range[i1 - 1])) {
                swap(range[--out], range[--i1]);
            } else {
                swap(range[--out], buffer[--i2]);
            }
        }
        while (i2 > 0) {
            swap(range[--out], buffer[--i2]);
        }
    }
    return comparisons;
}

namespace detail {

template <class T, class Less>
Count top_down(std::span<T> seg, std::span<T> buffer, Less &less) {
    if (seg.size() < 2) {
        return 0;
    }
    const std::size_t half = seg.size() / 2;
    Count c = top_down(seg.first(half), buffer, less);
    c += top_down(seg.subspan(half), buffer, less);
    return c + merge_with_buffer(seg, half, buffer, less);
}

template <class T, class Less>
Count bottom_up(std::span<T> seg, std::span<T> buffer, Less &less) {
    Count c = 0;
    const std::size_t m = seg.size();
    for (std::size_t width = 1; width < m; width *= 2) {
        for (std::size_t lo = 0; lo + width < m; lo += 2 * width) {
            const std::size_t hi = std::min(lo + 2 * width, m);
            c += merge_with_buffer(seg.subspan(lo, hi - lo), width, buffer, less);
        }
    }
    return c;
}

}  // namespace detail

/// Mergesort on `segment` with swap-only use of `buffer`.
template <class T, class Less>
Count sort_segment(std::span<T> segment, std::span<T> buffer, const MergeXConfig &cfg, Less less) {
    const std::size_t need = cfg.alpha().floor_of(segment.size());
    require(buffer.size() >= need, "sort_segment: buffer smaller than floor(alpha * m)");
    return cfg.variant == MergeVariant::TopDown ? detail::top_down(segment, buffer, less)
                                                : detail::bottom_up(segment, buffer, less);
}

/// Mergesort packaged as a QuickXsort X.
class MergeSorter {
public:
    MergeSorter() = default;
    explicit MergeSorter(MergeXConfig cfg) : cfg_(cfg) {}

    [[nodiscard]] BufferRatio alpha() const noexcept { return cfg_.alpha(); }
    [[nodiscard]] const MergeXConfig &config() const noexcept { return cfg_; }

    template <class T, class Less>
    Count sort(std::span<T> segment, std::span<T> buffer, Side, const Less &less) const {
        return sort_segment(segment, buffer, cfg_, less);
    }

private:
    MergeXConfig cfg_;
};

}  // namespace qxsort
