// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qxsort/engine.hpp"
#include "qxsort/instrument.hpp"

namespace qxsort {

enum class Polarity : std::uint8_t { MaxHeap, MinHeap };

/// How a sift step against a sentinel slot is booked.
///
/// Charged: the step costs one comparison, exactly as if the slot held a real
/// -inf (+inf for MinHeap) and was compared; the gap always travels to a leaf.
/// Free: sentinel steps cost nothing and the gap stops once no live child is left.
enum class SentinelCost : std::uint8_t { Charged, Free };

namespace detail {

template <class Less>
struct HeapOrder {
    Polarity polarity;
    const Less *less;

    /// true if `a` belongs above `b`
    template <class T>
    bool prefers(const T &a, const T &b) const {
        return polarity == Polarity::MaxHeap ? (*less)(b, a) : (*less)(a, b);
    }
};

}  // namespace detail

/// Floyd's bottom-up heap construction; each sift step spends one comparison
/// between the children and one between the winner and the parent.
template <class T, class Less>
Count build_heap(std::span<T> segment, Polarity polarity, Less less) {
    const detail::HeapOrder<Less> order{polarity, &less};
    const std::size_t m = segment.size();
    Count comparisons = 0;
    using std::swap;
    for (std::size_t root = m / 2; root-- > 0;) {
        std::size_t i = root;
        for (;;) {
            const std::size_t l = 2 * i + 1;
            if (l >= m) {
                break;
            }
            std::size_t c = l;
            if (l + 1 < m) {
                ++comparisons;
                if (order.prefers(segment[l + 1], segment[l])) {
                    c = l + 1;
                }
            }
            ++comparisons;
            if (!order.prefers(segment[c], segment[i])) {
                break;
            }
            swap(segment[c], segment[i]);
            i = c;
        }
    }
    return comparisons;
}

/// A heap laid out in an array slice whose vacated slots hold swapped-in
/// buffer elements, flagged in `sentinel` and never compared.
template <class T>
class HeapArena {
public:
    HeapArena(std::span<T> slots, Polarity polarity, SentinelCost cost = SentinelCost::Charged)
        : slots_(slots), sentinel_(slots.size(), 0), live_(slots.size()), polarity_(polarity), cost_(cost) {}

    [[nodiscard]] std::span<T> slots() const noexcept { return slots_; }
    [[nodiscard]] std::size_t live_count() const noexcept { return live_; }
    [[nodiscard]] std::size_t initial_size() const noexcept { return slots_.size(); }
    [[nodiscard]] bool is_sentinel(std::size_t i) const noexcept { return sentinel_[i] != 0; }
    [[nodiscard]] Polarity polarity() const noexcept { return polarity_; }
    [[nodiscard]] SentinelCost sentinel_cost() const noexcept { return cost_; }

    /// Removes the top into `incoming`, whose previous content takes the
    /// vacated leaf as a sentinel. Returns the comparisons booked.
    template <class Less>
    Count delete_top(T &incoming, Less less);

private:
    void lift(std::size_t gap, std::size_t child) {
        using std::swap;
        swap(slots_[gap], slots_[child]);
        std::swap(sentinel_[gap], sentinel_[child]);
    }

    std::span<T> slots_;
    std::vector<std::uint8_t> sentinel_;
    std::size_t live_;
    Polarity polarity_;
    SentinelCost cost_;
};

template <class T>
template <class Less>
Count HeapArena<T>::delete_top(T &incoming, Less less) {
    require(live_ > 0, "delete_top: heap is empty");
    const detail::HeapOrder<Less> order{polarity_, &less};
    const bool charged = cost_ == SentinelCost::Charged;
    const std::size_t m = slots_.size();
    Count comparisons = 0;

    // The old top rides down the path by swaps; each step lifts a child into the gap.
    std::size_t gap = 0;
    for (;;) {
        const std::size_t l = 2 * gap + 1;
        if (l >= m) {
            break;
        }
        const std::size_t r = l + 1;
        const bool l_live = sentinel_[l] == 0;
        if (r >= m) {
            if (!l_live && !charged) {
                break;
            }
            lift(gap, l);
            gap = l;
            continue;
        }
        const bool r_live = sentinel_[r] == 0;
        std::size_t c;
        if (l_live && r_live) {
            ++comparisons;
            c = order.prefers(slots_[r], slots_[l]) ? r : l;
        } else if (l_live || r_live) {
            if (charged) {
                ++comparisons;
                charge_structural(less);
            }
            c = l_live ? l : r;
        } else {
            if (!charged) {
                break;
            }
            ++comparisons;
            charge_structural(less);
            c = l;
        }
        lift(gap, c);
        gap = c;
    }

    using std::swap;
    swap(slots_[gap], incoming);
    sentinel_[gap] = 1;
    --live_;
    return comparisons;
}

/// Free-function form of HeapArena::delete_top.
template <class T, class Less>
Count delete_top(HeapArena<T> &arena, T &incoming, Less less) {
    return arena.delete_top(incoming, std::move(less));
}

/// Heapsort with an output buffer. Requires |buffer| >= |segment| and every
/// buffer element to lie beyond the segment in heap order: below it for
/// MaxHeap, above it for MinHeap. The sorted run is first collected in the
/// buffer cells nearest its own end of the order (last cells for MaxHeap,
/// first cells for MinHeap) and then block-swapped back into `segment`.
template <class T, class Less>
Count external_heapsort(std::span<T> segment, std::span<T> buffer, Polarity polarity, Less less,
                        SentinelCost cost = SentinelCost::Charged) {
    const std::size_t m = segment.size();
    require(buffer.size() >= m, "external_heapsort: buffer smaller than the segment");
    if (m == 0) {
        return 0;
    }
    Count comparisons = build_heap(segment, polarity, less);
    HeapArena<T> arena(segment, polarity, cost);
    if (polarity == Polarity::MaxHeap) {
        std::span<T> out = buffer.last(m);
        for (std::size_t r = m; r-- > 0;) {
            comparisons += arena.delete_top(out[r], less);
        }
        std::swap_ranges(segment.begin(), segment.end(), out.begin());
    } else {
        std::span<T> out = buffer.first(m);
        for (std::size_t r = 0; r < m; ++r) {
            comparisons += arena.delete_top(out[r], less);
        }
        std::swap_ranges(segment.begin(), segment.end(), out.begin());
    }
    return comparisons;
}

/// Sort-down cost model of a fully charged external Heapsort:
/// m(floor(lg m) - 1) + 2(m - 2^floor(lg m)).
constexpr Count sort_down_reference(std::size_t m) noexcept {
    if (m < 2) {
        return 0;
    }
    const std::size_t lg = std::bit_width(m) - 1;
    return static_cast<Count>(m * (lg - 1) + 2 * (m - (std::size_t{1} << lg)));
}

/// External Heapsort packaged as a QuickXsort X (alpha = 1). A segment right of
/// the pivot is sorted with a MaxHeap against the lower buffer, a left segment
/// with the mirrored MinHeap.
class HeapSorter {
public:
    HeapSorter() = default;
    explicit HeapSorter(SentinelCost cost) : cost_(cost) {}

    [[nodiscard]] static constexpr BufferRatio alpha() noexcept { return BufferRatio::one(); }
    [[nodiscard]] SentinelCost sentinel_cost() const noexcept { return cost_; }

    template <class T, class Less>
    Count sort(std::span<T> segment, std::span<T> buffer, Side side, const Less &less) const {
        const Polarity polarity = side == Side::Right ? Polarity::MaxHeap : Polarity::MinHeap;
        return external_heapsort(segment, buffer, polarity, less, cost_);
    }

private:
    SentinelCost cost_ = SentinelCost::Charged;
};

}  // namespace qxsort
