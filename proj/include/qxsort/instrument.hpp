// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qxsort {

/// Raised when a caller breaks an operation's precondition.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

constexpr void require(bool condition, const char *what) {
    if (!condition) {
        throw ContractViolation(what);
    }
}

using Count = std::uint64_t;

/// Element carrying an ordering key plus an identity tag for permutation checks.
/// Deliberately has no comparison operators: ordering goes through KeyLess or
/// counting_compare only.
struct CountedElement {
    std::int64_t key = 0;
    std::uint64_t id = 0;
};

struct KeyLess {
    bool operator()(const CountedElement &a, const CountedElement &b) const noexcept {
        return a.key < b.key;
    }
};

enum class Channel : std::uint8_t { Sample, Partition, X, Base };
inline constexpr std::size_t kChannelCount = 4;

const char *channel_name(Channel c) noexcept;

/// Per-run comparison tally, split by the phase that spent the comparisons.
class Tally {
public:
    void bump(Channel c, Count by = 1) noexcept { counts_[static_cast<std::size_t>(c)] += by; }
    [[nodiscard]] Count operator[](Channel c) const noexcept { return counts_[static_cast<std::size_t>(c)]; }
    [[nodiscard]] Count total() const noexcept {
        Count sum = 0;
        for (Count v : counts_) {
            sum += v;
        }
        return sum;
    }

private:
    std::array<Count, kChannelCount> counts_{};
};

/// Three-way key comparison that charges exactly one comparison to `tally`.
inline std::strong_ordering counting_compare(const CountedElement &a, const CountedElement &b, Tally &tally,
                                             Channel channel) noexcept {
    tally.bump(channel);
    return a.key <=> b.key;
}

/// Wraps a strict-weak-order predicate and charges every call to one channel of a Tally.
///
/// `charge()` books a comparison that the algorithm resolves structurally
/// (external Heapsort's sentinel tests) without touching any element.
template <class Less>
class CountingLess {
public:
    CountingLess(Less less, Tally &tally, Channel channel) : less_(std::move(less)), tally_(&tally), channel_(channel) {}

    template <class T>
    bool operator()(const T &a, const T &b) const {
        tally_->bump(channel_);
        return less_(a, b);
    }

    void charge(Count by = 1) const noexcept { tally_->bump(channel_, by); }

    [[nodiscard]] CountingLess on(Channel channel) const { return CountingLess(less_, *tally_, channel); }
    [[nodiscard]] Channel channel() const noexcept { return channel_; }
    [[nodiscard]] const Tally &tally() const noexcept { return *tally_; }

private:
    Less less_;
    Tally *tally_;
    Channel channel_;
};

/// Books a structurally resolved comparison if the predicate supports charging.
template <class Less>
void charge_structural(const Less &less) {
    if constexpr (requires { less.charge(); }) {
        less.charge();
    }
}

struct RunStats {
    Count comparisons = 0;
    Count sample_comparisons = 0;
    Count partition_comparisons = 0;
    Count x_comparisons = 0;
    Count base_case_comparisons = 0;
    std::size_t max_recursion_depth = 0;

    [[nodiscard]] Count channel_sum() const noexcept {
        return sample_comparisons + partition_comparisons + x_comparisons + base_case_comparisons;
    }

    static RunStats from(const Tally &tally, std::size_t depth);
};

/// Straight insertion sort; on sorted input it spends exactly n-1 comparisons.
template <class T, class Less>
Count insertion_sort(std::span<T> a, Less less) {
    Count comparisons = 0;
    for (std::size_t i = 1; i < a.size(); ++i) {
        T value = std::move(a[i]);
        std::size_t j = i;
        while (j > 0) {
            ++comparisons;
            if (!less(value, a[j - 1])) {
                break;
            }
            a[j] = std::move(a[j - 1]);
            --j;
        }
        a[j] = std::move(value);
    }
    return comparisons;
}

enum class Violation : std::uint8_t { NotSorted, NotPermutation, TallyInconsistent };

const char *violation_name(Violation v) noexcept;

struct Verdict {
    std::vector<Violation> violations;

    [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
    [[nodiscard]] bool has(Violation v) const noexcept;
    [[nodiscard]] std::string describe() const;
};

/// Checks sortedness by key, id-multiset equality with `before`, and that the
/// channel sub-tallies add up to the total.
Verdict verify_run(std::span<const CountedElement> before, std::span<const CountedElement> after,
                   const RunStats &stats);

}  // namespace qxsort
