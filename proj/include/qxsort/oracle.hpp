// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <boost/multiprecision/float128.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qxsort/algorithms.hpp"
#include "qxsort/merge_x.hpp"
#include "qxsort/theory.hpp"

namespace qxsort::oracle {

using theory::ExactRational;

/// 113-bit mantissa floating point for recurrence sizes where rationals get too large.
using HighFloat = boost::multiprecision::float128;

/// Largest N for which solve_recurrence is run in exact rationals by default.
inline constexpr unsigned kExactLimit = 512;

/// Engine base threshold used in enumeration mode. With it, the cutoff is k-1:
/// every segment that can hold a sample gets partitioned.
inline constexpr std::size_t kOracleBaseThreshold = 0;

/// Largest n for exhaustive enumeration over all n! inputs.
inline constexpr unsigned kMaxEnumeration = 9;

/// Expected comparisons of straight Insertionsort on a random permutation: n(n-1)/4 + n - H_n.
ExactRational insertion_sort_avg(unsigned n);

/// Expected comparisons to merge random sorted runs of lengths p and q:
/// p + q - p/(q+1) - q/(p+1).
ExactRational expected_merge_cost(unsigned p, unsigned q);

/// Expected comparisons of top-down Mergesort on a random permutation of size n.
ExactRational exact_mergesort_avg(unsigned n);

/// Expected Mergesort costs for sizes 0..N of the given variant.
std::vector<ExactRational> mergesort_avg_table(unsigned N, MergeVariant variant);

/// Whether the first segment (size j) is the one handled recursively, for
/// input size n and buffer ratio alpha.
bool recurse_on_first(unsigned j, unsigned n, const ExactRational &alpha);

/// Whether the second segment (size j2) is handled recursively.
bool recurse_on_second(unsigned j2, unsigned n, const ExactRational &alpha);

/// Sum over j of P{J=j} (A1(j) + A2(n-1-j)); equals 1 for every n >= k.
ExactRational recursion_weight_sum(unsigned n, unsigned t, const ExactRational &alpha);

/// Non-recursive cost of one round at size n >= k: (n - k) partitioning
/// comparisons, the expected Insertionsort cost of the sample, and the
/// expected cost of the X call (x[j] = expected X cost at size j).
ExactRational toll(unsigned n, std::span<const ExactRational> x, unsigned t, const ExactRational &alpha);

template <class Num>
struct RecurrenceTable {
    std::vector<Num> c;
    std::vector<Num> x;
    std::vector<Num> base;
    unsigned t = 0;
    ExactRational alpha = 1;
    /// Rough accumulated rounding bound per entry (floating-point tables only).
    std::vector<double> error_bound;

    [[nodiscard]] std::size_t base_threshold() const noexcept { return base.empty() ? 0 : base.size() - 1; }
};

using ExactTable = RecurrenceTable<ExactRational>;
using FloatTable = RecurrenceTable<HighFloat>;

/// Solves c[n] = toll(n) + sum_j P{J=j} (A1(j) c[j] + A2(j') c[j']) for n = 0..N,
/// with c[n] = base[n] for n < base.size(). Needs base.size() >= k and x.size() >= N.
ExactTable solve_recurrence(unsigned N, std::span<const ExactRational> x, std::span<const ExactRational> base,
                            unsigned t, const ExactRational &alpha);

/// Same recurrence in 113-bit floating point.
FloatTable solve_recurrence_float(unsigned N, std::span<const HighFloat> x, std::span<const HighFloat> base,
                                  unsigned t, const ExactRational &alpha);

std::vector<HighFloat> to_high(std::span<const ExactRational> values);

/// Exact average of `cost` over all n! permutations of the keys 0..n-1.
/// Blocks of permutations (by leading element) run on separate threads.
ExactRational enumerate_average(unsigned n, const std::function<Count(std::span<CountedElement>)> &cost);

/// Exact average comparisons of the implemented algorithm over all n! inputs,
/// with DeterministicPrefix sampling and the oracle base threshold.
ExactRational exhaustive_avg(unsigned n, Algorithm alg, unsigned t);

/// Exact average comparisons of the algorithm's X alone over all m! inputs.
ExactRational exhaustive_x_avg(unsigned m, Algorithm alg);

/// Exact average comparisons of the engine's Insertionsort over all n! inputs.
ExactRational exhaustive_insertion_avg(unsigned n);

/// Enumerated Insertionsort averages for sizes 0..k-1 (the oracle's base cases).
std::vector<ExactRational> enumerated_base_table(unsigned t);

/// Expected X costs for sizes 0..N of the algorithm. Mergesort variants are
/// exact for every size; QuickHeapsort's X is enumerated up to kMaxEnumeration.
std::vector<ExactRational> exact_x_table(unsigned N, Algorithm alg);

/// Monte-Carlo X cost means for sizes 0..N; sizes up to kMaxEnumeration-1 are exact.
std::vector<HighFloat> empirical_x_table(unsigned N, Algorithm alg, std::size_t trials, std::uint64_t seed);

}  // namespace qxsort::oracle
