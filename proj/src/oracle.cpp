// SPDX-License-Identifier: Apache-2.0

#include "qxsort/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "qxsort/rng.hpp"

namespace qxsort::oracle {

namespace {

struct AlphaFraction {
    std::uint64_t num;
    std::uint64_t den;
};

AlphaFraction fraction_of(const ExactRational &alpha) {
    require(alpha > 0 && alpha <= 1, "oracle: alpha must lie in (0, 1]");
    require(alpha.get_num().fits_ulong_p() && alpha.get_den().fits_ulong_p(), "oracle: alpha too large");
    return {alpha.get_num().get_ui(), alpha.get_den().get_ui()};
}

// j <= (n-1)/(1+alpha)
bool within(unsigned j, unsigned n, AlphaFraction a) {
    using Wide = unsigned __int128;
    return static_cast<Wide>(j) * (a.num + a.den) <= static_cast<Wide>(n - 1) * a.den;
}

bool first_recursed(unsigned j, unsigned n, AlphaFraction a) {
    const unsigned jp = n - 1 - j;
    return (within(j, n, a) && within(jp, n, a) && j <= jp) || !within(j, n, a);
}

bool second_recursed(unsigned j2, unsigned n, AlphaFraction a) {
    const unsigned j1 = n - 1 - j2;
    return (within(j1, n, a) && within(j2, n, a) && j2 < j1) || !within(j2, n, a);
}

ExactRational make(const mpz_class &num, const mpz_class &den) {
    ExactRational q(num, den);
    q.canonicalize();
    return q;
}

// P{J = j} for j = 0..n-1, J = t + BetaBinomial(n - k, t+1, t+1)
void split_pmf(unsigned n, unsigned t, std::vector<ExactRational> &p) {
    p = theory::subproblem_size_pmf(n, t);
}

void split_pmf(unsigned n, unsigned t, std::vector<HighFloat> &p) {
    const unsigned k = 2 * t + 1;
    const unsigned m = n - k;
    p.assign(n, HighFloat(0));
    HighFloat cur = 1;
    for (unsigned r = 0; r < m; ++r) {
        cur *= HighFloat(t + 1 + r) / HighFloat(k + 1 + r);
    }
    for (unsigned i = 0; i <= m; ++i) {
        p[t + i] = cur;
        if (i < m) {
            cur *= (HighFloat(m - i) / HighFloat(i + 1)) * (HighFloat(t + 1 + i) / HighFloat(t + m - i));
        }
    }
}

double magnitude(const ExactRational &q) { return std::fabs(q.get_d()); }
double magnitude(const HighFloat &q) { return std::fabs(static_cast<double>(q)); }

template <class Num>
RecurrenceTable<Num> solve_impl(unsigned N, std::span<const Num> x, std::span<const Num> base, unsigned t,
                                const ExactRational &alpha, const Num &sample_cost, bool track_error) {
    const unsigned k = 2 * t + 1;
    const AlphaFraction a = fraction_of(alpha);
    require(base.size() >= k, "solve_recurrence: base table must cover sizes 0..k-1");
    require(N < base.size() || x.size() >= N, "solve_recurrence: x table must cover sizes 0..N-1");

    RecurrenceTable<Num> table;
    table.t = t;
    table.alpha = alpha;
    table.base.assign(base.begin(), base.end());
    table.x.assign(x.begin(), x.end());
    table.c.resize(N + 1);
    if (track_error) {
        table.error_bound.assign(N + 1, 0.0);
    }
    constexpr double kUnitRoundoff = 0x1p-112;

    std::vector<Num> p;
    for (unsigned n = 0; n <= N; ++n) {
        if (n < base.size()) {
            table.c[n] = base[n];
            continue;
        }
        split_pmf(n, t, p);
        Num total = Num(n - k) + sample_cost;
        double err = 0.0;
        for (unsigned j = t; j + t < n; ++j) {
            const unsigned jp = n - 1 - j;
            const bool left = first_recursed(j, n, a);
            const unsigned recursed = left ? j : jp;
            const unsigned by_x = left ? jp : j;
            total += p[j] * (table.c[recursed] + x[by_x]);
            if (track_error) {
                err += magnitude(p[j]) * table.error_bound[recursed];
            }
        }
        table.c[n] = total;
        if (track_error) {
            table.error_bound[n] = err + 8.0 * n * kUnitRoundoff * magnitude(total);
        }
    }
    return table;
}

}  // namespace

ExactRational insertion_sort_avg(unsigned n) {
    if (n == 0) {
        return 0;
    }
    ExactRational q = ExactRational(n * (n - 1), 4) + n - theory::harmonic(n);
    q.canonicalize();
    return q;
}

ExactRational expected_merge_cost(unsigned p, unsigned q) {
    if (p == 0 || q == 0) {
        return 0;
    }
    ExactRational c = ExactRational(p + q) - ExactRational(p, q + 1) - ExactRational(q, p + 1);
    c.canonicalize();
    return c;
}

std::vector<ExactRational> mergesort_avg_table(unsigned N, MergeVariant variant) {
    std::vector<ExactRational> em(N + 1, ExactRational(0));
    for (unsigned n = 2; n <= N; ++n) {
        if (variant == MergeVariant::TopDown) {
            const unsigned lo = n / 2;
            const unsigned hi = n - lo;
            em[n] = em[lo] + em[hi] + expected_merge_cost(lo, hi);
        } else {
            ExactRational total = 0;
            for (unsigned w = 1; w < n; w *= 2) {
                const unsigned full = n / (2 * w);
                total += ExactRational(full) * expected_merge_cost(w, w);
                const unsigned rest = n % (2 * w);
                if (rest > w) {
                    total += expected_merge_cost(w, rest - w);
                }
            }
            em[n] = total;
        }
        em[n].canonicalize();
    }
    return em;
}

ExactRational exact_mergesort_avg(unsigned n) {
    return mergesort_avg_table(n, MergeVariant::TopDown)[n];
}

bool recurse_on_first(unsigned j, unsigned n, const ExactRational &alpha) {
    require(j < n, "recurse_on_first: need j <= n-1");
    return first_recursed(j, n, fraction_of(alpha));
}

bool recurse_on_second(unsigned j2, unsigned n, const ExactRational &alpha) {
    require(j2 < n, "recurse_on_second: need j2 <= n-1");
    return second_recursed(j2, n, fraction_of(alpha));
}

ExactRational recursion_weight_sum(unsigned n, unsigned t, const ExactRational &alpha) {
    const AlphaFraction a = fraction_of(alpha);
    const auto p = theory::subproblem_size_pmf(n, t);
    ExactRational sum = 0;
    for (unsigned j = 0; j < n; ++j) {
        const unsigned jp = n - 1 - j;
        const int weight = (first_recursed(j, n, a) ? 1 : 0) + (second_recursed(jp, n, a) ? 1 : 0);
        sum += p[j] * weight;
    }
    sum.canonicalize();
    return sum;
}

ExactRational toll(unsigned n, std::span<const ExactRational> x, unsigned t, const ExactRational &alpha) {
    const unsigned k = 2 * t + 1;
    require(n >= k, "toll: defined only for n >= k");
    require(x.size() >= n, "toll: x table must cover sizes 0..n-1");
    const AlphaFraction a = fraction_of(alpha);
    const auto p = theory::subproblem_size_pmf(n, t);
    ExactRational total = ExactRational(n - k) + insertion_sort_avg(k);
    for (unsigned j = t; j + t < n; ++j) {
        const unsigned jp = n - 1 - j;
        if (second_recursed(jp, n, a)) {
            total += p[j] * x[j];
        }
        if (first_recursed(j, n, a)) {
            total += p[j] * x[jp];
        }
    }
    total.canonicalize();
    return total;
}

ExactTable solve_recurrence(unsigned N, std::span<const ExactRational> x, std::span<const ExactRational> base,
                            unsigned t, const ExactRational &alpha) {
    return solve_impl<ExactRational>(N, x, base, t, alpha, insertion_sort_avg(2 * t + 1), false);
}

FloatTable solve_recurrence_float(unsigned N, std::span<const HighFloat> x, std::span<const HighFloat> base,
                                  unsigned t, const ExactRational &alpha) {
    const ExactRational b = insertion_sort_avg(2 * t + 1);
    const HighFloat sample = HighFloat(b.get_num().get_str()) / HighFloat(b.get_den().get_str());
    return solve_impl<HighFloat>(N, x, base, t, alpha, sample, true);
}

std::vector<HighFloat> to_high(std::span<const ExactRational> values) {
    std::vector<HighFloat> out;
    out.reserve(values.size());
    for (const auto &q : values) {
        // Scale through decimal strings to keep far more than double precision.
        out.push_back(HighFloat(q.get_num().get_str()) / HighFloat(q.get_den().get_str()));
    }
    return out;
}

ExactRational enumerate_average(unsigned n, const std::function<Count(std::span<CountedElement>)> &cost) {
    require(n <= kMaxEnumeration, "enumerate_average: n too large for exhaustive enumeration");
    if (n == 0) {
        std::vector<CountedElement> empty;
        return ExactRational(static_cast<unsigned long>(cost(empty)));
    }
    std::vector<Count> block_totals(n, 0);
    std::atomic<unsigned> next{0};
    auto worker = [&] {
        std::vector<std::int64_t> perm(n);
        std::vector<CountedElement> a(n);
        for (unsigned lead = next++; lead < n; lead = next++) {
            perm[0] = lead;
            std::size_t w = 1;
            for (unsigned v = 0; v < n; ++v) {
                if (v != lead) {
                    perm[w++] = v;
                }
            }
            Count total = 0;
            do {
                for (unsigned i = 0; i < n; ++i) {
                    a[i] = CountedElement{perm[i], static_cast<std::uint64_t>(perm[i])};
                }
                total += cost(a);
            } while (std::next_permutation(perm.begin() + 1, perm.end()));
            block_totals[lead] = total;
        }
    };
    const unsigned threads = std::clamp(std::thread::hardware_concurrency(), 1u, n);
    {
        std::vector<std::jthread> pool;
        for (unsigned i = 1; i < threads; ++i) {
            pool.emplace_back(worker);
        }
        worker();
    }
    const Count sum = std::accumulate(block_totals.begin(), block_totals.end(), Count{0});
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), n);
    return make(mpz_class(static_cast<unsigned long>(sum)), fact);
}

ExactRational exhaustive_avg(unsigned n, Algorithm alg, unsigned t) {
    EngineOptions options;
    options.base_threshold = kOracleBaseThreshold;
    const SamplingScheme scheme = SamplingScheme::prefix(t);
    return enumerate_average(n, [&](std::span<CountedElement> a) {
        Rng rng(0);
        return run_algorithm(alg, a, scheme, rng, options).comparisons;
    });
}

ExactRational exhaustive_x_avg(unsigned m, Algorithm alg) {
    return enumerate_average(m, [&](std::span<CountedElement> a) { return run_x_alone(alg, a); });
}

ExactRational exhaustive_insertion_avg(unsigned n) {
    return enumerate_average(n, [](std::span<CountedElement> a) { return insertion_sort(a, KeyLess{}); });
}

std::vector<ExactRational> enumerated_base_table(unsigned t) {
    const unsigned k = 2 * t + 1;
    std::vector<ExactRational> base;
    for (unsigned n = 0; n < k; ++n) {
        base.push_back(exhaustive_insertion_avg(n));
    }
    return base;
}

std::vector<ExactRational> exact_x_table(unsigned N, Algorithm alg) {
    switch (alg) {
    case Algorithm::QuickMergesortTD:
    case Algorithm::QuickMergesortAlpha1:
        return mergesort_avg_table(N, MergeVariant::TopDown);
    case Algorithm::QuickMergesortBU:
        return mergesort_avg_table(N, MergeVariant::BottomUp);
    case Algorithm::QuickHeapsort:
        break;
    }
    require(N <= kMaxEnumeration, "exact_x_table: Heapsort costs are only exact up to the enumeration limit");
    std::vector<ExactRational> table;
    for (unsigned m = 0; m <= N; ++m) {
        table.push_back(exhaustive_x_avg(m, alg));
    }
    return table;
}

std::vector<HighFloat> empirical_x_table(unsigned N, Algorithm alg, std::size_t trials, std::uint64_t seed) {
    require(trials >= 1, "empirical_x_table: need at least one trial");
    const unsigned exact_upto = std::min(N, kMaxEnumeration - 1);
    std::vector<HighFloat> table = to_high(exact_x_table(exact_upto, alg));
    std::vector<CountedElement> a;
    for (unsigned m = exact_upto + 1; m <= N; ++m) {
        Rng rng(derive_seed(seed, m));
        unsigned __int128 total = 0;
        a.resize(m);
        for (std::size_t trial = 0; trial < trials; ++trial) {
            for (unsigned i = 0; i < m; ++i) {
                a[i] = CountedElement{static_cast<std::int64_t>(i), i};
            }
            shuffle(std::span<CountedElement>(a), rng);
            total += run_x_alone(alg, a);
        }
        table.push_back(HighFloat(static_cast<double>(total)) / HighFloat(static_cast<double>(trials)));
    }
    return table;
}

}  // namespace qxsort::oracle
