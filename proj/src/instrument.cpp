// SPDX-License-Identifier: Apache-2.0

#include "qxsort/instrument.hpp"

#include <algorithm>

namespace qxsort {

const char *channel_name(Channel c) noexcept {
    switch (c) {
    case Channel::Sample:
        return "sample";
    case Channel::Partition:
        return "partition";
    case Channel::X:
        return "x";
    case Channel::Base:
        return "base";
    }
    return "?";
}

RunStats RunStats::from(const Tally &tally, std::size_t depth) {
    RunStats s;
    s.sample_comparisons = tally[Channel::Sample];
    s.partition_comparisons = tally[Channel::Partition];
    s.x_comparisons = tally[Channel::X];
    s.base_case_comparisons = tally[Channel::Base];
    s.comparisons = tally.total();
    s.max_recursion_depth = depth;
    return s;
}

const char *violation_name(Violation v) noexcept {
    switch (v) {
    case Violation::NotSorted:
        return "not sorted";
    case Violation::NotPermutation:
        return "permutation violation";
    case Violation::TallyInconsistent:
        return "tally inconsistency";
    }
    return "?";
}

bool Verdict::has(Violation v) const noexcept {
    return std::find(violations.begin(), violations.end(), v) != violations.end();
}

std::string Verdict::describe() const {
    if (ok()) {
        return "pass";
    }
    std::string out = "fail:";
    for (Violation v : violations) {
        out += ' ';
        out += violation_name(v);
        out += ';';
    }
    return out;
}

Verdict verify_run(std::span<const CountedElement> before, std::span<const CountedElement> after,
                   const RunStats &stats) {
    Verdict verdict;
    for (std::size_t i = 1; i < after.size(); ++i) {
        if (after[i].key < after[i - 1].key) {
            verdict.violations.push_back(Violation::NotSorted);
            break;
        }
    }

    bool same = before.size() == after.size();
    if (same) {
        std::vector<std::pair<std::uint64_t, std::int64_t>> lhs, rhs;
        lhs.reserve(before.size());
        rhs.reserve(after.size());
        for (const auto &e : before) {
            lhs.emplace_back(e.id, e.key);
        }
        for (const auto &e : after) {
            rhs.emplace_back(e.id, e.key);
        }
        std::sort(lhs.begin(), lhs.end());
        std::sort(rhs.begin(), rhs.end());
        same = lhs == rhs;
    }
    if (!same) {
        verdict.violations.push_back(Violation::NotPermutation);
    }

    if (stats.channel_sum() != stats.comparisons) {
        verdict.violations.push_back(Violation::TallyInconsistent);
    }
    return verdict;
}

}  // namespace qxsort
