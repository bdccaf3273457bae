// SPDX-License-Identifier: Apache-2.0

#include "qxsort/algorithms.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace qxsort {

namespace {

MergeXConfig merge_config(Algorithm alg) {
    switch (alg) {
    case Algorithm::QuickMergesortBU:
        return {MergeVariant::BottomUp, AlphaMode::Half};
    case Algorithm::QuickMergesortAlpha1:
        return {MergeVariant::TopDown, AlphaMode::One};
    default:
        return {MergeVariant::TopDown, AlphaMode::Half};
    }
}

}  // namespace

std::string_view algorithm_name(Algorithm alg) noexcept {
    switch (alg) {
    case Algorithm::QuickMergesortTD:
        return "QuickMergesortTD";
    case Algorithm::QuickMergesortBU:
        return "QuickMergesortBU";
    case Algorithm::QuickMergesortAlpha1:
        return "QuickMergesortAlpha1";
    case Algorithm::QuickHeapsort:
        return "QuickHeapsort";
    }
    return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept {
    for (Algorithm alg : kAllAlgorithms) {
        if (name == algorithm_name(alg)) {
            return alg;
        }
    }
    if (name == "qms-td" || name == "qms") {
        return Algorithm::QuickMergesortTD;
    }
    if (name == "qms-bu") {
        return Algorithm::QuickMergesortBU;
    }
    if (name == "qms-alpha1") {
        return Algorithm::QuickMergesortAlpha1;
    }
    if (name == "qhs") {
        return Algorithm::QuickHeapsort;
    }
    return std::nullopt;
}

BufferRatio algorithm_alpha(Algorithm alg) noexcept {
    return alg == Algorithm::QuickHeapsort ? HeapSorter::alpha() : merge_config(alg).alpha();
}

theory::CostModelParams cost_model(Algorithm alg, unsigned t) {
    theory::CostModelParams p;
    p.a = 1.0;
    p.t = t;
    const BufferRatio alpha = algorithm_alpha(alg);
    p.alpha = theory::rational(alpha.num, alpha.den);
    switch (alg) {
    case Algorithm::QuickMergesortTD:
    case Algorithm::QuickMergesortAlpha1:
        p.b = theory::x_model_linear(theory::XModel::MergeTopDown);
        break;
    case Algorithm::QuickMergesortBU:
        p.b = theory::x_model_linear(theory::XModel::MergeBottomUp);
        break;
    case Algorithm::QuickHeapsort:
        p.b = theory::x_model_linear(theory::XModel::ExternalHeap);
        break;
    }
    return p;
}

RunStats run_algorithm(Algorithm alg, std::span<CountedElement> a, const SamplingScheme &scheme, Rng &rng,
                       const EngineOptions &options) {
    if (alg == Algorithm::QuickHeapsort) {
        HeapSorter x;
        return quickxsort(a, scheme, x, rng, options, KeyLess{});
    }
    MergeSorter x(merge_config(alg));
    return quickxsort(a, scheme, x, rng, options, KeyLess{});
}

Count run_x_alone(Algorithm alg, std::span<CountedElement> segment) {
    std::vector<CountedElement> buffer(segment.size());
    std::int64_t low = std::numeric_limits<std::int64_t>::max();
    for (const auto &e : segment) {
        low = std::min(low, e.key);
    }
    for (std::size_t i = 0; i < buffer.size(); ++i) {
        buffer[i].key = low - 1 - static_cast<std::int64_t>(i);
        buffer[i].id = std::numeric_limits<std::uint64_t>::max() - i;
    }
    if (alg == Algorithm::QuickHeapsort) {
        return HeapSorter{}.sort(segment, std::span<CountedElement>(buffer), Side::Right, KeyLess{});
    }
    return MergeSorter(merge_config(alg)).sort(segment, std::span<CountedElement>(buffer), Side::Right, KeyLess{});
}

}  // namespace qxsort
