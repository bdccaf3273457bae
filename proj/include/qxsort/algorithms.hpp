// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "qxsort/engine.hpp"
#include "qxsort/heap_x.hpp"
#include "qxsort/instrument.hpp"
#include "qxsort/merge_x.hpp"
#include "qxsort/theory.hpp"

namespace qxsort {

enum class Algorithm : std::uint8_t { QuickMergesortTD, QuickMergesortBU, QuickMergesortAlpha1, QuickHeapsort };

inline constexpr std::array<Algorithm, 4> kAllAlgorithms = {
    Algorithm::QuickMergesortTD, Algorithm::QuickMergesortBU, Algorithm::QuickMergesortAlpha1,
    Algorithm::QuickHeapsort};

std::string_view algorithm_name(Algorithm alg) noexcept;

/// Accepts the canonical names ("QuickHeapsort") and short forms ("qhs", "qms-td", ...).
std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept;

/// Buffer ratio the engine uses for this algorithm's X.
BufferRatio algorithm_alpha(Algorithm alg) noexcept;

/// Cost model (a, b, alpha) of the algorithm's X as used for predictions.
theory::CostModelParams cost_model(Algorithm alg, unsigned t);

/// Sorts `a` with the given algorithm and reports exact comparison counts.
RunStats run_algorithm(Algorithm alg, std::span<CountedElement> a, const SamplingScheme &scheme, Rng &rng,
                       const EngineOptions &options = {});

/// Sorts `segment` with the algorithm's X alone, against a scratch buffer whose
/// keys all lie below the segment. Returns X's comparison count.
Count run_x_alone(Algorithm alg, std::span<CountedElement> segment);

}  // namespace qxsort
