// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qxsort/algorithms.hpp"

namespace qxsort {

enum class OutputFormat : std::uint8_t { Table, Csv, Tsv };

std::optional<OutputFormat> parse_format(std::string_view name) noexcept;

/// Rows of strings with a header; rendered as an aligned table, CSV or TSV.
struct TextTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string render(const TextTable &table, OutputFormat format);

struct ExperimentSpec {
    Algorithm algorithm = Algorithm::QuickMergesortTD;
    std::vector<std::size_t> n_list;
    std::vector<unsigned> t_list{0};
    std::size_t trials = 1;
    std::uint64_t seed = 1;
    OutputFormat format = OutputFormat::Table;

    void validate() const;
};

struct BenchRow {
    Algorithm algorithm = Algorithm::QuickMergesortTD;
    std::size_t n = 0;
    unsigned t = 0;
    std::size_t trials = 0;
    double mean = 0.0;
    double stddev = 0.0;
    /// (mean - n lg n) / n
    double linear_coeff = 0.0;
    double predicted = 0.0;
    /// mean - predicted
    double delta = 0.0;
    /// Runs whose result failed verify_run; such runs are excluded from the mean.
    std::size_t failures = 0;
};

/// Seed of trial `trial` for size n and sampling parameter t.
std::uint64_t trial_seed(std::uint64_t master, std::size_t n, unsigned t, std::size_t trial) noexcept;

/// Runs spec.trials verified sorts of seeded random permutations per (n, t).
/// Results depend only on the spec, not on thread scheduling.
std::vector<BenchRow> bench(const ExperimentSpec &spec);

TextTable bench_table(const std::vector<BenchRow> &rows, OutputFormat format);

/// Predicted totals, leading term and linear coefficient per (n, t).
TextTable predict_table(const ExperimentSpec &spec);

/// The penalty q for t in {0,1,2,3,10} and alpha in {1, 1/2}, plus the t -> infinity limit.
TextTable table1();

enum class CurveKind : std::uint8_t { Penalty, RecursiveFraction, Skewed };

std::optional<CurveKind> parse_curve(std::string_view name) noexcept;

struct CurveSpec {
    CurveKind kind = CurveKind::Penalty;
    double from = 0.0;
    double to = 10.0;
    double step = 1.0;
    theory::ExactRational alpha = 1;
    /// Linear coefficient of X for the skewed curve.
    double b = 0.0;
};

/// Two numeric columns: the abscissa (t or rho) and the curve value.
TextTable curve(const CurveSpec &spec);

struct OracleReport {
    TextTable table;
    bool all_passed = true;
};

/// Exact DP values for n = 0..n_max; for n <= 8 also the enumerated average
/// of the implementation and an equality verdict.
OracleReport oracle_report(unsigned n_max, unsigned t, Algorithm alg);

}  // namespace qxsort
