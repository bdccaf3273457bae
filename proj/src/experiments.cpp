// SPDX-License-Identifier: Apache-2.0

#include "qxsort/experiments.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "qxsort/oracle.hpp"
#include "qxsort/rng.hpp"

namespace qxsort {

namespace {

std::string number(double v, OutputFormat format, int table_decimals) {
    if (format == OutputFormat::Table) {
        return fmt::format("{:.{}f}", v, table_decimals);
    }
    return fmt::format("{:.6g}", v);
}

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') {
            quoted += '"';
        }
        quoted += c;
    }
    return quoted + "\"";
}

struct TrialResult {
    Count comparisons = 0;
    bool ok = true;
};

TrialResult run_trial(Algorithm alg, std::size_t n, unsigned t, std::uint64_t seed) {
    Rng input_rng(derive_seed(seed, 0));
    std::vector<CountedElement> a(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = CountedElement{static_cast<std::int64_t>(i), i};
    }
    shuffle(std::span<CountedElement>(a), input_rng);
    const std::vector<CountedElement> before = a;
    const SamplingScheme scheme = SamplingScheme::random(t, derive_seed(seed, 1));
    Rng rng(scheme.seed);
    const RunStats stats = run_algorithm(alg, a, scheme, rng);
    return {stats.comparisons, verify_run(before, a, stats).ok()};
}

std::vector<TrialResult> run_trials(Algorithm alg, std::size_t n, unsigned t, std::size_t trials,
                                    std::uint64_t master) {
    std::vector<TrialResult> results(trials);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < trials; i = next++) {
            results[i] = run_trial(alg, n, t, trial_seed(master, n, t, i));
        }
    };
    const auto threads = static_cast<std::size_t>(std::max(1u, std::thread::hardware_concurrency()));
    {
        std::vector<std::jthread> pool;
        for (std::size_t i = 1; i < std::min(threads, trials); ++i) {
            pool.emplace_back(worker);
        }
        worker();
    }
    return results;
}

}  // namespace

std::optional<OutputFormat> parse_format(std::string_view name) noexcept {
    if (name == "table") {
        return OutputFormat::Table;
    }
    if (name == "csv") {
        return OutputFormat::Csv;
    }
    if (name == "tsv") {
        return OutputFormat::Tsv;
    }
    return std::nullopt;
}

std::string render(const TextTable &table, OutputFormat format) {
    std::string out;
    if (format == OutputFormat::Table) {
        std::vector<std::size_t> width(table.header.size(), 0);
        auto widen = [&](const std::vector<std::string> &row) {
            for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) {
                width[i] = std::max(width[i], row[i].size());
            }
        };
        widen(table.header);
        for (const auto &row : table.rows) {
            widen(row);
        }
        auto line = [&](const std::vector<std::string> &row) {
            std::string s;
            for (std::size_t i = 0; i < row.size(); ++i) {
                s += i == 0 ? fmt::format("{:<{}}", row[i], width[i]) : fmt::format("  {:>{}}", row[i], width[i]);
            }
            while (!s.empty() && s.back() == ' ') {
                s.pop_back();
            }
            return s + "\n";
        };
        out += line(table.header);
        std::size_t total = 0;
        for (std::size_t i = 0; i < width.size(); ++i) {
            total += width[i] + (i == 0 ? 0 : 2);
        }
        out += std::string(total, '-') + "\n";
        for (const auto &row : table.rows) {
            out += line(row);
        }
        return out;
    }
    const char sep = format == OutputFormat::Csv ? ',' : '\t';
    auto line = [&](const std::vector<std::string> &row) {
        std::string s;
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) {
                s += sep;
            }
            s += format == OutputFormat::Csv ? csv_field(row[i]) : row[i];
        }
        return s + "\n";
    };
    out += line(table.header);
    for (const auto &row : table.rows) {
        out += line(row);
    }
    return out;
}

void ExperimentSpec::validate() const {
    require(trials >= 1, "ExperimentSpec: trials must be at least 1");
    require(!n_list.empty(), "ExperimentSpec: need at least one n");
    require(!t_list.empty(), "ExperimentSpec: need at least one t");
    for (std::size_t n : n_list) {
        require(n >= 1, "ExperimentSpec: n must be at least 1");
    }
}

std::uint64_t trial_seed(std::uint64_t master, std::size_t n, unsigned t, std::size_t trial) noexcept {
    return derive_seed(derive_seed(derive_seed(master, n), t), trial);
}

std::vector<BenchRow> bench(const ExperimentSpec &spec) {
    spec.validate();
    std::vector<BenchRow> rows;
    for (std::size_t n : spec.n_list) {
        for (unsigned t : spec.t_list) {
            const auto results = run_trials(spec.algorithm, n, t, spec.trials, spec.seed);
            BenchRow row;
            row.algorithm = spec.algorithm;
            row.n = n;
            row.t = t;
            row.trials = spec.trials;
            unsigned __int128 sum = 0;
            unsigned __int128 sum_sq = 0;
            std::size_t good = 0;
            for (const auto &r : results) {
                if (!r.ok) {
                    ++row.failures;
                    continue;
                }
                ++good;
                sum += r.comparisons;
                sum_sq += static_cast<unsigned __int128>(r.comparisons) * r.comparisons;
            }
            if (good > 0) {
                row.mean = static_cast<double>(sum) / static_cast<double>(good);
            }
            if (good > 1) {
                // n * sum_sq - sum^2 is exact and non-negative
                const unsigned __int128 spread = static_cast<unsigned __int128>(good) * sum_sq - sum * sum;
                row.stddev = std::sqrt(static_cast<double>(spread) / (static_cast<double>(good) * (good - 1)));
            }
            const double nd = static_cast<double>(n);
            row.linear_coeff = (row.mean - nd * std::log2(nd)) / nd;
            row.predicted = theory::predict_total(nd, cost_model(spec.algorithm, t));
            row.delta = row.mean - row.predicted;
            rows.push_back(row);
        }
    }
    return rows;
}

TextTable bench_table(const std::vector<BenchRow> &rows, OutputFormat format) {
    TextTable table;
    table.header = {"algorithm", "n", "t", "trials", "mean", "stddev", "linear_coeff", "predicted", "delta"};
    for (const auto &r : rows) {
        table.rows.push_back({std::string(algorithm_name(r.algorithm)), std::to_string(r.n), std::to_string(r.t),
                              std::to_string(r.trials), number(r.mean, format, 1), number(r.stddev, format, 1),
                              number(r.linear_coeff, format, 4), number(r.predicted, format, 1),
                              number(r.delta, format, 1)});
    }
    return table;
}

TextTable predict_table(const ExperimentSpec &spec) {
    spec.validate();
    TextTable table;
    table.header = {"algorithm", "n", "t", "predicted", "leading", "linear_coeff"};
    for (std::size_t n : spec.n_list) {
        for (unsigned t : spec.t_list) {
            const auto params = cost_model(spec.algorithm, t);
            const double nd = static_cast<double>(n);
            const double leading = params.a * nd * std::log2(nd);
            table.rows.push_back({std::string(algorithm_name(spec.algorithm)), std::to_string(n), std::to_string(t),
                                  number(theory::predict_total(nd, params), spec.format, 1),
                                  number(leading, spec.format, 1),
                                  number(theory::linear_coefficient(params), spec.format, 6)});
        }
    }
    return table;
}

TextTable table1() {
    static constexpr unsigned kTs[] = {0, 1, 2, 3, 10};
    TextTable table;
    table.header = {"alpha"};
    for (unsigned t : kTs) {
        table.header.push_back(fmt::format("t={}", t));
    }
    table.header.push_back("t->inf");
    const theory::ExactRational alphas[] = {1, theory::rational(1, 2)};
    for (const auto &alpha : alphas) {
        std::vector<std::string> row{alpha.get_str()};
        for (unsigned t : kTs) {
            row.push_back(fmt::format("{:.4f}", theory::penalty(t, alpha)));
        }
        row.push_back("0 (limit)");
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::optional<CurveKind> parse_curve(std::string_view name) noexcept {
    if (name == "penalty") {
        return CurveKind::Penalty;
    }
    if (name == "recursive_fraction") {
        return CurveKind::RecursiveFraction;
    }
    if (name == "skewed") {
        return CurveKind::Skewed;
    }
    return std::nullopt;
}

TextTable curve(const CurveSpec &spec) {
    require(spec.step > 0.0, "curve: step must be positive");
    require(spec.from <= spec.to, "curve: empty range");
    TextTable table;
    const auto count = static_cast<std::size_t>(std::floor((spec.to - spec.from) / spec.step + 1e-9)) + 1;
    if (spec.kind == CurveKind::Skewed) {
        table.header = {"rho", "coefficient"};
        for (std::size_t i = 0; i < count; ++i) {
            const double rho = spec.from + static_cast<double>(i) * spec.step;
            if (rho <= 0.0 || rho >= 1.0) {
                continue;
            }
            table.rows.push_back(
                {fmt::format("{:.6g}", rho), fmt::format("{:.6f}", theory::skewed_cost_coefficient(rho, spec.b))});
        }
        return table;
    }
    require(spec.from >= 0.0, "curve: t must be non-negative");
    table.header = {"t", spec.kind == CurveKind::Penalty ? "penalty" : "recursive_fraction"};
    for (std::size_t i = 0; i < count; ++i) {
        const auto t = static_cast<unsigned>(std::llround(spec.from + static_cast<double>(i) * spec.step));
        const double value = spec.kind == CurveKind::Penalty
                                 ? theory::penalty(t, spec.alpha)
                                 : theory::to_double(theory::recursive_fraction(t, spec.alpha));
        table.rows.push_back({std::to_string(t), fmt::format("{:.6f}", value)});
    }
    return table;
}

OracleReport oracle_report(unsigned n_max, unsigned t, Algorithm alg) {
    constexpr unsigned kCompareUpTo = 8;
    if (alg == Algorithm::QuickHeapsort) {
        require(n_max <= oracle::kMaxEnumeration, "oracle: QuickHeapsort DP is only exact up to n = 9");
    } else {
        require(n_max <= oracle::kExactLimit, "oracle: n_max too large for the exact DP");
    }
    const unsigned k = 2 * t + 1;
    std::vector<theory::ExactRational> base;
    for (unsigned n = 0; n < k; ++n) {
        base.push_back(oracle::insertion_sort_avg(n));
    }
    const auto x = oracle::exact_x_table(std::max(n_max, 1u), alg);
    const BufferRatio ratio = algorithm_alpha(alg);
    const auto dp = oracle::solve_recurrence(n_max, x, base, t, theory::rational(ratio.num, ratio.den));

    OracleReport report;
    report.table.header = {"n", "dp", "dp_decimal", "enumerated", "verdict"};
    for (unsigned n = 0; n <= n_max; ++n) {
        std::vector<std::string> row{std::to_string(n), dp.c[n].get_str(),
                                     fmt::format("{:.6f}", theory::to_double(dp.c[n]))};
        if (n <= kCompareUpTo) {
            const auto enumerated = oracle::exhaustive_avg(n, alg, t);
            const bool pass = enumerated == dp.c[n];
            report.all_passed = report.all_passed && pass;
            row.push_back(enumerated.get_str());
            row.push_back(pass ? "PASS" : "FAIL");
        } else {
            row.push_back("-");
            row.push_back("-");
        }
        report.table.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace qxsort
