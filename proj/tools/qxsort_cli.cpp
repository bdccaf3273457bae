// SPDX-License-Identifier: Apache-2.0
//
// qxsort: run QuickXsort experiments and print theory tables.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qxsort/experiments.hpp"

namespace {

// Accepts "1000000", "1e6" or "10^6".
std::size_t parse_size(const std::string &text) {
    std::size_t pos = 0;
    if (auto caret = text.find('^'); caret != std::string::npos) {
        const double base = std::stod(text.substr(0, caret));
        const double exp = std::stod(text.substr(caret + 1));
        return static_cast<std::size_t>(std::llround(std::pow(base, exp)));
    }
    const double v = std::stod(text, &pos);
    if (pos != text.size() || v < 0 || v != std::floor(v)) {
        throw std::invalid_argument("not a size: " + text);
    }
    return static_cast<std::size_t>(v);
}

qxsort::theory::ExactRational parse_ratio(const std::string &text) {
    qxsort::theory::ExactRational q(text);
    q.canonicalize();
    return q;
}

struct Common {
    std::string alg = "QuickMergesortTD";
    std::vector<std::string> n{"1000"};
    std::vector<unsigned> t{0};
    std::size_t trials = 10;
    std::uint64_t seed = 1;
    std::string format = "table";
    std::string out;
};

void add_common(CLI::App *cmd, Common &c, bool with_n) {
    cmd->add_option("--alg", c.alg, "QuickMergesortTD|QuickMergesortBU|QuickMergesortAlpha1|QuickHeapsort")
        ->capture_default_str();
    if (with_n) {
        cmd->add_option("--n", c.n, "input sizes")->delimiter(',')->capture_default_str();
    }
    cmd->add_option("--t", c.t, "median-of-(2t+1)")->delimiter(',')->capture_default_str();
    cmd->add_option("--format", c.format, "table|csv|tsv")->capture_default_str();
    cmd->add_option("--out", c.out, "write output to FILE");
}

qxsort::ExperimentSpec make_spec(const Common &c) {
    qxsort::ExperimentSpec spec;
    auto alg = qxsort::parse_algorithm(c.alg);
    if (!alg) {
        throw std::invalid_argument("unknown algorithm: " + c.alg);
    }
    auto format = qxsort::parse_format(c.format);
    if (!format) {
        throw std::invalid_argument("unknown format: " + c.format);
    }
    spec.algorithm = *alg;
    spec.format = *format;
    for (const auto &s : c.n) {
        spec.n_list.push_back(parse_size(s));
    }
    spec.t_list = c.t;
    spec.trials = c.trials;
    spec.seed = c.seed;
    spec.validate();
    return spec;
}

void emit(const Common &c, const std::string &text) {
    if (c.out.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream file(c.out, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot open " + c.out);
    }
    file << text;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"QuickXsort experiments: comparison counts, predictions and exact averages"};
    app.require_subcommand(1);
    Common c;

    auto *predict = app.add_subcommand("predict", "predicted comparison counts");
    add_common(predict, c, true);

    auto *table = app.add_subcommand("table1", "the QuickXsort penalty for several t and alpha");
    table->add_option("--format", c.format, "table|csv|tsv");
    table->add_option("--out", c.out, "write output to FILE");

    auto *bench = app.add_subcommand("bench", "empirical comparison counts on random permutations");
    add_common(bench, c, true);
    bench->add_option("--trials", c.trials, "runs per (n, t)")->capture_default_str();
    bench->add_option("--seed", c.seed, "master seed")->capture_default_str();

    unsigned nmax = 8;
    auto *oracle = app.add_subcommand("oracle", "exact recurrence values against exhaustive enumeration");
    add_common(oracle, c, false);
    oracle->add_option("--nmax", nmax, "largest n")->capture_default_str();

    std::string what = "penalty";
    double from = 0;
    double to = 10;
    double step = 1;
    std::string alpha = "1";
    double b = 0;
    auto *curves = app.add_subcommand("curves", "two-column curve data");
    curves->add_option("--what", what, "penalty|recursive_fraction|skewed")->capture_default_str();
    curves->add_option("--from", from)->capture_default_str();
    curves->add_option("--to", to)->capture_default_str();
    curves->add_option("--step", step)->capture_default_str();
    curves->add_option("--alpha", alpha, "buffer ratio, e.g. 1/2")->capture_default_str();
    curves->add_option("--b", b, "linear coefficient of X (skewed curve)")->capture_default_str();
    curves->add_option("--format", c.format, "table|csv|tsv");
    curves->add_option("--out", c.out, "write output to FILE");

    CLI11_PARSE(app, argc, argv);

    try {
        auto format = qxsort::parse_format(c.format);
        if (!format) {
            throw std::invalid_argument("unknown format: " + c.format);
        }
        if (*predict) {
            const auto spec = make_spec(c);
            emit(c, qxsort::render(qxsort::predict_table(spec), spec.format));
        } else if (*table) {
            emit(c, qxsort::render(qxsort::table1(), *format));
        } else if (*bench) {
            const auto spec = make_spec(c);
            const auto rows = qxsort::bench(spec);
            emit(c, qxsort::render(qxsort::bench_table(rows, spec.format), spec.format));
            std::size_t failures = 0;
            for (const auto &r : rows) {
                failures += r.failures;
            }
            if (failures > 0) {
                fmt::print(stderr, "verification failed for {} run(s)\n", failures);
                return 2;
            }
        } else if (*oracle) {
            auto alg = qxsort::parse_algorithm(c.alg);
            if (!alg) {
                throw std::invalid_argument("unknown algorithm: " + c.alg);
            }
            bool ok = true;
            std::string text;
            for (unsigned t : c.t) {
                auto report = qxsort::oracle_report(nmax, t, *alg);
                if (c.t.size() > 1) {
                    text += fmt::format("t = {}\n", t);
                }
                text += qxsort::render(report.table, *format);
                ok = ok && report.all_passed;
            }
            emit(c, text);
            if (!ok) {
                fmt::print(stderr, "oracle mismatch\n");
                return 2;
            }
        } else if (*curves) {
            auto kind = qxsort::parse_curve(what);
            if (!kind) {
                throw std::invalid_argument("unknown curve: " + what);
            }
            qxsort::CurveSpec spec{*kind, from, to, step, parse_ratio(alpha), b};
            emit(c, qxsort::render(qxsort::curve(spec), *format));
        }
    } catch (const std::exception &e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 1;
    }
    return 0;
}
