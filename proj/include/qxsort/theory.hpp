// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace qxsort::theory {

/// Arbitrary-precision rational, always canonical (lowest terms, positive denominator).
using ExactRational = mpq_class;

double to_double(const ExactRational &q);
ExactRational rational(long num, unsigned long den = 1);

/// x(n) = a n lg n + b n +- O(n^(1-epsilon)) for a buffered sorter X with buffer
/// ratio alpha, combined with median-of-(2t+1) pivots.
struct CostModelParams {
    double a = 1.0;
    double b = 0.0;
    double epsilon = 1.0;
    ExactRational alpha = 1;
    unsigned t = 0;

    /// Throws ContractViolation unless epsilon, alpha lie in (0, 1].
    void validate() const;
};

/// H_n = 1 + 1/2 + ... + 1/n; harmonic(0) = 0.
ExactRational harmonic(unsigned n);

/// B(a, b) = (a-1)! (b-1)! / (a+b-1)! for positive integers.
ExactRational beta(unsigned a, unsigned b);

/// I_{x,y}(a, b): probability that a Beta(a, b) variable falls in (x, y).
/// Integer shapes only; evaluated exactly by expanding (1-z)^(b-1).
ExactRational reg_incomplete_beta(const ExactRational &x, const ExactRational &y, unsigned a, unsigned b);

/// Expected relative size of the segment X sorts:
/// I_{0, alpha/(1+alpha)}(t+2, t+1) + I_{1/2, 1/(1+alpha)}(t+2, t+1).
ExactRational x_fraction(unsigned t, const ExactRational &alpha);

/// 1 - x_fraction: expected relative size of the recursively handled segment.
ExactRational recursive_fraction(unsigned t, const ExactRational &alpha);

/// Linear-term surcharge q of QuickXsort over X alone (leading coefficient a = 1).
double penalty(unsigned t, const ExactRational &alpha);

/// Coefficient of n in the predicted cost: 1/H - a (H_{k+1} - H_{t+1}) / (H ln 2) + b.
double linear_coefficient(const CostModelParams &params);

/// a n lg n + linear_coefficient * n.
double predict_total(double n, const CostModelParams &params);

enum class XModel : std::uint8_t { MergeTopDown, MergeBottomUp, ExternalHeap };

/// Upper-bound average costs of the stock X choices:
/// n lg n - 1.24n + 2, n lg n - 0.26n, n lg n + 0.967444n.
double x_model(XModel kind, double n);

/// Linear coefficient b of the x_model bound.
double x_model_linear(XModel kind);

/// P{X = i} for X ~ BetaBinomial(n, a, b), via rising factorials.
ExactRational beta_binomial_pmf(unsigned n, unsigned i, unsigned a, unsigned b);

/// Distribution of J1 = t + I1, I1 ~ BetaBinomial(n - k, t+1, t+1), over j = 0..n-1.
std::vector<ExactRational> subproblem_size_pmf(unsigned n, unsigned t);

/// max over z = (i + 1/2)/n of |n P{I = floor(z (n+1))} - f_B(z)| with
/// I ~ BetaBinomial(n, t+1, t+1) and f_B the Beta(t+1, t+1) density.
double local_limit_error(unsigned n, unsigned t);

/// a/(a+b) I_{x,y}(a+1, b): limit of E[[xn <= J <= yn] J/n].
ExactRational expected_fraction_in_range(const ExactRational &x, const ExactRational &y, unsigned a, unsigned b);

/// a/(a+b) (H_a - H_{a+b}): limit of E[(J/n) ln(J/n)].
ExactRational expected_fraction_log(unsigned a, unsigned b);

/// Linear coefficient of QuickXsort (alpha = 1/2) that always pivots on the
/// exact rho-quantile. rho must lie strictly inside (0, 1).
double skewed_cost_coefficient(double rho, double b);

/// Shape function of the recursion: twice the Beta(t+1, t+1) density on the
/// region where the recursive call receives the relative size z.
double shape_w(double z, unsigned t, const ExactRational &alpha);

}  // namespace qxsort::theory
