// SPDX-License-Identifier: Apache-2.0

#include "qxsort/theory.hpp"

#include <cmath>
#include <numbers>

#include "qxsort/instrument.hpp"

namespace qxsort::theory {

namespace {

ExactRational power(const ExactRational &base, unsigned e) {
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
    ExactRational q(num, den);
    q.canonicalize();
    return q;
}

mpz_class binomial(unsigned n, unsigned k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

mpz_class factorial(unsigned n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

/// x^(rising n) for a non-negative integer x
mpz_class rising(unsigned x, unsigned n) {
    mpz_class r = 1;
    for (unsigned i = 0; i < n; ++i) {
        r *= x + i;
    }
    return r;
}

double lg(double x) { return std::log2(x); }

}  // namespace

double to_double(const ExactRational &q) { return q.get_d(); }

ExactRational rational(long num, unsigned long den) {
    ExactRational q(num, den);
    q.canonicalize();
    return q;
}

void CostModelParams::validate() const {
    require(epsilon > 0.0 && epsilon <= 1.0, "CostModelParams: epsilon must lie in (0, 1]");
    require(alpha > 0 && alpha <= 1, "CostModelParams: alpha must lie in (0, 1]");
}

ExactRational harmonic(unsigned n) {
    ExactRational h = 0;
    for (unsigned i = 1; i <= n; ++i) {
        h += ExactRational(1, i);
    }
    h.canonicalize();
    return h;
}

ExactRational beta(unsigned a, unsigned b) {
    require(a > 0 && b > 0, "beta: shapes must be positive");
    ExactRational q(factorial(a - 1) * factorial(b - 1), factorial(a + b - 1));
    q.canonicalize();
    return q;
}

ExactRational reg_incomplete_beta(const ExactRational &x, const ExactRational &y, unsigned a, unsigned b) {
    require(a > 0 && b > 0, "reg_incomplete_beta: shapes must be positive");
    require(0 <= x && x <= y && y <= 1, "reg_incomplete_beta: need 0 <= x <= y <= 1");
    // z^(a-1) (1-z)^(b-1) = sum_j C(b-1, j) (-1)^j z^(a-1+j)
    ExactRational integral = 0;
    for (unsigned j = 0; j < b; ++j) {
        ExactRational term = (power(y, a + j) - power(x, a + j)) / (a + j);
        term *= ExactRational(binomial(b - 1, j));
        if (j % 2 == 1) {
            integral -= term;
        } else {
            integral += term;
        }
    }
    ExactRational result = integral / beta(a, b);
    result.canonicalize();
    return result;
}

ExactRational x_fraction(unsigned t, const ExactRational &alpha) {
    require(alpha > 0 && alpha <= 1, "x_fraction: alpha must lie in (0, 1]");
    const ExactRational lower = alpha / (1 + alpha);
    const ExactRational upper = 1 / (1 + alpha);
    const ExactRational half(1, 2);
    ExactRational h = reg_incomplete_beta(0, lower, t + 2, t + 1) + reg_incomplete_beta(half, upper, t + 2, t + 1);
    h.canonicalize();
    return h;
}

ExactRational recursive_fraction(unsigned t, const ExactRational &alpha) {
    ExactRational r = 1 - x_fraction(t, alpha);
    r.canonicalize();
    return r;
}

double linear_coefficient(const CostModelParams &params) {
    params.validate();
    const unsigned k = 2 * params.t + 1;
    const double h = to_double(x_fraction(params.t, params.alpha));
    const double harm_gap = to_double(harmonic(k + 1) - harmonic(params.t + 1));
    return 1.0 / h - params.a * harm_gap / (h * std::numbers::ln2) + params.b;
}

double penalty(unsigned t, const ExactRational &alpha) {
    CostModelParams p;
    p.a = 1.0;
    p.b = 0.0;
    p.alpha = alpha;
    p.t = t;
    return linear_coefficient(p);
}

double predict_total(double n, const CostModelParams &params) {
    require(n >= 1.0, "predict_total: n must be at least 1");
    return params.a * n * lg(n) + linear_coefficient(params) * n;
}

double x_model_linear(XModel kind) {
    switch (kind) {
    case XModel::MergeTopDown:
        return -1.24;
    case XModel::MergeBottomUp:
        return -0.26;
    case XModel::ExternalHeap:
        return 0.967444;
    }
    return 0.0;
}

double x_model(XModel kind, double n) {
    require(n >= 1.0, "x_model: n must be at least 1");
    const double base = n * lg(n) + x_model_linear(kind) * n;
    return kind == XModel::MergeTopDown ? base + 2.0 : base;
}

ExactRational beta_binomial_pmf(unsigned n, unsigned i, unsigned a, unsigned b) {
    require(a > 0 && b > 0, "beta_binomial_pmf: shapes must be positive");
    if (i > n) {
        return 0;
    }
    ExactRational q(binomial(n, i) * rising(a, i) * rising(b, n - i), rising(a + b, n));
    q.canonicalize();
    return q;
}

std::vector<ExactRational> subproblem_size_pmf(unsigned n, unsigned t) {
    const unsigned k = 2 * t + 1;
    require(n >= k, "subproblem_size_pmf: need n >= k");
    const unsigned m = n - k;
    std::vector<ExactRational> p(n, ExactRational(0));
    // P{I = 0} = (t+1)^(rising m) / (k+1)^(rising m), then step the ratio
    ExactRational cur(rising(t + 1, m), rising(k + 1, m));
    cur.canonicalize();
    for (unsigned i = 0; i <= m; ++i) {
        p[t + i] = cur;
        if (i < m) {
            cur *= ExactRational((m - i) * mpz_class(t + 1 + i), (i + 1) * mpz_class(t + m - i));
            cur.canonicalize();
        }
    }
    return p;
}

double local_limit_error(unsigned n, unsigned t) {
    require(n >= 1, "local_limit_error: n must be positive");
    using Real = long double;
    const Real a = t + 1;
    const Real b = t + 1;
    // P{I = i} for I ~ BetaBinomial(n, a, b)
    std::vector<Real> pmf(n + 1);
    Real p0 = std::exp(std::lgamma(b + n) + std::lgamma(a + b) - std::lgamma(b) - std::lgamma(a + b + n));
    pmf[0] = p0;
    for (unsigned i = 0; i < n; ++i) {
        pmf[i + 1] = pmf[i] * (Real(n - i) / Real(i + 1)) * ((a + i) / (b + n - i - 1));
    }
    const Real beta_ab = std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
    Real worst = 0;
    for (unsigned i = 0; i < n; ++i) {
        const Real z = (Real(i) + 0.5L) / n;
        const auto idx = static_cast<unsigned>(std::floor(z * (n + 1)));
        const Real density = std::pow(z, Real(t)) * std::pow(1 - z, Real(t)) / beta_ab;
        const Real mass = idx <= n ? pmf[idx] : 0;
        worst = std::max(worst, std::fabs(n * mass - density));
    }
    return static_cast<double>(worst);
}

ExactRational expected_fraction_in_range(const ExactRational &x, const ExactRational &y, unsigned a, unsigned b) {
    ExactRational q = ExactRational(a, a + b) * reg_incomplete_beta(x, y, a + 1, b);
    q.canonicalize();
    return q;
}

ExactRational expected_fraction_log(unsigned a, unsigned b) {
    require(a > 0 && b > 0, "expected_fraction_log: shapes must be positive");
    ExactRational q = ExactRational(a, a + b) * (harmonic(a) - harmonic(a + b));
    q.canonicalize();
    return q;
}

double skewed_cost_coefficient(double rho, double b) {
    require(rho > 0.0 && rho < 1.0, "skewed_cost_coefficient: rho must lie in (0, 1)");
    const double h = rho * lg(rho) + (1.0 - rho) * lg(1.0 - rho);
    const bool recurse_on_rest =
        (rho > 1.0 / 3.0 && rho < 0.5) || (rho > 2.0 / 3.0 && rho < 1.0);
    return (1.0 + h) / (recurse_on_rest ? 1.0 - rho : rho) + b;
}

double shape_w(double z, unsigned t, const ExactRational &alpha) {
    require(alpha > 0 && alpha <= 1, "shape_w: alpha must lie in (0, 1]");
    const double lower = to_double(alpha / (1 + alpha));
    const double upper = to_double(1 / (1 + alpha));
    const bool inside = (z > lower && z < 0.5) || (z > upper && z <= 1.0);
    if (!inside) {
        return 0.0;
    }
    const double density = std::pow(z, t) * std::pow(1.0 - z, t) / to_double(beta(t + 1, t + 1));
    return 2.0 * density;
}

}  // namespace qxsort::theory
