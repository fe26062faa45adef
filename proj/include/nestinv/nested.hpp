#pragma once

// The nested derivative D^0[f] = 1, D^n[f] = (f * D^{n-1}[f])'.
//
// Two independent routes to the values D^n[f](b):
//   * expression path: build D^n as simplified expressions, then evaluate;
//   * series path: from the Taylor series F of f at b only, iterate
//     S_0 = 1, S_n = (F * S_{n-1})' and read off the constant terms.

#include "nestinv/expr.hpp"
#include "nestinv/series.hpp"

#include <string>
#include <vector>

namespace nestinv {

enum class NestedPath { Auto, Expression, Series };

/// The expression path switches to the series path above this order when
/// the caller asks for NestedPath::Auto.
inline constexpr int kExpressionPathMaxOrder = 12;

/// D^0..D^N as simplified expressions.
std::vector<Expr> nested_sequence_expr(const Expr& f, int N);

/// D^0(b)..D^N(b) by the expression path.
std::vector<ExactScalar> nested_values_expr(const Expr& f, const PointValuation& at, int N);

/// D^0(b)..D^N(b) from the Taylor series of f at b (in powers of t = x - b).
/// Needs F.order() >= N, otherwise Error(InsufficientOrder).
std::vector<ExactScalar> nested_values_series(const PowerSeries& F, int N);

/// Taylor series of f about the valuation's point: c_k = f^(k)(b) / k!, from
/// repeated differentiation and exact evaluation.
PowerSeries taylor_series(const Expr& f, const PointValuation& at, int order, std::string var = "t");

/// Dispatches on path; Auto uses the expression path for N <= 12.
std::vector<ExactScalar> nested_values(const Expr& f, const PointValuation& at, int N,
                                       NestedPath path = NestedPath::Auto);

struct CrossCheckReport {
    std::vector<ExactScalar> expression_values;
    std::vector<ExactScalar> series_values;
    std::vector<bool> equal;
    bool pass = false;
};

/// Compares both paths elementwise. fseries must be the Taylor series of f
/// at the same point.
CrossCheckReport nested_cross_check(const Expr& f, const PointValuation& at, const PowerSeries& fseries, int N);

enum class GfCase { Identity, Power };

struct GfCheckReport {
    GfCase which = GfCase::Identity;
    BigRational r;
    int order = 0;
    /// One row per sample point: the point, the computed coefficients
    /// D^n(x)/n! and the closed-form coefficients of G(x, z) in z.
    struct Row {
        BigRational x;
        std::vector<ExactScalar> computed;
        std::vector<ExactScalar> closed_form;
        bool equal = false;
    };
    std::vector<Row> rows;
    bool pass = false;
};

/// Checks sum D^n[f](x) z^n/n! against the closed-form exponential
/// generating function: e^z for f = x, and
/// [1 + (1-r) x^(r-1) z]^(r/(1-r)) for f = x^r (r != 1), at each sample x.
/// For the power case the samples are raised to the denominator of r - 1 so
/// that x^(r-1) stays rational.
GfCheckReport gf_check(GfCase which, const BigRational& r, int N, const std::vector<BigRational>& samples);

} // namespace nestinv
