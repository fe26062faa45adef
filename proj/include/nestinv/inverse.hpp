#pragma once

// Series expansion of the inverse of h(x) = z0 + integral_b^x dt / f(t)
// about z0 = h(b):
//
//   H(z) = b + f(b) * sum_{n>=1} D^{n-1}[f](b) (z - z0)^n / n!
//
// Only b and the nested derivatives of f at b enter the coefficients; z0 is
// carried along and is needed only for numeric evaluation.

#include "nestinv/expr.hpp"
#include "nestinv/nested.hpp"
#include "nestinv/series.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nestinv {

struct InverseProblem {
    Expr f;
    PointValuation at; // must carry the point b
    int order = 1;     // N: H is produced through (z - z0)^N
    /// Exact z0 when known (h(b) = 0 for the integral based at b); nullopt
    /// means z0 must be obtained numerically.
    std::optional<ExactScalar> z0 = ExactScalar(0);
};

struct InverseSeries {
    ExactScalar b;
    ExactScalar f_at_b;
    std::optional<ExactScalar> z0;
    std::vector<ExactScalar> nested; // D^0(b)..D^{N-1}(b)
    std::vector<ExactScalar> coeffs; // b_0..b_N in powers of (z - z0)

    int order() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
    /// H(z) - b as a series in w = z - z0 (constant term 0).
    PowerSeries shifted_series(std::string var = "w") const;
};

/// Error(SingularPoint) when f(b) is zero or cannot be evaluated at b.
InverseSeries invert(const InverseProblem& p, NestedPath path = NestedPath::Auto);

/// Taylor series of h(x) - h(b) in t = x - b through t^order, built as the
/// integral of the reciprocal of the Taylor series of f (independent of the
/// nested derivatives).
PowerSeries h_series(const Expr& f, const PointValuation& at, int order);

/// compose(h - z0, H - b) - w. h must be a series in t = x - b with zero
/// constant term; the result order is min(h.order(), H.order()).
/// Error(OrderMismatch) when either order is below 1.
PowerSeries composition_residual(const PowerSeries& h, const InverseSeries& H);

/// Radius (aR)^2 / (4M) of a disc around z0 on which the inverse is
/// guaranteed to exist, given |h'(b)| = a, analyticity on |x - b| < R and
/// |h - z0| <= M there. Error(NonpositiveBound) unless R, M > 0 and a != 0.
double redheffer_radius(double a, double R, double M);

} // namespace nestinv
