#pragma once

// Double-precision closure of the loop: quadrature for z0 = h(b), float
// evaluation of expressions and inverse series, and round-trip residuals.

#include "nestinv/expr.hpp"
#include "nestinv/inverse.hpp"

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace nestinv {

/// Float values for the declared symbols plus quadrature settings.
class FloatContext {
public:
    FloatContext() = default;
    explicit FloatContext(SymbolSetPtr symbols);

    /// Binds by name; Error(UnknownSymbol) for names outside the set.
    void bind(std::string_view name, double value);
    /// Every symbol bound, in symbol order; Error(InvalidArgument) otherwise.
    std::vector<double> values() const;
    const SymbolSetPtr& symbols() const noexcept { return symbols_; }

    double tolerance = 1e-12;  // relative
    int max_subdivisions = 2000;

private:
    SymbolSetPtr symbols_;
    std::vector<std::optional<double>> values_;
};

/// IEEE evaluation at x. Error(DomainError) for ln of a non-positive value,
/// even roots of negatives, non-integer powers of negatives and division by
/// zero.
double eval_float(const Expr& e, double x, const std::vector<double>& symbol_values);

/// Like eval_float, but a DomainError or non-finite value at x is treated as
/// a removable singularity: the mean of the values at x +- h is returned
/// (h = 1e-7 max(1, |x|)). Still throws when the neighbours fail too.
double eval_float_guarded(const Expr& e, double x, const std::vector<double>& symbol_values);

struct QuadratureResult {
    double value = 0;
    double error = 0;
    int subdivisions = 0;
};

/// Adaptive Gauss-Kronrod (7/15) with global subdivision of the interval of
/// largest error estimate until error <= tolerance * |value|.
/// Error(NoConvergence) once max_subdivisions is reached.
QuadratureResult integrate(const std::function<double(double)>& g, double a, double b, double tolerance,
                           int max_subdivisions);

/// Integral of an expression over [a, b] with the singularity guard.
QuadratureResult integrate_numeric(const Expr& integrand, double a, double b, const FloatContext& ctx);

/// Cauchy principal value of the integral over [a, b] for an integrand with a
/// simple pole at c (a < c < b): the symmetric part around c is integrated as
/// g(c+u) + g(c-u) on [0, delta], the rest directly.
QuadratureResult integrate_principal_value(const Expr& integrand, double a, double b, double c,
                                           const FloatContext& ctx);

/// Largest rho with |b_K| rho^K <= 1e-6 |b_1| rho, K the last nonzero
/// coefficient; +infinity when only b_1 is nonzero.
double heuristic_radius(const std::vector<double>& coeffs);

struct NumericEvaluation {
    double z = 0;
    double z0 = 0;
    double value = 0;     // H(z)
    double residual = 0;  // |z0 + integral_b^{H(z)} dt/f(t) - z|
    double radius = 0;
    std::string radius_kind;  // "heuristic" or "redheffer"
    bool radius_exceeded = false;
};

/// Evaluates H at z by Horner in (z - z0) and closes the loop with
/// quadrature. z0 comes from H when exact, otherwise from z0_numeric, which
/// must then be given. When redheffer (a, R, M) is supplied the guaranteed
/// radius replaces the heuristic one.
NumericEvaluation inverse_eval_numeric(const InverseSeries& H, const Expr& f, double z, const FloatContext& ctx,
                                       std::optional<double> z0_numeric = std::nullopt,
                                       std::optional<std::array<double, 3>> redheffer = std::nullopt);

/// Float values of the coefficients b_0..b_N.
std::vector<double> coefficients_float(const InverseSeries& H, const std::vector<double>& symbol_values);

} // namespace nestinv
