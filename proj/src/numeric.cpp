#include "nestinv/numeric.hpp"

#include "nestinv/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace nestinv {

namespace {

double domain_error(const std::string& what) { throw Error(ErrorCode::DomainError, what); }

double pow_float(double base, const ExactScalar& exponent, const std::vector<double>& values) {
    if (auto k = exponent.as_small_integer()) {
        if (base == 0 && *k < 0) return domain_error("division by zero");
        return std::pow(base, static_cast<double>(*k));
    }
    double e = exponent.evaluate(values);
    if (base < 0) {
        // Rational exponents with odd denominators are real for negative bases.
        auto q = exponent.as_rational();
        if (!q || q->get_den() % 2 == 0) return domain_error("non-integer power of a negative number");
        double r = std::pow(-base, e);
        return q->get_num() % 2 == 0 ? r : -r;
    }
    if (base == 0 && e < 0) return domain_error("division by zero");
    return std::pow(base, e);
}

double eval_node(const Expr& e, double x, const std::vector<double>& values) {
    switch (e.kind()) {
    case NodeKind::Const:
        return e.value().evaluate(values);
    case NodeKind::Var:
        return x;
    case NodeKind::Add: {
        double s = 0;
        for (const auto& c : e.children()) s += eval_node(c, x, values);
        return s;
    }
    case NodeKind::Mul: {
        double p = 1;
        for (const auto& c : e.children()) p *= eval_node(c, x, values);
        return p;
    }
    case NodeKind::Pow:
        return pow_float(eval_node(e.child(0), x, values), e.exponent(), values);
    case NodeKind::Prim: {
        double a = eval_node(e.child(0), x, values);
        switch (e.prim_kind()) {
        case PrimKind::Exp:
            return std::exp(a);
        case PrimKind::Ln:
            return a > 0 ? std::log(a) : domain_error("ln of a non-positive number");
        case PrimKind::Sin:
            return std::sin(a);
        case PrimKind::Cos:
            return std::cos(a);
        case PrimKind::Sqrt:
            return a >= 0 ? std::sqrt(a) : domain_error("sqrt of a negative number");
        }
    }
    }
    return 0;
}

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1]; odd Kronrod indices
// are the Gauss nodes.
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error, magnitude;  // magnitude: integral of |g|
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<double(double)>& g, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = g(c);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    double magnitude = std::abs(fc) * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const double lo = g(c - dx), hi = g(c + dx);
        kronrod += kWgk[j] * (lo + hi);
        magnitude += kWgk[j] * (std::abs(lo) + std::abs(hi));
        if (j % 2 == 1) gauss += kWg[j / 2] * (lo + hi);
    }
    return {a, b, kronrod * h, std::abs((kronrod - gauss) * h), magnitude * std::abs(h)};
}

} // namespace

FloatContext::FloatContext(SymbolSetPtr symbols)
    : symbols_(std::move(symbols)), values_(symbols_ ? symbols_->size() : 0) {}

void FloatContext::bind(std::string_view name, double value) {
    auto idx = symbols_ ? symbols_->index_of(name) : std::nullopt;
    if (!idx) throw Error(ErrorCode::UnknownSymbol, "cannot bind undeclared symbol '" + std::string(name) + "'");
    values_[*idx] = value;
}

std::vector<double> FloatContext::values() const {
    std::vector<double> out;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!values_[i])
            throw Error(ErrorCode::InvalidArgument, "symbol '" + symbols_->name(i) + "' has no numeric value");
        out.push_back(*values_[i]);
    }
    return out;
}

double eval_float(const Expr& e, double x, const std::vector<double>& symbol_values) {
    return eval_node(e, x, symbol_values);
}

double eval_float_guarded(const Expr& e, double x, const std::vector<double>& symbol_values) {
    try {
        double v = eval_node(e, x, symbol_values);
        if (std::isfinite(v)) return v;
    } catch (const Error& err) {
        if (err.code() != ErrorCode::DomainError) throw;
    }
    const double h = 1e-7 * std::max(1.0, std::abs(x));
    double v = 0.5 * (eval_node(e, x - h, symbol_values) + eval_node(e, x + h, symbol_values));
    if (!std::isfinite(v)) domain_error("integrand is not finite near x = " + std::to_string(x));
    return v;
}

QuadratureResult integrate(const std::function<double(double)>& g, double a, double b, double tolerance,
                           int max_subdivisions) {
    if (!(tolerance > 0)) throw Error(ErrorCode::InvalidArgument, "quadrature tolerance must be positive");
    if (a == b) return {};
    std::priority_queue<Panel> panels;
    Panel first = gk15(g, a, b);
    panels.push(first);
    double value = first.value;
    double error = first.error;
    double magnitude = first.magnitude;
    int splits = 0;
    // Relative to |value|, but never finer than rounding allows relative to
    // the integral of |g| (integrals that cancel to ~0 would never converge).
    const double tiny = 50 * std::numeric_limits<double>::epsilon();
    auto target = [&] { return std::max(std::max(tolerance, tiny) * std::abs(value), tiny * magnitude); };
    while (error > target() && error > 1e-300) {
        if (splits >= max_subdivisions)
            throw Error(ErrorCode::NoConvergence, "quadrature did not reach the tolerance after " +
                                                      std::to_string(splits) + " subdivisions (error estimate " +
                                                      std::to_string(error) + ")");
        Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= std::min(worst.a, worst.b) || mid >= std::max(worst.a, worst.b)) {
            // Interval cannot be split further in double precision.
            throw Error(ErrorCode::NoConvergence, "quadrature interval collapsed near " + std::to_string(mid));
        }
        Panel left = gk15(g, worst.a, mid);
        Panel right = gk15(g, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        magnitude += left.magnitude + right.magnitude - worst.magnitude;
        panels.push(left);
        panels.push(right);
        ++splits;
    }
    // Recompute the sums from the panels to shed accumulated rounding.
    double v = 0, err = 0;
    while (!panels.empty()) {
        v += panels.top().value;
        err += panels.top().error;
        panels.pop();
    }
    return {v, err, splits};
}

QuadratureResult integrate_numeric(const Expr& integrand, double a, double b, const FloatContext& ctx) {
    const std::vector<double> values = ctx.values();
    return integrate([&](double t) { return eval_float_guarded(integrand, t, values); }, a, b, ctx.tolerance,
                     ctx.max_subdivisions);
}

QuadratureResult integrate_principal_value(const Expr& integrand, double a, double b, double c,
                                           const FloatContext& ctx) {
    if (!(a < c && c < b)) throw Error(ErrorCode::InvalidArgument, "principal value point must lie inside (a, b)");
    const std::vector<double> values = ctx.values();
    auto g = [&](double t) { return eval_float_guarded(integrand, t, values); };
    const double delta = std::min(c - a, b - c);
    // Snap u so that c + u and c - u are both exact; otherwise rounding of
    // t - c near the pole leaves an O(eps/u^2) residue that never cancels.
    auto folded = [&](double u) {
        const double exact_u = (c + u) - c;
        return g(c + exact_u) + g(c - exact_u);
    };
    QuadratureResult sym = integrate(folded, 0.0, delta, ctx.tolerance, ctx.max_subdivisions);
    QuadratureResult out = sym;
    if (c - delta > a) {
        QuadratureResult left = integrate(g, a, c - delta, ctx.tolerance, ctx.max_subdivisions);
        out.value += left.value;
        out.error += left.error;
        out.subdivisions += left.subdivisions;
    }
    if (c + delta < b) {
        QuadratureResult right = integrate(g, c + delta, b, ctx.tolerance, ctx.max_subdivisions);
        out.value += right.value;
        out.error += right.error;
        out.subdivisions += right.subdivisions;
    }
    return out;
}

double heuristic_radius(const std::vector<double>& coeffs) {
    if (coeffs.size() < 2 || coeffs[1] == 0)
        throw Error(ErrorCode::BadLowOrderTerms, "heuristic radius needs a nonzero linear coefficient");
    std::size_t K = coeffs.size() - 1;
    while (K > 1 && coeffs[K] == 0) --K;
    if (K == 1) return std::numeric_limits<double>::infinity();
    return std::pow(1e-6 * std::abs(coeffs[1]) / std::abs(coeffs[K]), 1.0 / static_cast<double>(K - 1));
}

std::vector<double> coefficients_float(const InverseSeries& H, const std::vector<double>& symbol_values) {
    std::vector<double> out;
    out.reserve(H.coeffs.size());
    for (const auto& c : H.coeffs) out.push_back(c.evaluate(symbol_values));
    return out;
}

NumericEvaluation inverse_eval_numeric(const InverseSeries& H, const Expr& f, double z, const FloatContext& ctx,
                                       std::optional<double> z0_numeric,
                                       std::optional<std::array<double, 3>> redheffer) {
    const std::vector<double> values = ctx.values();
    NumericEvaluation r;
    r.z = z;
    if (H.z0) {
        r.z0 = H.z0->evaluate(values);
    } else if (z0_numeric) {
        r.z0 = *z0_numeric;
    } else {
        throw Error(ErrorCode::InvalidArgument, "z0 is not exact and no numeric value was supplied");
    }
    std::vector<double> c = coefficients_float(H, values);
    if (redheffer) {
        r.radius = redheffer_radius((*redheffer)[0], (*redheffer)[1], (*redheffer)[2]);
        r.radius_kind = "redheffer";
    } else {
        r.radius = heuristic_radius(c);
        r.radius_kind = "heuristic";
    }
    const double w = z - r.z0;
    r.radius_exceeded = std::abs(w) > r.radius;
    double acc = 0;
    for (std::size_t k = c.size(); k-- > 1;) acc = (acc + c[k]) * w;
    r.value = c[0] + acc;

    Expr integrand = simplify(Expr::pow(f, ExactScalar(-1)));
    const double b = c[0];
    QuadratureResult q = integrate_numeric(integrand, b, r.value, ctx);
    r.residual = std::abs(r.z0 + q.value - z);
    return r;
}

} // namespace nestinv
