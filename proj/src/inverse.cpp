#include "nestinv/inverse.hpp"

#include "nestinv/error.hpp"

#include <cmath>

namespace nestinv {

PowerSeries InverseSeries::shifted_series(std::string var) const {
    std::vector<ExactScalar> c = coeffs;
    c[0] = ExactScalar(0);
    return PowerSeries(std::move(c), std::move(var));
}

InverseSeries invert(const InverseProblem& p, NestedPath path) {
    if (p.order < 1) throw Error(ErrorCode::InvalidArgument, "inverse series order must be at least 1");
    if (!p.at.has_point()) throw Error(ErrorCode::InvalidArgument, "inverse problem needs an expansion point");
    InverseSeries H;
    H.b = p.at.point();
    H.z0 = p.z0;
    try {
        H.f_at_b = evaluate(p.f, p.at);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::DivisionByZero)
            throw Error(ErrorCode::SingularPoint, "f is singular at b = " + H.b.to_string() + "; choose another point");
        throw;
    }
    if (H.f_at_b.is_zero())
        throw Error(ErrorCode::SingularPoint, "f(b) = 0 at b = " + H.b.to_string() + "; choose another point");

    H.nested = nested_values(p.f, p.at, p.order - 1, path);
    H.coeffs.reserve(static_cast<std::size_t>(p.order) + 1);
    H.coeffs.push_back(H.b);
    for (int n = 1; n <= p.order; ++n) {
        ExactScalar c = H.f_at_b * H.nested[n - 1] / ExactScalar(factorial(static_cast<unsigned>(n)));
        H.coeffs.push_back(std::move(c));
    }
    return H;
}

PowerSeries h_series(const Expr& f, const PointValuation& at, int order) {
    if (order < 1) throw Error(ErrorCode::InvalidArgument, "h series order must be at least 1");
    PowerSeries F = taylor_series(f, at, order - 1, "t");
    if (F[0].is_zero()) throw Error(ErrorCode::SingularPoint, "f(b) = 0; h'(b) would be infinite");
    return F.reciprocal().integral();
}

PowerSeries composition_residual(const PowerSeries& h, const InverseSeries& H) {
    if (h.order() < 1 || H.order() < 1)
        throw Error(ErrorCode::OrderMismatch, "composition residual needs both series through at least order 1");
    if (!h[0].is_zero())
        throw Error(ErrorCode::InvalidArgument, "h must be given relative to z0 (zero constant term)");
    PowerSeries inner = H.shifted_series("w");
    PowerSeries comp = compose(h, inner);
    return comp - PowerSeries::identity(comp.order(), "w");
}

double redheffer_radius(double a, double R, double M) {
    if (!(R > 0) || !(M > 0) || a == 0 || !std::isfinite(a) || !std::isfinite(R) || !std::isfinite(M))
        throw Error(ErrorCode::NonpositiveBound, "Redheffer radius needs R > 0, M > 0 and a != 0");
    return (a * R) * (a * R) / (4 * M);
}

} // namespace nestinv
