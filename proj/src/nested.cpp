#include "nestinv/nested.hpp"

#include "nestinv/error.hpp"

namespace nestinv {

namespace {

void require_order(int N) {
    if (N < 0) throw Error(ErrorCode::InvalidArgument, "order must be non-negative");
}

} // namespace

std::vector<Expr> nested_sequence_expr(const Expr& f, int N) {
    require_order(N);
    std::vector<Expr> seq;
    seq.reserve(static_cast<std::size_t>(N) + 1);
    seq.push_back(Expr::constant(ExactScalar(1)));
    for (int n = 1; n <= N; ++n) seq.push_back(differentiate(f * seq.back()));
    return seq;
}

std::vector<ExactScalar> nested_values_expr(const Expr& f, const PointValuation& at, int N) {
    std::vector<ExactScalar> out;
    for (const auto& d : nested_sequence_expr(f, N)) out.push_back(evaluate(d, at));
    return out;
}

std::vector<ExactScalar> nested_values_series(const PowerSeries& F, int N) {
    require_order(N);
    if (F.order() < N)
        throw Error(ErrorCode::InsufficientOrder, "Taylor series of f known through t^" + std::to_string(F.order()) +
                                                      " but D^" + std::to_string(N) + " was requested");
    std::vector<ExactScalar> out{ExactScalar(1)};
    PowerSeries S = PowerSeries::constant(ExactScalar(1), F.order(), F.var());
    // F * S_{n-1} is known through t^(M-n+1); its derivative through t^(M-n).
    for (int n = 1; n <= N; ++n) {
        S = (F * S).derivative();
        out.push_back(S[0]);
    }
    return out;
}

PowerSeries taylor_series(const Expr& f, const PointValuation& at, int order, std::string var) {
    require_order(order);
    std::vector<ExactScalar> c;
    c.reserve(static_cast<std::size_t>(order) + 1);
    Expr d = simplify(f);
    for (int k = 0; k <= order; ++k) {
        if (k > 0) d = differentiate(d);
        c.push_back(evaluate(d, at) / ExactScalar(factorial(static_cast<unsigned>(k))));
    }
    return PowerSeries(std::move(c), std::move(var));
}

std::vector<ExactScalar> nested_values(const Expr& f, const PointValuation& at, int N, NestedPath path) {
    if (path == NestedPath::Auto) path = N <= kExpressionPathMaxOrder ? NestedPath::Expression : NestedPath::Series;
    if (path == NestedPath::Expression) return nested_values_expr(f, at, N);
    return nested_values_series(taylor_series(f, at, N), N);
}

CrossCheckReport nested_cross_check(const Expr& f, const PointValuation& at, const PowerSeries& fseries, int N) {
    CrossCheckReport r;
    r.expression_values = nested_values_expr(f, at, N);
    r.series_values = nested_values_series(fseries, N);
    r.pass = true;
    for (int n = 0; n <= N; ++n) {
        bool eq = r.expression_values[n] == r.series_values[n];
        r.equal.push_back(eq);
        r.pass = r.pass && eq;
    }
    return r;
}

GfCheckReport gf_check(GfCase which, const BigRational& r, int N, const std::vector<BigRational>& samples) {
    require_order(N);
    if (samples.empty()) throw Error(ErrorCode::InvalidArgument, "gf_check needs at least one sample point");
    GfCheckReport rep;
    rep.which = which;
    rep.r = which == GfCase::Identity ? BigRational(1) : r;
    rep.order = N;
    if (which == GfCase::Power && r == 1)
        throw Error(ErrorCode::InvalidArgument, "f = x^r with r = 1 is the identity case");

    Expr f = which == GfCase::Identity ? Expr::var() : Expr::pow(Expr::var(), ExactScalar(r));
    std::vector<Expr> seq = nested_sequence_expr(f, N);

    const BigRational rm1 = rep.r - 1;
    const unsigned root_den = static_cast<unsigned>(rm1.get_den().get_ui());
    rep.pass = true;
    for (const auto& y : samples) {
        if (y <= 0) throw Error(ErrorCode::InvalidArgument, "gf_check sample points must be positive");
        BigRational x = y;
        if (which == GfCase::Power) {
            x = 1;
            for (unsigned i = 0; i < root_den; ++i) x *= y;
        }
        PointValuation at{ExactScalar(x)};
        GfCheckReport::Row row;
        row.x = x;
        for (int n = 0; n <= N; ++n) {
            const BigRational nf = factorial(static_cast<unsigned>(n));
            row.computed.push_back(evaluate(seq[n], at) / ExactScalar(nf));
            if (which == GfCase::Identity) {
                row.closed_form.push_back(ExactScalar(1 / nf));
            } else {
                // [1 + c z]^alpha = sum binom(alpha, n) c^n z^n, c = (1-r) x^(r-1).
                const BigRational alpha = rep.r / (1 - rep.r);
                ExactScalar xr = *at.lookup_pow(ExactScalar(x), ExactScalar(rm1));
                ExactScalar c = ExactScalar(BigRational(1 - rep.r)) * xr;
                row.closed_form.push_back(ExactScalar(binomial(alpha, static_cast<unsigned>(n))) * c.pow(n));
            }
        }
        row.equal = row.computed == row.closed_form;
        rep.pass = rep.pass && row.equal;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

} // namespace nestinv
