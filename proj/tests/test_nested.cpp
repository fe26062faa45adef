#include "support.hpp"

#include "nestinv/error.hpp"
#include "nestinv/nested.hpp"
#include "nestinv/numeric.hpp"

#include <doctest.h>

#include <cmath>

using namespace nestinv;
using testsupport::random_nonzero_rational;
using testsupport::random_rational;
using testsupport::uniform_int;

namespace {

SymbolSetPtr syms() {
    static SymbolSetPtr s = make_symbols({"p", "kappa"});
    return s;
}

Expr P(std::string_view text) { return parse_expression(text, syms()); }

BigRational pow_q(const BigRational& b, long k) {
    BigRational r(1);
    for (long i = 0; i < std::labs(k); ++i) r *= b;
    return k < 0 ? BigRational(1) / r : r;
}

/// prod_{j=1}^{n} (j r - (j - 1)).
BigRational power_rule_product(const BigRational& r, int n) {
    BigRational out(1);
    for (int j = 1; j <= n; ++j) out *= BigRational(j) * r - BigRational(j - 1);
    return out;
}

/// A random positive rational y^m, so that x^(1/m) is rational.
BigRational random_perfect_power(unsigned m, BigRational& root) {
    root = BigRational(uniform_int(1, 7), uniform_int(1, 5));
    root.canonicalize();
    return pow_q(root, m);
}

} // namespace

TEST_CASE("small closed forms") {
    auto d = nested_values_expr(P("exp(-x)"), PointValuation(ExactScalar(0)), 8);
    for (int n = 0; n <= 8; ++n) CHECK(d[n] == ExactScalar((n % 2 ? -1 : 1) * factorial(n)));

    auto seq = nested_sequence_expr(P("sqrt(1-p^2*sin(x)^2)"), 4);
    PointValuation zero(ExactScalar(0));
    const ExactScalar p = ExactScalar::symbol(syms(), "p");
    CHECK(evaluate(seq[1], zero) == ExactScalar(0));
    CHECK(evaluate(seq[2], zero) == -p * p);
    CHECK(evaluate(seq[4], zero) == p * p * p * p + ExactScalar(4) * p * p);
}

TEST_CASE("constants terminate the sequence") {
    for (int i = 0; i < 20; ++i) {
        Expr k = Expr::constant(ExactScalar(random_nonzero_rational()) * ExactScalar::symbol(syms(), "p"));
        auto seq = nested_sequence_expr(k, 5);
        CHECK(seq[0] == Expr::constant(ExactScalar(1)));
        for (int n = 1; n <= 5; ++n) CHECK(seq[n].is_zero());
    }
}

TEST_CASE("scaling: D^n[kappa f] = kappa^n D^n[f]") {
    const char* fs[] = {"x^2+1", "(1+x)^(-1)", "x^3-x+2", "(x+2)^(-2)", "x^2*(x+3)"};
    const ExactScalar kappa = ExactScalar::symbol(syms(), "kappa");
    int points = 0;
    for (const char* text : fs) {
        Expr f = P(text);
        Expr kf = Expr::constant(kappa) * f;
        for (int i = 0; i < 12; ++i) {
            BigRational x0 = random_rational(3, 5);
            if (x0 == -1 || x0 == -2) continue;
            PointValuation at{ExactScalar(x0)};
            auto a = nested_values_expr(f, at, 5);
            auto b = nested_values_expr(kf, at, 5);
            ExactScalar kn(1);
            for (int n = 0; n <= 5; ++n) {
                CHECK(b[n] == kn * a[n]);
                kn *= kappa;
            }
            // Also with a random rational kappa on the series path.
            BigRational k = random_nonzero_rational();
            auto c = nested_values_series(taylor_series(Expr::constant(ExactScalar(k)) * f, at, 5), 5);
            for (int n = 0; n <= 5; ++n) CHECK(c[n] == ExactScalar(pow_q(k, n)) * a[n]);
            ++points;
        }
    }
    CHECK(points >= 50);
}

TEST_CASE("power rule: D^n[x^r] = prod (j r - (j-1)) x^(n (r-1))") {
    int points = 0;
    while (points < 60) {
        BigRational r(uniform_int(-9, 9), uniform_int(1, 4));
        r.canonicalize();
        if (r == 1) continue;
        const unsigned m = static_cast<unsigned>(r.get_den().get_ui());
        BigRational y;
        BigRational x0 = random_perfect_power(m, y);  // x0^(1/m) = y
        Expr f = Expr::pow(Expr::var(), ExactScalar(r));
        auto d = nested_values_expr(f, PointValuation(ExactScalar(x0)), 6);
        // x0^(n (r - 1)) = y^(n m (r - 1)) with m (r - 1) an integer.
        const BigRational step = BigRational(m) * (r - 1);
        for (int n = 0; n <= 6; ++n) {
            const long e = n * step.get_num().get_si();
            CHECK_MESSAGE(d[n] == ExactScalar(power_rule_product(r, n) * pow_q(y, e)), "r = ", to_string(r),
                          " x = ", to_string(x0), " n = ", n);
        }
        ++points;
    }
}

TEST_CASE("exponential rule: D^n[e^(r x)] = n! r^n e^(n r x)") {
    for (int i = 0; i < 60; ++i) {
        BigRational r = random_nonzero_rational(3, 4);
        Expr f = Expr::prim(PrimKind::Exp, Expr::constant(ExactScalar(r)) * Expr::var());
        // Exactly at 0.
        auto d = nested_values(f, PointValuation(ExactScalar(0)), 7);
        for (int n = 0; n <= 7; ++n) CHECK(d[n] == ExactScalar(factorial(n) * pow_q(r, n)));
        // In floating point at a random point, from the symbolic sequence.
        auto seq = nested_sequence_expr(f, 5);
        const double x = testsupport::uniform_real(-1, 1), rd = r.get_d();
        for (int n = 0; n <= 5; ++n) {
            const double expect = factorial(n).get_d() * std::pow(rd, n) * std::exp(n * rd * x);
            CHECK(eval_float(seq[n], x, {0, 0}) == doctest::Approx(expect).epsilon(1e-12));
        }
    }
}

TEST_CASE("termination for r = k/(k+1)") {
    for (int k = 1; k <= 4; ++k) {
        const BigRational r(k, k + 1);
        Expr f = Expr::pow(Expr::var(), ExactScalar(r));
        auto seq = nested_sequence_expr(f, k + 3);
        for (int n = 0; n <= k; ++n) CHECK_FALSE(seq[n].is_zero());
        for (int n = k + 1; n <= k + 3; ++n) CHECK(seq[n].is_zero());
        CHECK(power_rule_product(r, k + 1) == 0);
        // And at random points on the series path.
        for (int i = 0; i < 15; ++i) {
            BigRational y;
            BigRational x0 = random_perfect_power(k + 1, y);
            auto d = nested_values_series(taylor_series(f, PointValuation(ExactScalar(x0)), k + 3), k + 3);
            for (int n = k + 1; n <= k + 3; ++n) CHECK(d[n].is_zero());
        }
    }
}

TEST_CASE("both paths agree") {
    const char* fs[] = {"exp(-x)", "x^2+1", "sqrt(1-p^2*sin(x)^2)", "exp(-x)/(x+1)", "cos(x)+2", "(1+x)^(1/3)"};
    PointValuation at(ExactScalar(0));
    for (const char* text : fs) {
        Expr f = P(text);
        auto rep = nested_cross_check(f, at, taylor_series(f, at, 9), 9);
        CHECK_MESSAGE(rep.pass, text);
        auto viaAuto = nested_values(f, at, 9, NestedPath::Auto);
        CHECK(viaAuto == rep.series_values);
    }
}

TEST_CASE("series path needs enough Taylor terms") {
    PointValuation at(ExactScalar(0));
    PowerSeries F = taylor_series(P("exp(x)"), at, 4);
    CHECK_NOTHROW(nested_values_series(F, 4));
    try {
        nested_values_series(F, 5);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InsufficientOrder);
    }
}

TEST_CASE("generating functions") {
    std::vector<BigRational> samples{BigRational(1), BigRational(2), BigRational(1, 3), BigRational(5, 2)};
    CHECK(gf_check(GfCase::Identity, BigRational(1), 8, samples).pass);
    for (auto r : {BigRational(2), BigRational(3), BigRational(1, 2), BigRational(-1), BigRational(5, 3)}) {
        auto rep = gf_check(GfCase::Power, r, 7, samples);
        CHECK_MESSAGE(rep.pass, to_string(r));
        CHECK(rep.rows.size() == samples.size());
    }
}
