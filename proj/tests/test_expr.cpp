#include "support.hpp"

#include "nestinv/error.hpp"
#include "nestinv/expr.hpp"
#include "nestinv/numeric.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>

using namespace nestinv;
using testsupport::random_rational;
using testsupport::uniform_int;
using testsupport::uniform_real;

namespace {

SymbolSetPtr syms() {
    static SymbolSetPtr s = make_symbols({"p", "pi", "nu", "T"});
    return s;
}

const std::vector<double> kValues{0.7, M_PI, 1.5, std::pow(2.0, 1.5)};

Expr P(std::string_view text) { return parse_expression(text, syms()); }
ExactScalar S(std::string_view text) { return parse_scalar(text, syms()); }

double fl(const Expr& e, double x) { return eval_float(e, x, kValues); }

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::InvalidArgument;
}

Expr leaf() {
    switch (uniform_int(0, 3)) {
    case 0:
    case 1:
        return Expr::var();
    case 2:
        return Expr::constant(ExactScalar(random_rational(3, 4)));
    default:
        return Expr::constant(ExactScalar::symbol(syms(), "p"));
    }
}

/// Random tree over x, rationals and p. Logarithms and fractional powers are
/// applied to 1 + u^2 so they stay real.
Expr random_tree(int depth) {
    if (depth == 0) return leaf();
    Expr a = random_tree(depth - 1);
    auto positive = [&](const Expr& u) { return Expr::constant(ExactScalar(1)) + Expr::pow(u, ExactScalar(2)); };
    switch (uniform_int(0, 8)) {
    case 0:
        return a + random_tree(depth - 1);
    case 1:
        return a * random_tree(depth - 1);
    case 2:
        return a - random_tree(depth - 1);
    case 3:
        return Expr::pow(a, ExactScalar(uniform_int(2, 4)));
    case 4:
        return Expr::pow(positive(a), ExactScalar(BigRational(uniform_int(-3, 3), 2)));
    case 5:
        return Expr::prim(PrimKind::Exp, a * Expr::constant(ExactScalar(BigRational(1, 2))));
    case 6:
        return Expr::prim(PrimKind::Sin, a);
    case 7:
        return Expr::prim(PrimKind::Cos, a);
    default:
        return Expr::prim(PrimKind::Ln, positive(a));
    }
}

bool close(double a, double b, double rel) {
    return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

} // namespace

TEST_CASE("parser precedence and folding") {
    CHECK(fl(P("1+2*x^2"), 3) == doctest::Approx(19));
    CHECK(fl(P("-x^2"), 3) == doctest::Approx(-9));
    CHECK(fl(P("x/2/3"), 6) == doctest::Approx(1));
    CHECK(fl(P("2^3*x"), 1) == doctest::Approx(8));
    CHECK(fl(P("x^(1/2)"), 4) == doctest::Approx(2));
    CHECK(fl(P("sqrt(x)"), 9) == doctest::Approx(3));
    CHECK(fl(P("(x+1)^(-1)"), 1) == doctest::Approx(0.5));
    CHECK(fl(P("x^(nu)"), 4) == doctest::Approx(8));
    CHECK(fl(P("0.25*x"), 4) == doctest::Approx(1));
    CHECK(P("3/2").is_const());
    CHECK(P("3/2").value() == ExactScalar(BigRational(3, 2)));
    CHECK(P("2^3").value() == ExactScalar(8));
    CHECK(S("(p^2+4)/2") == S("p^2/2+2"));
    CHECK(S("pi/2") * ExactScalar(2) == ExactScalar::symbol(syms(), "pi"));
}

TEST_CASE("parser errors") {
    CHECK(code_of([] { P("1+"); }) == ErrorCode::SyntaxError);
    CHECK(code_of([] { P("sin(x"); }) == ErrorCode::SyntaxError);
    CHECK(code_of([] { P("x)"); }) == ErrorCode::SyntaxError);
    CHECK(code_of([] { P("y*x"); }) == ErrorCode::UnknownSymbol);
    CHECK(code_of([] { P("2^x"); }) == ErrorCode::SyntaxError);
    CHECK(code_of([] { S("x+1"); }) != ErrorCode::UnmappedAtom);
    try {
        P("x + $");
        FAIL("expected an error");
    } catch (const SyntaxError& e) {
        CHECK(e.position() == 4);
    }
}

TEST_CASE("simplification") {
    CHECK(simplify(P("x*x*x")).to_string() == simplify(P("x^3")).to_string());
    CHECK(simplify(P("(x+1)^2 - x^2 - 2*x")).to_string() == "1");
    CHECK(simplify(P("exp(0) + ln(1) + sin(0) + cos(0)")).to_string() == "2");
    CHECK(simplify(P("x^(1/2)*x^(1/2)")).to_string() == "x");
    CHECK(simplify(P("sin(x) - sin(x)")).is_zero());
    CHECK(simplify(P("p*x/p")).to_string() == "x");
}

TEST_CASE("derivatives") {
    CHECK(differentiate(P("x^3")) == simplify(P("3*x^2")));
    CHECK(differentiate(P("exp(2*x)")) == simplify(P("2*exp(2*x)")));
    CHECK(differentiate(P("ln(x)")) == simplify(P("x^(-1)")));
    CHECK(differentiate(P("sin(x)*cos(x)")) == simplify(P("cos(x)^2 - sin(x)^2")));
    CHECK(differentiate(P("sqrt(1-p^2*sin(x)^2)")) ==
          simplify(P("-p^2*sin(x)*cos(x)*(1-p^2*sin(x)^2)^(-1/2)")));
    CHECK(differentiate(P("x^(nu)")) == simplify(P("nu*x^(nu-1)")));
    CHECK(differentiate(P("p^2")).is_zero());
}

TEST_CASE("simplification preserves values on random trees") {
    int checked = 0;
    while (checked < 500) {
        Expr e = random_tree(uniform_int(1, 4));
        Expr s = simplify(e);
        const double x = uniform_real(0.2, 1.3);
        double a, b;
        try {
            a = fl(e, x);
            b = fl(s, x);
        } catch (const Error&) {
            continue;
        }
        if (!std::isfinite(a) || std::abs(a) > 1e8) continue;
        CHECK_MESSAGE(close(a, b, 1e-9), e.to_string(), " -> ", s.to_string());
        ++checked;
    }
}

TEST_CASE("render then parse gives the same function") {
    for (int i = 0; i < 300; ++i) {
        Expr e = simplify(random_tree(uniform_int(1, 4)));
        Expr back = P(e.to_string());
        const double x = uniform_real(0.2, 1.3);
        double a = fl(e, x);
        if (!std::isfinite(a) || std::abs(a) > 1e8) continue;
        CHECK_MESSAGE(close(a, fl(back, x), 1e-9), e.to_string());
    }
}

TEST_CASE("differentiation is linear and matches finite differences") {
    int checked = 0;
    while (checked < 200) {
        Expr a = random_tree(uniform_int(1, 3)), b = random_tree(uniform_int(1, 3));
        const double x = uniform_real(0.3, 1.2);
        double lhs, rhs, fd;
        try {
            lhs = fl(differentiate(a + b), x);
            rhs = fl(differentiate(a), x) + fl(differentiate(b), x);
            const double h = 1e-5;
            fd = (fl(a, x + h) - fl(a, x - h)) / (2 * h);
        } catch (const Error&) {
            continue;
        }
        if (!std::isfinite(lhs) || std::abs(lhs) > 1e6) continue;
        CHECK(close(lhs, rhs, 1e-9));
        CHECK_MESSAGE(close(fl(differentiate(a), x), fd, 1e-5), a.to_string());
        ++checked;
    }
}

TEST_CASE("exact evaluation at a point") {
    PointValuation at(S("pi/2"));
    at.declare("sin(pi/2)=1", syms());
    at.declare("cos(pi/2)=0", syms());
    CHECK(evaluate(P("x/sin(x)"), at) == S("pi/2"));
    CHECK(evaluate(differentiate(P("x/sin(x)")), at) == ExactScalar(1));
    CHECK(code_of([&] { evaluate(P("exp(x)"), at); }) == ErrorCode::UnmappedAtom);

    PointValuation half(ExactScalar(BigRational(1, 2)));
    CHECK(code_of([&] { evaluate(P("sqrt(x)"), half); }) == ErrorCode::UnmappedAtom);
    CHECK(evaluate(simplify(P("sqrt(x)*sqrt(x)")), half) == ExactScalar(BigRational(1, 2)));
    CHECK(evaluate(P("(x/2)^(1/2)"), half) == ExactScalar(BigRational(1, 2)));
    CHECK(evaluate(P("exp(x-1/2) + ln(2*x)"), half) == ExactScalar(1));
}

TEST_CASE("power rules for symbolic exponents") {
    PointValuation at(ExactScalar(BigRational(1, 2)));
    at.declare("2^(nu)=T", syms());
    const ExactScalar T = ExactScalar::symbol(syms(), "T");
    CHECK(evaluate(P("x^(1-nu)"), at) == T / ExactScalar(2));
    CHECK(evaluate(P("4^(nu)"), at) == T * T);
    CHECK(evaluate(P("8^(nu/3+1)"), at) == T * ExactScalar(8));
    CHECK(evaluate(P("(1/4)^(nu+1)"), at) == (T * T * ExactScalar(4)).inv());
    CHECK(code_of([&] { evaluate(P("x^(nu/2)"), at); }) == ErrorCode::UnmappedAtom);
    CHECK(code_of([&] { evaluate(P("3^(nu)"), at); }) == ErrorCode::UnmappedAtom);
}

TEST_CASE("catalog-style functions keep their values under simplification") {
    const char* fs[] = {"exp(-x)", "x^2+1", "sqrt(1-p^2*sin(x)^2)", "exp(-x)/(x+1)", "exp(x)*x^(1-nu)",
                        "x/sin(x)", "ln(x)", "x^(1-nu)*(1-x)^(1-nu)"};
    for (const char* f : fs) {
        Expr e = P(f);
        for (int n = 0; n < 4; ++n) {
            const double x = uniform_real(0.2, 0.9);
            CHECK_MESSAGE(close(fl(e, x), fl(simplify(e), x), 1e-12), f);
            e = differentiate(e);
        }
    }
}
