#include "support.hpp"

#include "nestinv/catalog.hpp"
#include "nestinv/error.hpp"
#include "nestinv/oracles.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>

using namespace nestinv;

namespace {

ExactScalar sym(const CatalogEntry& e, std::string_view name) { return ExactScalar::symbol(e.symbols, name); }

std::vector<ExactScalar> nested(const CatalogEntry& e, int N, NestedPath path = NestedPath::Auto) {
    return nested_values(e.f, e.at, N, path);
}

} // namespace

TEST_CASE("catalog contents") {
    auto names = catalog_list();
    CHECK(names.size() == 9);
    for (const auto& n : names) {
        const CatalogEntry& e = catalog_get(n);
        CHECK(e.name == n);
        CHECK_FALSE(e.description.empty());
        auto ctx = e.float_context();
        for (double v : ctx.values()) CHECK(std::isfinite(v));
    }
    try {
        catalog_get("no_such_entry");
        FAIL("expected an error");
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::UnknownEntry);
    }
}

TEST_CASE("every entry verifies against its stored tables") {
    for (const auto& n : catalog_list()) {
        VerifyReport rep = verify_entry(n, 10);
        CHECK_MESSAGE(rep.pass, rep.to_text());
        CHECK(rep.composition_residual_zero);
        CHECK(rep.residual_order == 11);
        CHECK(rep.suspect_mismatches == (n == "elliptic_amplitude" ? 1 : 0));
        auto j = nlohmann::json::parse(rep.to_json());
        CHECK(j["pass"] == rep.pass);
    }
}

TEST_CASE("suspected misprints are reported with both values") {
    VerifyReport am = verify_entry("elliptic_amplitude", 10);
    const std::string text = am.to_text();
    CHECK(text.find("307682") != std::string::npos);
    CHECK(text.find("30768") != std::string::npos);
    bool found = false;
    for (const auto& row : am.rows)
        if (row.suspect && !row.match) {
            found = true;
            CHECK(row.kind == "nested");
            CHECK(row.n == 10);
        }
    CHECK(found);

    VerifyReport rev = verify_reversion_example();
    CHECK(rev.pass);
    CHECK(rev.composition_residual_zero);
    CHECK(rev.suspect_mismatches == 2);
}

TEST_CASE("lambert: D^n(0) = (-(n+1))^n for n <= 12") {
    auto d = nested(catalog_get("lambert_w"), 12);
    for (int n = 0; n <= 12; ++n) CHECK(d[n] == ExactScalar(-(n + 1)).pow(n));
}

TEST_CASE("inverse erf: D^(2k)(0) = A_k s^(2k)") {
    const CatalogEntry& e = catalog_get("inverse_erf");
    const long A[] = {1, 2, 28, 1016, 69904, 7796768, 1282366912, 291885678464L};
    auto d = nested(e, 14);
    const ExactScalar s = sym(e, "s");
    for (int k = 0; k <= 7; ++k) {
        CHECK(d[2 * k] == ExactScalar(A[k]) * s.pow(2 * k));
        if (k < 7) CHECK(d[2 * k + 1].is_zero());
    }
}

TEST_CASE("inverse li: D^n(1/w) = A_n w^n") {
    const CatalogEntry& e = catalog_get("inverse_log_integral");
    const long A[] = {0, 1, 0, -1, 2, 1, -26, 99, 90, -3627};
    auto d = nested(e, 9);
    const ExactScalar w = sym(e, "w");
    for (int n = 1; n <= 9; ++n) CHECK(d[n] == ExactScalar(A[n]) * w.pow(n));
}

TEST_CASE("elliptic amplitude: am(p; z) = z - p^2 z^3/3! + p^2 (p^2+4) z^5/5! - ...") {
    const CatalogEntry& e = catalog_get("elliptic_amplitude");
    InverseSeries H = invert(e.problem(5));
    const ExactScalar p2 = sym(e, "p").pow(2);
    CHECK(H.coeffs[1] == ExactScalar(1));
    CHECK(H.coeffs[2].is_zero());
    CHECK(H.coeffs[3] == -p2 / ExactScalar(6));
    CHECK(H.coeffs[4].is_zero());
    CHECK(H.coeffs[5] == p2 * (p2 + ExactScalar(4)) / ExactScalar(120));
}

TEST_CASE("tangent: Bernoulli identity and reversion of arctan") {
    for (unsigned k = 1; k <= 5; ++k) {
        // (2/(k+1)) 4^k (4^(k+1) - 1) |B_(2(k+1))| computed here from scratch.
        BigRational b = bernoulli(2 * (k + 1));
        BigRational closed = BigRational(2, k + 1) * BigRational(1UL << (2 * k)) *
                             BigRational((1UL << (2 * (k + 1))) - 1) * abs(b);
        CHECK(tangent_nested_value(k) == closed);
    }
    auto d = nested(catalog_get("tangent"), 10);
    for (unsigned k = 1; k <= 5; ++k) CHECK(d[2 * k] == ExactScalar(tangent_nested_value(k)));

    InverseSeries H = invert(catalog_get("tangent").problem(11));
    std::vector<ExactScalar> atan(12);
    for (int j = 0; 2 * j + 1 <= 11; ++j) atan[2 * j + 1] = ExactScalar(BigRational(j % 2 ? -1 : 1, 2 * j + 1));
    PowerSeries tan = revert(PowerSeries(atan, "t"));
    for (int n = 0; n <= 11; ++n) CHECK(H.coeffs[n] == tan[n]);
}

TEST_CASE("bernoulli numbers") {
    CHECK(bernoulli(0) == 1);
    CHECK(bernoulli(1) == BigRational(-1, 2));
    CHECK(bernoulli(2) == BigRational(1, 6));
    CHECK(bernoulli(3) == 0);
    CHECK(bernoulli(4) == BigRational(-1, 30));
    CHECK(bernoulli(6) == BigRational(1, 42));
    CHECK(bernoulli(10) == BigRational(5, 66));
    CHECK(bernoulli(12) == BigRational(-691, 2730));
}

TEST_CASE("incomplete beta: Q_1 = mu - nu, Q_2 symmetric, Q_3 divisible by mu - nu") {
    const CatalogEntry& e = catalog_get("inverse_incomplete_beta");
    auto d = nested(e, 3);
    const ExactScalar nu = sym(e, "nu"), mu = sym(e, "mu");
    const ExactScalar scale = sym(e, "T") * sym(e, "U") / ExactScalar(2);
    std::vector<ExactScalar> Q(4);
    for (int n = 1; n <= 3; ++n) Q[n] = d[n] / scale.pow(n);
    CHECK(Q[1] == mu - nu);
    for (int n = 2; n <= 3; ++n) CHECK(Q[n].is_polynomial());
    CHECK(Q[3].num().divide_exact((mu - nu).num()).has_value());
    CHECK_FALSE(Q[2].num().divide_exact((mu - nu).num()).has_value());
    for (int i = 0; i < 20; ++i) {
        const double a = testsupport::uniform_real(0.5, 4), b = testsupport::uniform_real(0.5, 4);
        std::vector<double> ab{a, b, 0, 0}, ba{b, a, 0, 0};
        CHECK(Q[2].evaluate(ab) == doctest::Approx(Q[2].evaluate(ba)).epsilon(1e-12));
        CHECK(Q[3].evaluate(ab) == doctest::Approx(-Q[3].evaluate(ba)).epsilon(1e-12));
    }
}

TEST_CASE("expression and series paths agree on every entry") {
    for (const auto& n : catalog_list()) {
        const CatalogEntry& e = catalog_get(n);
        CHECK_MESSAGE(nested(e, 10, NestedPath::Expression) == nested(e, 10, NestedPath::Series), n);
    }
}

TEST_CASE("inverse coefficients match an independent rational reversion") {
    // h(t) in closed form for the three rational entries.
    const int N = 12;
    std::vector<std::pair<std::string, testsupport::RatSeries>> cases;
    testsupport::RatSeries ln(N + 1, BigRational(0)), lw(N + 1, BigRational(0)), at(N + 1, BigRational(0));
    for (int k = 1; k <= N; ++k) {
        ln[k] = BigRational(1) / factorial(k);      // e^t - 1
        lw[k] = BigRational(1) / factorial(k - 1);  // t e^t
        if (k % 2) at[k] = BigRational((k / 2) % 2 ? -1 : 1, k);  // arctan t
    }
    cases = {{"natural_log", ln}, {"lambert_w", lw}, {"tangent", at}};
    for (const auto& [name, h] : cases) {
        auto g = testsupport::rat_revert(h, N);
        InverseSeries H = invert(catalog_get(name).problem(N));
        for (int n = 0; n <= N; ++n) CHECK_MESSAGE(H.coeffs[n] == ExactScalar(g[n]), name, " n = ", n);
    }
}
