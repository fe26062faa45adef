#include "support.hpp"

#include "nestinv/catalog.hpp"
#include "nestinv/error.hpp"
#include "nestinv/nested.hpp"
#include "nestinv/oracles.hpp"

#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <numeric>

using namespace nestinv;
using testsupport::random_rational;
using testsupport::random_reversible_series;

namespace {

SymbolSetPtr asyms() {
    static SymbolSetPtr s = make_symbols({"a1", "a2", "a3", "a4", "a5"});
    return s;
}

ExactScalar a(int k) { return ExactScalar::symbol(asyms(), "a" + std::to_string(k)); }

PowerSeries generic(int N) {
    std::vector<ExactScalar> c(N + 1);
    for (int k = 1; k <= N; ++k) c[k] = a(k);
    return PowerSeries(c, "t");
}

/// Determinant by permutation expansion (independent of elimination).
BigRational leibniz(const std::vector<std::vector<BigRational>>& m) {
    const int n = static_cast<int>(m.size());
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    BigRational det(0);
    do {
        int inversions = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
        BigRational term(inversions % 2 ? -1 : 1);
        for (int i = 0; i < n; ++i) term *= m[i][perm[i]];
        det += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

} // namespace

TEST_CASE("five sources agree on random series") {
    for (int i = 0; i < 100; ++i) {
        PowerSeries h = random_reversible_series(8);
        OracleReport rep = oracle_agreement(h, 8);
        REQUIRE(rep.tables.size() == 5);
        CHECK(rep.pass);
        testsupport::RatSeries hr;
        for (const auto& c : h.coeffs()) hr.push_back(*c.as_rational());
        testsupport::RatSeries g = testsupport::rat_revert(hr, 8);
        for (const auto& t : rep.tables)
            for (int n = 1; n <= 8; ++n) CHECK_MESSAGE(t.coeffs[n] == ExactScalar(g[n]), t.source, " n = ", n);
    }
}

TEST_CASE("simple reversions") {
    // h = t e^t: b_n = (-1)^(n-1) n^(n-1) / n!.
    std::vector<ExactScalar> c(9);
    for (int k = 1; k <= 8; ++k) c[k] = ExactScalar(BigRational(1) / factorial(k - 1));
    OracleReport rep = oracle_agreement(PowerSeries(c, "t"), 8);
    CHECK(rep.pass);
    for (int n = 1; n <= 8; ++n) {
        BigRational expect(1);
        for (int j = 0; j < n - 1; ++j) expect *= n;
        expect /= factorial(n);
        if (n % 2 == 0) expect = -expect;
        CHECK(rep.tables[0].coeffs[n] == ExactScalar(expect));
    }
    CHECK(rep.tables[0].coeffs[3] == ExactScalar(BigRational(3, 2)));

    PowerSeries t = PowerSeries::identity(5, "t");
    for (const auto& table : oracle_agreement(t, 5).tables) {
        CHECK(table.coeffs[1] == ExactScalar(1));
        for (int n = 2; n <= 5; ++n) CHECK(table.coeffs[n].is_zero());
    }

    // h = t + t^2: signed Catalan numbers, b_4 = -5.
    std::vector<ExactScalar> q{ExactScalar(0), ExactScalar(1), ExactScalar(1), ExactScalar(0), ExactScalar(0)};
    for (const auto& table : oracle_agreement(PowerSeries(q, "t"), 4).tables)
        CHECK_MESSAGE(table.coeffs[4] == ExactScalar(-5), table.source);
}

TEST_CASE("symbolic closed forms") {
    std::vector<ExactScalar> av{ExactScalar(0), a(1), a(2), a(3), a(4), a(5)};
    CHECK(whittaker_coefficient(av, 2) == -a(2) / a(1).pow(3));
    CHECK(whittaker_coefficient(av, 3) == (ExactScalar(2) * a(2) * a(2) - a(1) * a(3)) / a(1).pow(5));
    CHECK(morse_feshbach_coefficient(av, 1) == a(1).inv());
    CHECK(morse_feshbach_coefficient(av, 2) == -a(2) / a(1).pow(3));
    std::vector<ExactScalar> ones{ExactScalar(0), ExactScalar(1), ExactScalar(1), ExactScalar(1)};
    CHECK(whittaker_coefficient(ones, 3) == ExactScalar(1));

    OracleReport rep = oracle_agreement(generic(5), 5);
    CHECK(rep.pass);
    for (const auto& t : rep.tables)
        CHECK(t.coeffs[3] == (ExactScalar(2) * a(2) * a(2) - a(1) * a(3)) / a(1).pow(5));
}

TEST_CASE("nested derivatives of 1/h' for the generic series") {
    PowerSeries h = generic(5);
    PowerSeries F = h.derivative().reciprocal();
    auto D = nested_values_series(F, 4);
    CHECK(D[1] == ExactScalar(-2) * a(2) / a(1).pow(2));
    CHECK(D[2] == ExactScalar(6) * (ExactScalar(2) * a(2) * a(2) - a(1) * a(3)) / a(1).pow(4));
}

TEST_CASE("whittaker and morse-feshbach agree with reversion on random data") {
    for (int i = 0; i < 30; ++i) {
        PowerSeries h = random_reversible_series(6);
        PowerSeries r = revert(h);
        std::vector<ExactScalar> av(h.coeffs().begin(), h.coeffs().end());
        CHECK(whittaker_coefficient(av, 5) == r[5]);
        CHECK(morse_feshbach_coefficient(av, 4) == r[4]);
        CHECK(morse_feshbach_coefficient(av, 6) == r[6]);
    }
    std::vector<ExactScalar> short_a{ExactScalar(0), ExactScalar(1), ExactScalar(2)};
    try {
        whittaker_coefficient(short_a, 4);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::IndexOutOfRange);
    }
}

TEST_CASE("bareiss determinant") {
    for (int i = 0; i < 50; ++i) {
        const int n = testsupport::uniform_int(1, 5);
        std::vector<std::vector<BigRational>> m(n, std::vector<BigRational>(n));
        std::vector<std::vector<ExactScalar>> me(n, std::vector<ExactScalar>(n));
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                // Plenty of zeros so that pivoting is exercised.
                m[r][c] = testsupport::uniform_int(0, 2) == 0 ? BigRational(0) : random_rational(4, 3);
                me[r][c] = ExactScalar(m[r][c]);
            }
        CHECK(bareiss_determinant(me) == ExactScalar(leibniz(m)));
    }
    std::vector<std::vector<ExactScalar>> sym{{a(1), a(2)}, {a(3), a(4)}};
    CHECK(bareiss_determinant(sym) == a(1) * a(4) - a(2) * a(3));
}

TEST_CASE("partitions") {
    const int counts[] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
    for (int n = 1; n <= 10; ++n) {
        auto ps = partitions(n);
        CHECK(static_cast<int>(ps.size()) == counts[n]);
        for (const auto& m : ps) {
            int total = 0;
            for (std::size_t j = 1; j < m.size(); ++j) total += static_cast<int>(j) * m[j];
            CHECK(total == n);
        }
    }
}

TEST_CASE("catalog problems and report formats") {
    OracleReport lambert = oracle_agreement(catalog_get("lambert_w").problem(8), 8);
    CHECK(lambert.pass);
    OracleReport erf = oracle_agreement(catalog_get("inverse_erf").problem(9), 9);
    CHECK(erf.pass);
    for (int n = 2; n <= 9; n += 2) CHECK(erf.tables[0].coeffs[n].is_zero());

    auto j = nlohmann::json::parse(lambert.to_json());
    CHECK(j["pass"] == true);
    CHECK(j["order"] == 8);
    CHECK(lambert.to_text().find("agree") != std::string::npos);
}
