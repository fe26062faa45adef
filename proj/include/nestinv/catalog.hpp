#pragma once

// Named inversion problems with their published coefficient tables. The
// entries live in data/catalog.json, which is compiled into the library.

#include "nestinv/inverse.hpp"
#include "nestinv/numeric.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nestinv {

struct ExpectedValue {
    int n = 0;
    std::string text;       // as stored
    ExactScalar value;      // parsed
    std::string label;      // human-readable form of the published value
    bool suspect = false;   // published value believed to be a misprint
};

struct CatalogEntry {
    std::string name;
    std::string description;
    std::string function_text;
    std::string point_text;
    std::string lower_text;             // lower limit a of h(x) = integral_a^x dt/f(t)
    std::vector<std::string> symbol_names;
    std::vector<std::string> atoms;     // PointValuation declarations
    std::vector<std::pair<std::string, std::string>> bindings;  // float values, in order

    bool z0_exact = true;               // z0 = 0 because b = a
    std::optional<std::string> principal_value_at;  // pole of 1/f inside [a, b]
    std::optional<double> z0_reference;
    double z0_reference_tolerance = 0;

    std::optional<ExpectedValue> f_at_b;
    std::vector<ExpectedValue> expected_nested;
    std::vector<ExpectedValue> expected_coeffs;
    bool bernoulli_identity = false;    // D^{2k}(0) of x^2+1 from Bernoulli numbers

    SymbolSetPtr symbols;
    Expr f;
    PointValuation at;

    /// InverseProblem with H through (z - z0)^order.
    InverseProblem problem(int order) const;
    /// Float bindings for every symbol.
    FloatContext float_context() const;
    /// z0 = integral_a^b dt/f(t), numerically (principal value if flagged).
    QuadratureResult z0_numeric(const FloatContext& ctx) const;
};

/// Error(UnknownEntry) for unknown names.
const CatalogEntry& catalog_get(std::string_view name);
std::vector<std::string> catalog_list();

/// B_n from sum_{k=0}^{n} C(n+1, k) B_k = 0, B_0 = 1 (so B_1 = -1/2).
BigRational bernoulli(unsigned n);

/// (2/(k+1)) 4^k (4^{k+1} - 1) |B_{2(k+1)}|, the closed form of
/// D^{2k}[x^2 + 1](0) for k >= 1.
BigRational tangent_nested_value(unsigned k);

struct VerifyRow {
    std::string kind;   // "nested", "coefficient" or "f(b)"
    int n = 0;
    std::string label;
    std::string expected;
    std::string computed;
    bool match = false;
    bool suspect = false;
};

struct VerifyReport {
    std::string name;
    int order = 0;
    std::vector<VerifyRow> rows;
    bool composition_residual_zero = false;
    int residual_order = 0;
    bool pass = false;          // every non-suspect row matches and the residual vanishes
    int suspect_mismatches = 0;

    std::string to_text() const;
    std::string to_json() const;
};

/// Nested derivatives D^0..D^N and H through (z - z0)^{N+1}, compared
/// exactly with the stored tables (rows with n beyond the computed range are
/// skipped), plus the exact composition residual.
VerifyReport verify_entry(std::string_view name, int N);

/// The generic reversion example: h = a1 t + ... + a5 t^5 in symbols a1..a5;
/// nested values D^1..D^4 of f = 1/h' at 0 and H through z^5, compared with
/// the published displays.
VerifyReport verify_reversion_example();

} // namespace nestinv
