#include "nestinv/catalog.hpp"

#include "nestinv/error.hpp"
#include "nestinv/nested.hpp"
#include "nestinv/oracles.hpp"

#include <json.hpp>

#include <cmath>
#include <limits>
#include <sstream>

namespace nestinv {

extern const char* const kCatalogJson;

namespace {

using nlohmann::json;

ExpectedValue read_expected(const json& j, const SymbolSetPtr& symbols) {
    ExpectedValue v;
    v.n = j.value("n", 0);
    v.text = j.at("value").get<std::string>();
    v.value = parse_scalar(v.text, symbols);
    v.label = j.value("label", v.text);
    v.suspect = j.value("status", "claimed") == "suspect";
    return v;
}

CatalogEntry read_entry(const json& j) {
    CatalogEntry e;
    e.name = j.at("name").get<std::string>();
    e.description = j.value("description", "");
    e.function_text = j.at("function").get<std::string>();
    e.point_text = j.at("point").get<std::string>();
    e.lower_text = j.value("lower", "0");
    e.symbol_names = j.value("symbols", std::vector<std::string>{});
    e.atoms = j.value("atoms", std::vector<std::string>{});
    for (const auto& b : j.value("bindings", json::array()))
        e.bindings.emplace_back(b.at(0).get<std::string>(), b.at(1).get<std::string>());
    const json& z0 = j.at("z0");
    e.z0_exact = z0.at("kind").get<std::string>() == "exact";
    if (z0.contains("principal_value_at")) e.principal_value_at = z0.at("principal_value_at").get<std::string>();
    if (z0.contains("reference")) {
        e.z0_reference = z0.at("reference").get<double>();
        e.z0_reference_tolerance = z0.value("reference_tolerance", 0.0);
    }
    e.bernoulli_identity = j.value("bernoulli_identity", false);

    e.symbols = make_symbols(e.symbol_names);
    e.f = parse_expression(e.function_text, e.symbols);
    e.at = PointValuation(parse_scalar(e.point_text, e.symbols));
    for (const auto& a : e.atoms) e.at.declare(a, e.symbols);

    if (j.contains("f_at_b")) e.f_at_b = read_expected(j.at("f_at_b"), e.symbols);
    const json& ex = j.value("expected", json::object());
    for (const auto& v : ex.value("nested", json::array())) e.expected_nested.push_back(read_expected(v, e.symbols));
    for (const auto& v : ex.value("coefficients", json::array()))
        e.expected_coeffs.push_back(read_expected(v, e.symbols));
    return e;
}

struct Catalog {
    std::vector<CatalogEntry> entries;
    json reversion_example;
};

const Catalog& catalog() {
    static const Catalog c = [] {
        Catalog out;
        json doc = json::parse(kCatalogJson);
        for (const auto& j : doc.at("entries")) out.entries.push_back(read_entry(j));
        out.reversion_example = doc.at("reversion_example");
        return out;
    }();
    return c;
}

VerifyRow compare_row(std::string kind, const ExpectedValue& ev, const ExactScalar& computed) {
    VerifyRow r;
    r.kind = std::move(kind);
    r.n = ev.n;
    r.label = ev.label;
    r.expected = ev.value.to_string();
    r.computed = computed.to_string();
    r.match = ev.value == computed;
    r.suspect = ev.suspect;
    return r;
}

void finish(VerifyReport& rep) {
    rep.pass = rep.composition_residual_zero;
    rep.suspect_mismatches = 0;
    for (const auto& r : rep.rows) {
        if (r.match) continue;
        if (r.suspect) {
            ++rep.suspect_mismatches;
        } else {
            rep.pass = false;
        }
    }
}

} // namespace

InverseProblem CatalogEntry::problem(int order) const {
    InverseProblem p;
    p.f = f;
    p.at = at;
    p.order = order;
    if (z0_exact) {
        p.z0 = ExactScalar(0);
    } else {
        p.z0.reset();
    }
    return p;
}

FloatContext CatalogEntry::float_context() const {
    FloatContext ctx(symbols);
    // Bindings may refer to symbols bound before them (e.g. T = 2^nu);
    // unbound symbols evaluate to NaN and are rejected.
    std::vector<double> values(symbols->size(), std::numeric_limits<double>::quiet_NaN());
    for (const auto& [name, text] : bindings) {
        auto idx = symbols->index_of(name);
        if (!idx) throw Error(ErrorCode::UnknownSymbol, "binding for undeclared symbol '" + name + "'");
        double v = eval_float(parse_expression(text, symbols), 0.0, values);
        if (!std::isfinite(v))
            throw Error(ErrorCode::InvalidArgument, "binding '" + name + " = " + text + "' is not a finite number");
        values[*idx] = v;
        ctx.bind(name, v);
    }
    return ctx;
}

QuadratureResult CatalogEntry::z0_numeric(const FloatContext& ctx) const {
    const std::vector<double> values = ctx.values();
    const double a = eval_float(parse_expression(lower_text, symbols), 0.0, values);
    const double b = at.point().evaluate(values);
    Expr integrand = simplify(Expr::pow(f, ExactScalar(-1)));
    if (principal_value_at) {
        const double c = eval_float(parse_expression(*principal_value_at, symbols), 0.0, values);
        return integrate_principal_value(integrand, a, b, c, ctx);
    }
    return integrate_numeric(integrand, a, b, ctx);
}

const CatalogEntry& catalog_get(std::string_view name) {
    for (const auto& e : catalog().entries)
        if (e.name == name) return e;
    throw Error(ErrorCode::UnknownEntry, "no catalog entry named '" + std::string(name) + "'");
}

std::vector<std::string> catalog_list() {
    std::vector<std::string> out;
    for (const auto& e : catalog().entries) out.push_back(e.name);
    return out;
}

BigRational bernoulli(unsigned n) {
    std::vector<BigRational> B(n + 1);
    B[0] = 1;
    for (unsigned m = 1; m <= n; ++m) {
        // sum_{k=0}^{m} C(m+1, k) B_k = 0  =>  B_m = -sum_{k<m} C(m+1, k) B_k / (m+1)
        BigRational s = 0;
        BigInt c = 1;  // C(m+1, 0)
        for (unsigned k = 0; k < m; ++k) {
            s += BigRational(c) * B[k];
            c = c * (m + 1 - k) / (k + 1);
        }
        B[m] = -s / (m + 1);
    }
    return B[n];
}

BigRational tangent_nested_value(unsigned k) {
    BigInt four_k, four_k1;
    mpz_ui_pow_ui(four_k.get_mpz_t(), 4, k);
    mpz_ui_pow_ui(four_k1.get_mpz_t(), 4, k + 1);
    return BigRational(2, k + 1) * BigRational(four_k) * BigRational(four_k1 - 1) * abs(bernoulli(2 * (k + 1)));
}

VerifyReport verify_entry(std::string_view name, int N) {
    if (N < 1) throw Error(ErrorCode::InvalidArgument, "verify order must be at least 1");
    const CatalogEntry& e = catalog_get(name);
    VerifyReport rep;
    rep.name = e.name;
    rep.order = N;

    InverseSeries H = invert(e.problem(N + 1));
    if (e.f_at_b) rep.rows.push_back(compare_row("f(b)", *e.f_at_b, H.f_at_b));
    for (const auto& ev : e.expected_nested)
        if (ev.n <= N) rep.rows.push_back(compare_row("nested", ev, H.nested[ev.n]));
    if (e.bernoulli_identity) {
        for (unsigned k = 1; static_cast<int>(2 * k) <= N; ++k) {
            ExpectedValue ev;
            ev.n = static_cast<int>(2 * k);
            ev.value = ExactScalar(tangent_nested_value(k));
            ev.label = "(2/(k+1)) 4^k (4^(k+1)-1) |B_(2k+2)|, k = " + std::to_string(k);
            rep.rows.push_back(compare_row("bernoulli", ev, H.nested[ev.n]));
        }
    }
    for (const auto& ev : e.expected_coeffs)
        if (ev.n <= N + 1) rep.rows.push_back(compare_row("coefficient", ev, H.coeffs[ev.n]));

    PowerSeries h = h_series(e.f, e.at, N + 1);
    PowerSeries R = composition_residual(h, H);
    rep.residual_order = R.order();
    rep.composition_residual_zero = R.is_zero();
    finish(rep);
    return rep;
}

VerifyReport verify_reversion_example() {
    const json& j = catalog().reversion_example;
    auto names = j.at("symbols").get<std::vector<std::string>>();
    SymbolSetPtr symbols = make_symbols(names);
    const int N = static_cast<int>(names.size());

    std::vector<ExactScalar> a(N + 1);
    for (int k = 1; k <= N; ++k) a[k] = ExactScalar::symbol(symbols, names[k - 1]);
    PowerSeries h(a, "t");

    // f = 1/h' as an expression, for the expression path.
    std::vector<Expr> terms;
    for (int k = 1; k <= N; ++k)
        terms.push_back(Expr::mul({Expr::constant(a[k] * ExactScalar(k)), Expr::pow(Expr::var(), ExactScalar(k - 1))}));
    Expr f = simplify(Expr::pow(Expr::add(terms), ExactScalar(-1)));
    PointValuation at{ExactScalar(0)};
    std::vector<ExactScalar> d_expr = nested_values_expr(f, at, N - 1);
    std::vector<ExactScalar> d_series = nested_values_series(h.derivative().reciprocal(), N - 1);
    OracleReport oracles = oracle_agreement(h, N);

    VerifyReport rep;
    rep.name = "reversion_example";
    rep.order = N;
    for (const auto& v : j.at("nested")) {
        ExpectedValue ev = read_expected(v, symbols);
        rep.rows.push_back(compare_row("nested", ev, d_expr[ev.n]));
        VerifyRow paths;
        paths.kind = "paths";
        paths.n = ev.n;
        paths.label = "expression path = series path";
        paths.expected = d_expr[ev.n].to_string();
        paths.computed = d_series[ev.n].to_string();
        paths.match = d_expr[ev.n] == d_series[ev.n];
        rep.rows.push_back(std::move(paths));
    }
    for (const auto& v : j.at("coefficients")) {
        ExpectedValue ev = read_expected(v, symbols);
        rep.rows.push_back(compare_row("coefficient", ev, oracles.tables.front().coeffs[ev.n]));
    }
    VerifyRow agree;
    agree.kind = "oracles";
    agree.label = "nested = lagrange = revert = whittaker = morse_feshbach";
    agree.expected = "agree";
    agree.computed = oracles.pass ? "agree" : "disagree";
    agree.match = oracles.pass;
    rep.rows.push_back(std::move(agree));

    // Exact composition check of the nested coefficients.
    InverseSeries H;
    H.b = ExactScalar(0);
    H.f_at_b = a[1].inv();
    H.coeffs = oracles.tables.front().coeffs;
    PowerSeries R = composition_residual(h, H);
    rep.residual_order = R.order();
    rep.composition_residual_zero = R.is_zero();
    finish(rep);
    return rep;
}

std::string VerifyReport::to_text() const {
    std::ostringstream os;
    os << name << " (order " << order << ")\n";
    for (const auto& r : rows) {
        os << "  " << r.kind;
        if (r.kind != "oracles" && r.kind != "f(b)") os << " " << r.n;
        os << ": ";
        if (r.match) {
            os << "match  " << r.computed;
        } else if (r.suspect) {
            os << "MISMATCH (published value marked suspect)\n      published: " << r.expected
               << "\n      computed:  " << r.computed;
        } else {
            os << "MISMATCH\n      published: " << r.expected << "\n      computed:  " << r.computed;
        }
        if (!r.label.empty() && r.label != r.expected) os << "    [" << r.label << "]";
        os << "\n";
    }
    os << "  composition residual h(H(z)) - z: "
       << (composition_residual_zero ? "zero" : "NONZERO") << " through order " << residual_order << "\n";
    if (suspect_mismatches) os << "  " << suspect_mismatches << " suspect published value(s) differ\n";
    os << "result: " << (pass ? "PASS" : "FAIL") << "\n";
    return os.str();
}

std::string VerifyReport::to_json() const {
    json j;
    j["name"] = name;
    j["order"] = order;
    json rs = json::array();
    for (const auto& r : rows)
        rs.push_back({{"kind", r.kind},
                      {"n", r.n},
                      {"label", r.label},
                      {"published", r.expected},
                      {"computed", r.computed},
                      {"match", r.match},
                      {"suspect", r.suspect}});
    j["rows"] = rs;
    j["checks"] = {{"composition_residual_zero", composition_residual_zero}, {"residual_order", residual_order}};
    j["suspect_mismatches"] = suspect_mismatches;
    j["pass"] = pass;
    return j.dump(2);
}

} // namespace nestinv
