#include "nestinv/commands.hpp"

#include "nestinv/catalog.hpp"
#include "nestinv/inverse.hpp"
#include "nestinv/numeric.hpp"
#include "nestinv/oracles.hpp"

#include <json.hpp>

#include <cmath>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>

namespace nestinv {

namespace {

using nlohmann::json;

constexpr const char* kReversionExample = "reversion_example";

Error usage(const std::string& what) { return Error(ErrorCode::InvalidArgument, what); }

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

std::string fmt_double(double v) {
    std::ostringstream os;
    os << std::setprecision(15) << v;
    return os.str();
}

// Everything needed to pose the inversion problem, from either a catalog
// entry or a free-form function.
struct Setup {
    std::string name;
    std::string function_text;
    std::string point_text;
    SymbolSetPtr symbols;
    Expr f;
    PointValuation at;
    const CatalogEntry* entry = nullptr;
    std::optional<FloatContext> floats;  // present when every symbol has a value
    std::string float_problem;           // why floats is absent
};

Setup setup_from_request(const CommandRequest& req) {
    if (req.function && req.catalog) throw usage("give either --function or --catalog, not both");
    if (!req.function && !req.catalog) throw usage("one of --function or --catalog is required");
    Setup s;
    if (req.catalog) {
        if (req.point || !req.symbols.empty() || !req.atoms.empty())
            throw usage("--point, --symbols and --atoms apply to --function only; catalog entries carry their own");
        const CatalogEntry& e = catalog_get(*req.catalog);
        s.entry = &e;
        s.name = e.name;
        s.function_text = e.function_text;
        s.point_text = e.point_text;
        s.symbols = e.symbols;
        s.f = e.f;
        s.at = e.at;
        s.floats = e.float_context();
        if (req.tolerance) s.floats->tolerance = *req.tolerance;
        return s;
    }

    std::vector<std::string> names;
    std::vector<std::optional<std::string>> specs;
    for (const auto& item : req.symbols) {
        auto eq = item.find('=');
        names.push_back(trim(item.substr(0, eq)));
        if (eq == std::string::npos) {
            specs.emplace_back();
        } else {
            specs.push_back(trim(item.substr(eq + 1)));
        }
    }
    s.symbols = make_symbols(names);
    s.name = *req.function;
    s.function_text = *req.function;
    s.point_text = req.point.value_or("0");
    s.f = parse_expression(s.function_text, s.symbols);
    s.at = PointValuation(parse_scalar(s.point_text, s.symbols));

    std::vector<double> values(names.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (!specs[i]) {
            if (names[i] == "pi") values[i] = M_PI;
            if (names[i] == "e") values[i] = M_E;
            continue;
        }
        Expr spec = parse_expression(*specs[i], s.symbols);
        if (spec.depends_on_var()) throw usage("symbol value '" + *specs[i] + "' must not depend on x");
        if (spec.kind() == NodeKind::Pow || spec.kind() == NodeKind::Prim)
            s.at.declare(*specs[i] + "=" + names[i], s.symbols);
        values[i] = eval_float(spec, 0.0, values);
    }
    for (const auto& a : req.atoms) s.at.declare(a, s.symbols);

    FloatContext ctx(s.symbols);
    bool complete = true;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (std::isfinite(values[i])) {
            ctx.bind(names[i], values[i]);
        } else {
            complete = false;
            s.float_problem = "symbol '" + names[i] + "' has no numeric value (use --symbols " + names[i] + "=VALUE)";
        }
    }
    if (complete) {
        if (req.tolerance) ctx.tolerance = *req.tolerance;
        s.floats = std::move(ctx);
    }
    return s;
}

InverseProblem problem_for(const Setup& s, int order) {
    if (s.entry) return s.entry->problem(order);
    InverseProblem p;
    p.f = s.f;
    p.at = s.at;
    p.order = order;
    p.z0 = ExactScalar(0);  // h is based at b
    return p;
}

int order_or(const CommandRequest& req, int fallback) {
    int n = req.order.value_or(fallback);
    if (n < 1) throw usage("--order must be at least 1");
    return n;
}

struct Z0 {
    bool exact = true;
    std::string exact_text = "0";
    double value = 0;
    double error = 0;
    bool principal_value = false;
};

Z0 resolve_z0(const Setup& s, const InverseSeries& H) {
    Z0 z;
    if (H.z0) {
        z.exact = true;
        z.exact_text = H.z0->to_string();
        if (s.floats) z.value = H.z0->evaluate(s.floats->values());
        return z;
    }
    z.exact = false;
    QuadratureResult q = s.entry->z0_numeric(*s.floats);
    z.value = q.value;
    z.error = q.error;
    z.principal_value = s.entry->principal_value_at.has_value();
    return z;
}

json z0_json(const Z0& z) {
    if (z.exact) return {{"kind", "exact"}, {"value", z.exact_text}};
    json j = {{"kind", "numeric"}, {"value", z.value}, {"error_estimate", z.error}};
    if (z.principal_value) j["principal_value"] = true;
    return j;
}

CommandResult run_expand(const CommandRequest& req) {
    Setup s = setup_from_request(req);
    const int N = order_or(req, 8);
    InverseSeries H = invert(problem_for(s, N), req.path);
    PowerSeries h = h_series(s.f, s.at, N);
    PowerSeries R = composition_residual(h, H);
    const bool residual_zero = R.is_zero();
    Z0 z0 = resolve_z0(s, H);

    CommandResult out;
    out.passed = residual_zero;
    out.exit_code = residual_zero ? 0 : 1;
    for (const auto& c : H.coeffs) out.coefficients.push_back(c.to_string());

    const std::string var = z0.exact && z0.exact_text == "0" ? "z" : "w";
    std::ostringstream t;
    t << "f(x) = " << s.function_text << ", b = " << H.b.to_string() << ", f(b) = " << H.f_at_b.to_string() << "\n";
    if (z0.exact) {
        t << "z0 = " << z0.exact_text << "\n";
    } else {
        t << "z0 = " << fmt_double(z0.value) << " (numeric" << (z0.principal_value ? ", principal value" : "")
          << ", error estimate " << z0.error << ")\n";
    }
    t << "H(z) = " << PowerSeries(H.coeffs, var).to_string();
    if (var == "w") t << "    where w = z - z0";
    t << "\n";
    t << "composition residual h(H(z)) - z: " << (residual_zero ? "zero" : "NONZERO") << " through order "
      << R.order() << "\n";
    out.text = t.str();

    json j;
    j["name"] = s.name;
    j["function"] = s.function_text;
    j["point"] = H.b.to_string();
    j["f_at_b"] = H.f_at_b.to_string();
    j["z0"] = z0_json(z0);
    j["coefficients"] = out.coefficients;
    j["order"] = N;
    json nested = json::array();
    for (const auto& d : H.nested) nested.push_back(d.to_string());
    j["nested"] = nested;
    if (s.floats) j["approx"] = coefficients_float(H, s.floats->values());
    j["checks"] = {{"composition_residual_zero", residual_zero}};
    out.json = j.dump(2);
    return out;
}

CommandResult run_verify(const CommandRequest& req) {
    if (!req.catalog) throw usage("verify needs --catalog NAME");
    if (req.function || req.point || !req.symbols.empty() || !req.atoms.empty())
        throw usage("verify takes only --catalog, --order and --format");
    VerifyReport rep = *req.catalog == kReversionExample ? verify_reversion_example()
                                                         : verify_entry(*req.catalog, order_or(req, 10));
    CommandResult out;
    out.passed = rep.pass;
    out.exit_code = rep.pass ? 0 : 1;
    out.text = rep.to_text();
    out.json = rep.to_json();
    return out;
}

PowerSeries generic_series(int N) {
    std::vector<std::string> names;
    for (int k = 1; k <= N; ++k) names.push_back("a" + std::to_string(k));
    SymbolSetPtr sy = make_symbols(names);
    std::vector<ExactScalar> a(N + 1);
    for (int k = 1; k <= N; ++k) a[k] = ExactScalar::symbol(sy, names[k - 1]);
    return PowerSeries(std::move(a), "t");
}

CommandResult run_oracles(const CommandRequest& req) {
    OracleReport rep;
    if (req.catalog && *req.catalog == kReversionExample) {
        const int N = order_or(req, 5);
        rep = oracle_agreement(generic_series(N), N);
    } else {
        Setup s = setup_from_request(req);
        rep = oracle_agreement(problem_for(s, order_or(req, 8)), order_or(req, 8));
    }
    CommandResult out;
    out.passed = rep.pass;
    out.exit_code = rep.pass ? 0 : 1;
    out.text = rep.to_text();
    out.json = rep.to_json();
    return out;
}

CommandResult run_eval(const CommandRequest& req) {
    if (!req.eval_at) throw usage("eval needs --eval-at Z");
    Setup s = setup_from_request(req);
    if (!s.floats) throw usage(s.float_problem);
    const int N = order_or(req, 15);
    InverseSeries H = invert(problem_for(s, N), req.path);
    Z0 z0 = resolve_z0(s, H);
    NumericEvaluation ev =
        inverse_eval_numeric(H, s.f, *req.eval_at, *s.floats, z0.exact ? std::nullopt : std::optional(z0.value));

    CommandResult out;
    out.value = ev.value;
    out.residual = ev.residual;
    if (ev.radius_exceeded) {
        std::ostringstream w;
        w << "|z - z0| = " << std::abs(ev.z - ev.z0) << " exceeds the " << ev.radius_kind << " radius " << ev.radius
          << "; the truncated series may be inaccurate";
        out.warnings.push_back(w.str());
    }
    std::ostringstream t;
    t << "H(" << fmt_double(ev.z) << ") = " << fmt_double(ev.value) << "\n";
    t << "z0 = " << fmt_double(ev.z0) << (z0.exact ? " (exact)" : " (numeric)") << ", order " << N << "\n";
    t << "round-trip residual |h(H(z)) - z| = " << ev.residual << "\n";
    t << ev.radius_kind << " radius = " << ev.radius << (ev.radius_exceeded ? " (exceeded)" : "") << "\n";
    out.text = t.str();

    json j;
    j["name"] = s.name;
    j["z"] = ev.z;
    j["z0"] = z0_json(z0);
    j["order"] = N;
    j["value"] = ev.value;
    j["residual"] = ev.residual;
    j["radius"] = {{"kind", ev.radius_kind}, {"value", ev.radius}, {"exceeded", ev.radius_exceeded}};
    j["warnings"] = out.warnings;
    out.json = j.dump(2);
    return out;
}

CommandResult run_gf_check(const CommandRequest& req) {
    if (!req.function) throw usage("gf-check needs --function x or --function \"x^r\"");
    Expr f = parse_expression(*req.function, nullptr);
    GfCase which;
    BigRational r(1);
    if (f.kind() == NodeKind::Var) {
        which = GfCase::Identity;
    } else if (f.kind() == NodeKind::Pow && f.child(0).kind() == NodeKind::Var && f.exponent().as_rational()) {
        which = GfCase::Power;
        r = *f.exponent().as_rational();
    } else {
        throw usage("gf-check supports f = x and f = x^r with rational r");
    }
    const int N = order_or(req, 6);
    // Fixed-seed sample points keep the command reproducible.
    std::mt19937 gen(20240601u);
    std::uniform_int_distribution<int> num(1, 30), den(1, 9);
    std::vector<BigRational> samples;
    for (int i = 0; i < 5; ++i) {
        BigRational q(num(gen), den(gen));
        q.canonicalize();
        samples.push_back(q);
    }
    GfCheckReport rep = gf_check(which, r, N, samples);

    CommandResult out;
    out.passed = rep.pass;
    out.exit_code = rep.pass ? 0 : 1;
    std::ostringstream t;
    t << "f(x) = " << f.to_string() << ", generating function through z^" << N << "\n";
    json rows = json::array();
    for (const auto& row : rep.rows) {
        t << "  x = " << to_string(row.x) << ": " << (row.equal ? "match" : "MISMATCH") << "  [";
        json cs = json::array(), cf = json::array();
        for (std::size_t n = 0; n < row.computed.size(); ++n) {
            t << (n ? ", " : "") << row.computed[n].to_string();
            cs.push_back(row.computed[n].to_string());
            cf.push_back(row.closed_form[n].to_string());
        }
        t << "]\n";
        rows.push_back({{"x", to_string(row.x)}, {"computed", cs}, {"closed_form", cf}, {"match", row.equal}});
    }
    t << "result: " << (rep.pass ? "PASS" : "FAIL") << "\n";
    out.text = t.str();
    json j = {{"function", f.to_string()}, {"order", N}, {"rows", rows}, {"pass", rep.pass}};
    out.json = j.dump(2);
    return out;
}

CommandResult run_catalog_list() {
    CommandResult out;
    std::ostringstream t;
    json arr = json::array();
    for (const auto& name : catalog_list()) {
        const CatalogEntry& e = catalog_get(name);
        t << std::left << std::setw(26) << name << " f(x) = " << e.function_text << ", b = " << e.point_text << "\n";
        arr.push_back({{"name", name},
                       {"function", e.function_text},
                       {"point", e.point_text},
                       {"symbols", e.symbol_names},
                       {"description", e.description}});
    }
    t << std::left << std::setw(26) << kReversionExample << " generic series a1 t + ... + a5 t^5 (verify, oracles)\n";
    out.text = t.str();
    out.json = json{{"entries", arr}, {"extra", {kReversionExample}}}.dump(2);
    return out;
}

} // namespace

std::vector<std::string> split_list(std::string_view text) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : text) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            if (!trim(cur).empty()) out.push_back(trim(cur));
            cur.clear();
            continue;
        }
        cur += c;
    }
    if (!trim(cur).empty()) out.push_back(trim(cur));
    return out;
}

bool is_usage_error(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::SyntaxError:
    case ErrorCode::UnknownSymbol:
    case ErrorCode::UnknownEntry:
    case ErrorCode::SymbolMismatch:
        return true;
    default:
        return false;
    }
}

CommandResult run_command(const CommandRequest& req) {
    switch (req.command) {
    case Command::Expand:
        return run_expand(req);
    case Command::Verify:
        return run_verify(req);
    case Command::Oracles:
        return run_oracles(req);
    case Command::Eval:
        return run_eval(req);
    case Command::GfCheck:
        return run_gf_check(req);
    case Command::CatalogList:
        return run_catalog_list();
    }
    throw usage("unknown command");
}

} // namespace nestinv
