// Command-line front end. Talks to the library only through the C API.

#include "nestinv/nestinv.h"

#include <CLI11.hpp>

#include <cstdio>
#include <memory>
#include <optional>
#include <string>

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitComputation = 3;

struct Options {
    std::optional<std::string> function;
    std::optional<std::string> catalog;
    std::optional<std::string> point;
    std::optional<std::string> symbols;
    std::optional<std::string> atoms;
    std::optional<int> order;
    std::optional<double> eval_at;
    std::optional<double> tolerance;
    std::string format = "text";
    std::string path = "auto";
};

struct RequestDeleter {
    void operator()(nestinv_request* r) const { nestinv_request_free(r); }
};
struct ResultDeleter {
    void operator()(nestinv_result* r) const { nestinv_result_free(r); }
};

int report_failure(nestinv_status status) {
    std::fprintf(stderr, "error (%s): %s\n", nestinv_status_name(status), nestinv_last_error());
    return nestinv_status_is_usage(status) ? kExitUsage : kExitComputation;
}

int run(nestinv_command command, const Options& o) {
    nestinv_request* raw = nullptr;
    if (nestinv_status s = nestinv_request_new(command, &raw); s != NESTINV_OK) return report_failure(s);
    std::unique_ptr<nestinv_request, RequestDeleter> req(raw);

    nestinv_status s = NESTINV_OK;
    auto step = [&](nestinv_status next) {
        if (s == NESTINV_OK) s = next;
    };
    if (o.function) step(nestinv_request_set_function(req.get(), o.function->c_str()));
    if (o.catalog) step(nestinv_request_set_catalog(req.get(), o.catalog->c_str()));
    if (o.point) step(nestinv_request_set_point(req.get(), o.point->c_str()));
    if (o.symbols) step(nestinv_request_add_symbols(req.get(), o.symbols->c_str()));
    if (o.atoms) step(nestinv_request_add_atoms(req.get(), o.atoms->c_str()));
    if (o.order) step(nestinv_request_set_order(req.get(), *o.order));
    if (o.eval_at) step(nestinv_request_set_eval_at(req.get(), *o.eval_at));
    if (o.tolerance) step(nestinv_request_set_tolerance(req.get(), *o.tolerance));
    step(nestinv_request_set_path(req.get(), o.path == "expression" ? NESTINV_PATH_EXPRESSION
                                             : o.path == "series"   ? NESTINV_PATH_SERIES
                                                                    : NESTINV_PATH_AUTO));
    if (s != NESTINV_OK) return report_failure(s);

    nestinv_result* out = nullptr;
    if (s = nestinv_run(req.get(), &out); s != NESTINV_OK) return report_failure(s);
    std::unique_ptr<nestinv_result, ResultDeleter> result(out);

    if (o.format == "json") {
        std::printf("%s\n", nestinv_result_json(result.get()));
    } else {
        std::fputs(nestinv_result_text(result.get()), stdout);
    }
    for (size_t i = 0; i < nestinv_result_warning_count(result.get()); ++i)
        std::fprintf(stderr, "warning: %s\n", nestinv_result_warning(result.get(), i));
    return nestinv_result_exit_code(result.get());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"nestinv: exact and numeric series for inverse functions"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(nestinv_version()));

    Options o;
    auto add_problem = [&](CLI::App* sub, bool with_eval) {
        auto* fn = sub->add_option("--function", o.function, "f(x) in the expression grammar");
        auto* cat = sub->add_option("--catalog", o.catalog, "named catalog entry");
        fn->excludes(cat);
        sub->add_option("--point", o.point, "base point b (default 0)");
        sub->add_option("--symbols", o.symbols, "comma-separated name or name=value items");
        sub->add_option("--atoms", o.atoms, "comma-separated exact atoms such as \"sin(pi/2)=1\"");
        sub->add_option("--order", o.order, "truncation order N")->check(CLI::PositiveNumber);
        sub->add_option("--path", o.path, "nested-derivative route")
            ->check(CLI::IsMember({"auto", "expression", "series"}));
        if (with_eval) {
            sub->add_option("--eval-at", o.eval_at, "evaluation point z")->required();
            sub->add_option("--tolerance", o.tolerance, "relative quadrature tolerance")
                ->check(CLI::PositiveNumber);
        }
    };
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}));
    };

    auto* expand = app.add_subcommand("expand", "coefficients of the inverse series");
    add_problem(expand, false);
    add_format(expand);
    auto* verify = app.add_subcommand("verify", "compare a catalog entry with its published tables");
    verify->add_option("--catalog", o.catalog, "catalog entry or reversion_example")->required();
    verify->add_option("--order", o.order, "highest nested order to compare")->check(CLI::PositiveNumber);
    add_format(verify);
    auto* oracles = app.add_subcommand("oracles", "agreement of five independent reversion methods");
    add_problem(oracles, false);
    add_format(oracles);
    auto* eval = app.add_subcommand("eval", "evaluate the truncated inverse series numerically");
    add_problem(eval, true);
    add_format(eval);
    auto* gf = app.add_subcommand("gf-check", "generating-function identities for f = x and f = x^r");
    gf->add_option("--function", o.function, "x or x^r")->required();
    gf->add_option("--order", o.order, "number of coefficients")->check(CLI::PositiveNumber);
    add_format(gf);
    auto* list = app.add_subcommand("catalog-list", "list catalog entries");
    add_format(list);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    if (*expand) return run(NESTINV_CMD_EXPAND, o);
    if (*verify) return run(NESTINV_CMD_VERIFY, o);
    if (*oracles) return run(NESTINV_CMD_ORACLES, o);
    if (*eval) return run(NESTINV_CMD_EVAL, o);
    if (*gf) return run(NESTINV_CMD_GF_CHECK, o);
    return run(NESTINV_CMD_CATALOG_LIST, o);
}
