#pragma once

// Request/response layer shared by the C API and the command-line tool.

#include "nestinv/error.hpp"
#include "nestinv/nested.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nestinv {

enum class Command { Expand, Verify, Oracles, Eval, GfCheck, CatalogList };

struct CommandRequest {
    Command command = Command::Expand;
    std::optional<std::string> function;  // --function
    std::optional<std::string> catalog;   // --catalog
    std::optional<std::string> point;     // --point (function mode; default 0)
    /// "name" or "name=spec": spec is a float value or an expression over
    /// earlier symbols; a spec that is a power or function (e.g. "2^(nu)") is
    /// also declared as an exact atom equal to the symbol.
    std::vector<std::string> symbols;
    std::vector<std::string> atoms;       // "sin(pi/2)=1" style declarations
    std::optional<int> order;
    bool json = false;
    std::optional<double> eval_at;
    std::optional<double> tolerance;
    NestedPath path = NestedPath::Auto;
};

struct CommandResult {
    /// 0 success, 1 a verification/agreement check failed.
    int exit_code = 0;
    std::string text;
    std::string json;
    bool passed = true;
    std::vector<std::string> coefficients;  // expand: b_0..b_N
    std::optional<double> value;            // eval: H(z)
    std::optional<double> residual;         // eval: round-trip residual
    std::vector<std::string> warnings;
};

/// Splits a comma-separated list, ignoring commas nested in parentheses.
std::vector<std::string> split_list(std::string_view text);

/// Error(InvalidArgument) for malformed requests (missing or conflicting
/// inputs); library errors propagate unchanged.
CommandResult run_command(const CommandRequest& req);

/// True for errors caused by the request itself (bad syntax, unknown names,
/// invalid arguments) as opposed to failures of the computation.
bool is_usage_error(ErrorCode code) noexcept;

} // namespace nestinv
