#include "nestinv/nestinv.h"

#include "nestinv/commands.hpp"
#include "nestinv/error.hpp"

#include <new>
#include <string>

struct nestinv_request {
    nestinv::CommandRequest req;
};

struct nestinv_result {
    nestinv::CommandResult res;
};

namespace {

thread_local std::string g_last_error;

nestinv_status fail(nestinv_status s, std::string message) {
    g_last_error = std::move(message);
    return s;
}

nestinv_status from_code(nestinv::ErrorCode code) {
    return static_cast<nestinv_status>(static_cast<int>(code) + 1);
}

// Runs body, translating exceptions into status codes.
template <class Body>
nestinv_status guarded(Body&& body) {
    try {
        g_last_error.clear();
        body();
        return NESTINV_OK;
    } catch (const nestinv::Error& e) {
        return fail(from_code(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(NESTINV_INTERNAL_ERROR, "out of memory");
    } catch (const std::exception& e) {
        return fail(NESTINV_INTERNAL_ERROR, e.what());
    } catch (...) {
        return fail(NESTINV_INTERNAL_ERROR, "unknown failure");
    }
}

#define NESTINV_REQUIRE(ptr)                                                                                  \
    do {                                                                                                      \
        if (!(ptr)) return fail(NESTINV_INVALID_ARGUMENT, #ptr " must not be NULL");                          \
    } while (0)

} // namespace

static_assert(static_cast<int>(nestinv::ErrorCode::OrderMismatch) + 1 == NESTINV_ORDER_MISMATCH,
              "nestinv_status must mirror nestinv::ErrorCode");

extern "C" {

const char* nestinv_version(void) { return "1.0.0"; }

const char* nestinv_status_name(nestinv_status status) {
    if (status == NESTINV_OK) return "ok";
    if (status == NESTINV_INTERNAL_ERROR) return "internal_error";
    if (status < NESTINV_OK || status > NESTINV_INTERNAL_ERROR) return "unknown_status";
    return nestinv::error_code_name(static_cast<nestinv::ErrorCode>(static_cast<int>(status) - 1));
}

int nestinv_status_is_usage(nestinv_status status) {
    if (status <= NESTINV_OK || status >= NESTINV_INTERNAL_ERROR) return 0;
    return nestinv::is_usage_error(static_cast<nestinv::ErrorCode>(static_cast<int>(status) - 1)) ? 1 : 0;
}

const char* nestinv_last_error(void) { return g_last_error.c_str(); }

nestinv_status nestinv_request_new(nestinv_command command, nestinv_request** out) {
    NESTINV_REQUIRE(out);
    *out = nullptr;
    if (command < NESTINV_CMD_EXPAND || command > NESTINV_CMD_CATALOG_LIST)
        return fail(NESTINV_INVALID_ARGUMENT, "unknown command");
    return guarded([&] {
        auto* r = new nestinv_request{};
        r->req.command = static_cast<nestinv::Command>(command);
        *out = r;
    });
}

void nestinv_request_free(nestinv_request* request) { delete request; }

nestinv_status nestinv_request_set_function(nestinv_request* request, const char* text) {
    NESTINV_REQUIRE(request);
    NESTINV_REQUIRE(text);
    return guarded([&] { request->req.function = text; });
}

nestinv_status nestinv_request_set_catalog(nestinv_request* request, const char* name) {
    NESTINV_REQUIRE(request);
    NESTINV_REQUIRE(name);
    return guarded([&] { request->req.catalog = name; });
}

nestinv_status nestinv_request_set_point(nestinv_request* request, const char* text) {
    NESTINV_REQUIRE(request);
    NESTINV_REQUIRE(text);
    return guarded([&] { request->req.point = text; });
}

nestinv_status nestinv_request_add_symbols(nestinv_request* request, const char* list) {
    NESTINV_REQUIRE(request);
    NESTINV_REQUIRE(list);
    return guarded([&] {
        for (auto& s : nestinv::split_list(list)) request->req.symbols.push_back(std::move(s));
    });
}

nestinv_status nestinv_request_add_atoms(nestinv_request* request, const char* list) {
    NESTINV_REQUIRE(request);
    NESTINV_REQUIRE(list);
    return guarded([&] {
        for (auto& s : nestinv::split_list(list)) request->req.atoms.push_back(std::move(s));
    });
}

nestinv_status nestinv_request_set_order(nestinv_request* request, int order) {
    NESTINV_REQUIRE(request);
    if (order < 1) return fail(NESTINV_INVALID_ARGUMENT, "order must be at least 1");
    request->req.order = order;
    return NESTINV_OK;
}

nestinv_status nestinv_request_set_eval_at(nestinv_request* request, double z) {
    NESTINV_REQUIRE(request);
    if (z != z) return fail(NESTINV_INVALID_ARGUMENT, "evaluation point must be a number");
    request->req.eval_at = z;
    return NESTINV_OK;
}

nestinv_status nestinv_request_set_tolerance(nestinv_request* request, double tolerance) {
    NESTINV_REQUIRE(request);
    if (!(tolerance > 0)) return fail(NESTINV_INVALID_ARGUMENT, "tolerance must be positive");
    request->req.tolerance = tolerance;
    return NESTINV_OK;
}

nestinv_status nestinv_request_set_path(nestinv_request* request, nestinv_path path) {
    NESTINV_REQUIRE(request);
    switch (path) {
    case NESTINV_PATH_AUTO:
        request->req.path = nestinv::NestedPath::Auto;
        return NESTINV_OK;
    case NESTINV_PATH_EXPRESSION:
        request->req.path = nestinv::NestedPath::Expression;
        return NESTINV_OK;
    case NESTINV_PATH_SERIES:
        request->req.path = nestinv::NestedPath::Series;
        return NESTINV_OK;
    }
    return fail(NESTINV_INVALID_ARGUMENT, "unknown path");
}

nestinv_status nestinv_run(const nestinv_request* request, nestinv_result** out) {
    NESTINV_REQUIRE(request);
    NESTINV_REQUIRE(out);
    *out = nullptr;
    return guarded([&] { *out = new nestinv_result{nestinv::run_command(request->req)}; });
}

const char* nestinv_result_text(const nestinv_result* result) { return result ? result->res.text.c_str() : ""; }

const char* nestinv_result_json(const nestinv_result* result) { return result ? result->res.json.c_str() : ""; }

int nestinv_result_passed(const nestinv_result* result) { return result && result->res.passed ? 1 : 0; }

int nestinv_result_exit_code(const nestinv_result* result) { return result ? result->res.exit_code : 1; }

size_t nestinv_result_coefficient_count(const nestinv_result* result) {
    return result ? result->res.coefficients.size() : 0;
}

const char* nestinv_result_coefficient(const nestinv_result* result, size_t index) {
    if (!result || index >= result->res.coefficients.size()) return nullptr;
    return result->res.coefficients[index].c_str();
}

int nestinv_result_value(const nestinv_result* result, double* out) {
    if (!result || !result->res.value) return 0;
    if (out) *out = *result->res.value;
    return 1;
}

int nestinv_result_residual(const nestinv_result* result, double* out) {
    if (!result || !result->res.residual) return 0;
    if (out) *out = *result->res.residual;
    return 1;
}

size_t nestinv_result_warning_count(const nestinv_result* result) { return result ? result->res.warnings.size() : 0; }

const char* nestinv_result_warning(const nestinv_result* result, size_t index) {
    if (!result || index >= result->res.warnings.size()) return nullptr;
    return result->res.warnings[index].c_str();
}

void nestinv_result_free(nestinv_result* result) { delete result; }

} // extern "C"
