/*
 * nestinv C API.
 *
 * Series inversion by nested derivatives: given f, a base point b and the
 * lower limit a of h(x) = integral_a^x dt/f(t), computes the power series of
 * the inverse H = h^{-1} about z0 = h(b) with exact coefficients, checks it
 * against independent reversion methods and published tables, and evaluates
 * it numerically.
 *
 * Usage: create a request for a command, fill in its inputs, run it, read
 * the result, free both handles. Every function that can fail returns a
 * nestinv_status; the message of the most recent failure on the calling
 * thread is available from nestinv_last_error().
 */
#ifndef NESTINV_H
#define NESTINV_H

#include <stddef.h>

#if defined(_WIN32)
#define NESTINV_API __declspec(dllexport)
#elif defined(__GNUC__)
#define NESTINV_API __attribute__((visibility("default")))
#else
#define NESTINV_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nestinv_status {
    NESTINV_OK = 0,
    NESTINV_INVALID_ARGUMENT,
    NESTINV_DIVISION_BY_ZERO,
    NESTINV_SYMBOL_MISMATCH,
    NESTINV_VARIABLE_MISMATCH,
    NESTINV_NONZERO_INNER_CONSTANT,
    NESTINV_ZERO_CONSTANT_TERM,
    NESTINV_BAD_LOW_ORDER_TERMS,
    NESTINV_SYNTAX_ERROR,
    NESTINV_UNKNOWN_SYMBOL,
    NESTINV_UNMAPPED_ATOM,
    NESTINV_INSUFFICIENT_ORDER,
    NESTINV_SINGULAR_POINT,
    NESTINV_NONPOSITIVE_BOUND,
    NESTINV_INDEX_OUT_OF_RANGE,
    NESTINV_UNKNOWN_ENTRY,
    NESTINV_DOMAIN_ERROR,
    NESTINV_NO_CONVERGENCE,
    NESTINV_ORDER_MISMATCH,
    NESTINV_INTERNAL_ERROR
} nestinv_status;

typedef enum nestinv_command {
    NESTINV_CMD_EXPAND = 0,
    NESTINV_CMD_VERIFY,
    NESTINV_CMD_ORACLES,
    NESTINV_CMD_EVAL,
    NESTINV_CMD_GF_CHECK,
    NESTINV_CMD_CATALOG_LIST
} nestinv_command;

typedef enum nestinv_path {
    NESTINV_PATH_AUTO = 0,
    NESTINV_PATH_EXPRESSION,
    NESTINV_PATH_SERIES
} nestinv_path;

typedef struct nestinv_request nestinv_request;
typedef struct nestinv_result nestinv_result;

NESTINV_API const char* nestinv_version(void);
NESTINV_API const char* nestinv_status_name(nestinv_status status);
/* Nonzero when the status describes a malformed request (bad syntax, unknown
 * names, missing or conflicting inputs) rather than a failed computation. */
NESTINV_API int nestinv_status_is_usage(nestinv_status status);
/* Message of the last failure on this thread; empty string if none. */
NESTINV_API const char* nestinv_last_error(void);

NESTINV_API nestinv_status nestinv_request_new(nestinv_command command, nestinv_request** out);
NESTINV_API void nestinv_request_free(nestinv_request* request);

NESTINV_API nestinv_status nestinv_request_set_function(nestinv_request* request, const char* text);
NESTINV_API nestinv_status nestinv_request_set_catalog(nestinv_request* request, const char* name);
NESTINV_API nestinv_status nestinv_request_set_point(nestinv_request* request, const char* text);
/* Comma-separated "name" or "name=value" items; commas inside parentheses
 * do not split. A value such as "2^(nu)" is also declared as an exact atom. */
NESTINV_API nestinv_status nestinv_request_add_symbols(nestinv_request* request, const char* list);
/* Comma-separated exact atom declarations such as "sin(pi/2)=1". */
NESTINV_API nestinv_status nestinv_request_add_atoms(nestinv_request* request, const char* list);
NESTINV_API nestinv_status nestinv_request_set_order(nestinv_request* request, int order);
NESTINV_API nestinv_status nestinv_request_set_eval_at(nestinv_request* request, double z);
NESTINV_API nestinv_status nestinv_request_set_tolerance(nestinv_request* request, double tolerance);
NESTINV_API nestinv_status nestinv_request_set_path(nestinv_request* request, nestinv_path path);

/* Runs the request. On NESTINV_OK *out owns a result (free it with
 * nestinv_result_free); a failed check is still NESTINV_OK with
 * nestinv_result_passed() == 0. */
NESTINV_API nestinv_status nestinv_run(const nestinv_request* request, nestinv_result** out);

NESTINV_API const char* nestinv_result_text(const nestinv_result* result);
NESTINV_API const char* nestinv_result_json(const nestinv_result* result);
NESTINV_API int nestinv_result_passed(const nestinv_result* result);
NESTINV_API int nestinv_result_exit_code(const nestinv_result* result);
NESTINV_API size_t nestinv_result_coefficient_count(const nestinv_result* result);
/* NULL when index is out of range. */
NESTINV_API const char* nestinv_result_coefficient(const nestinv_result* result, size_t index);
/* Return 1 and store the value when present, 0 otherwise. */
NESTINV_API int nestinv_result_value(const nestinv_result* result, double* out);
NESTINV_API int nestinv_result_residual(const nestinv_result* result, double* out);
NESTINV_API size_t nestinv_result_warning_count(const nestinv_result* result);
NESTINV_API const char* nestinv_result_warning(const nestinv_result* result, size_t index);
NESTINV_API void nestinv_result_free(nestinv_result* result);

#ifdef __cplusplus
}
#endif

#endif /* NESTINV_H */
