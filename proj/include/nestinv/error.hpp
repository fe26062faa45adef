#pragma once

#include <stdexcept>
#include <string>

namespace nestinv {

enum class ErrorCode {
    InvalidArgument,
    DivisionByZero,
    SymbolMismatch,
    VariableMismatch,
    NonzeroInnerConstant,
    ZeroConstantTerm,
    BadLowOrderTerms,
    SyntaxError,
    UnknownSymbol,
    UnmappedAtom,
    InsufficientOrder,
    SingularPoint,
    NonpositiveBound,
    IndexOutOfRange,
    UnknownEntry,
    DomainError,
    NoConvergence,
    OrderMismatch,
};

const char* error_code_name(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// C API can translate it without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t position, const std::string& what)
        : Error(ErrorCode::SyntaxError,
                what + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

} // namespace nestinv
