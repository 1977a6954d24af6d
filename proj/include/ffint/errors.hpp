#pragma once

#include <stdexcept>
#include <string>

namespace ffint {

/// Error categories raised by the library. The CLI maps these onto exit
/// codes: config/input problems -> 2, budget -> 3, internal invariant
/// violations -> 4.
enum class ErrorCode {
    NotPrime,
    BadModulus,
    DivisionByZero,
    FieldMismatch,
    ZeroPolynomial,
    ConstantPolynomial,
    SingularModel,
    EvenDegree,
    CharTwoUnsupported,
    UnsupportedDivisor,
    PoleOutsideE,
    NotIrreducible,
    NotSplit,
    ZeroElement,
    NotShort,
    WrongArity,
    BudgetExceeded,
    TableTooSmall,
    ConfigError,
    InternalParityError,
    InternalError,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::NotPrime: return "NotPrime";
        case ErrorCode::BadModulus: return "BadModulus";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::FieldMismatch: return "FieldMismatch";
        case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
        case ErrorCode::ConstantPolynomial: return "ConstantPolynomial";
        case ErrorCode::SingularModel: return "SingularModel";
        case ErrorCode::EvenDegree: return "EvenDegree";
        case ErrorCode::CharTwoUnsupported: return "CharTwoUnsupported";
        case ErrorCode::UnsupportedDivisor: return "UnsupportedDivisor";
        case ErrorCode::PoleOutsideE: return "PoleOutsideE";
        case ErrorCode::NotIrreducible: return "NotIrreducible";
        case ErrorCode::NotSplit: return "NotSplit";
        case ErrorCode::ZeroElement: return "ZeroElement";
        case ErrorCode::NotShort: return "NotShort";
        case ErrorCode::WrongArity: return "WrongArity";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::TableTooSmall: return "TableTooSmall";
        case ErrorCode::ConfigError: return "ConfigError";
        case ErrorCode::InternalParityError: return "InternalParityError";
        case ErrorCode::InternalError: return "InternalError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string& msg)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + msg), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

   private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

} // namespace ffint
