#pragma once

#include <stdexcept>
#include <string>

namespace qchar {

enum class ErrorKind {
    DivisionByZero,
    Pole,
    AmbiguousRegion,
    NonExpandable,
    InfiniteFactor,
    SpecMismatch,
    Precondition,
    Overflow,
    NonGeneric,
    NotStabilized,
    Parse,
    SamplingBudget,
};

const char* to_string(ErrorKind kind);

/// All recoverable failures in the library are reported through this type.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DivisionByZero: return "division by zero";
        case ErrorKind::Pole: return "pole";
        case ErrorKind::AmbiguousRegion: return "ambiguous expansion region";
        case ErrorKind::NonExpandable: return "non-expandable pure-q factor";
        case ErrorKind::InfiniteFactor: return "evaluate requires finite expression";
        case ErrorKind::SpecMismatch: return "truncation spec mismatch";
        case ErrorKind::Precondition: return "precondition violated";
        case ErrorKind::Overflow: return "integer overflow";
        case ErrorKind::NonGeneric: return "non-generic pattern";
        case ErrorKind::NotStabilized: return "cutoff did not stabilize";
        case ErrorKind::Parse: return "parse error";
        case ErrorKind::SamplingBudget: return "sampling budget exhausted";
    }
    return "error";
}

}  // namespace qchar
