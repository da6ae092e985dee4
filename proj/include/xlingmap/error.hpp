#pragma once

#include <stdexcept>
#include <string>

namespace xlingmap {

// Error classes map 1:1 to CLI exit codes, keep them coarse.
enum class ErrorKind {
    Io,               // file missing / unreadable / unwritable
    Parse,            // malformed input file
    Validation,       // contract violation in otherwise well-formed data
    Oov,              // out-of-vocabulary word
    Dimension,        // vector/matrix shape mismatch
    InsufficientData, // too few rows/pairs/points for the requested operation
    Singular,         // normal matrix not solvable
    EmptyFingerprint, // document with zero in-vocabulary tokens
    InvalidArgument,  // bad parameter value
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline int exit_code(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Io: return 10;
        case ErrorKind::Parse: return 11;
        case ErrorKind::Validation: return 12;
        case ErrorKind::Oov: return 13;
        case ErrorKind::Dimension: return 14;
        case ErrorKind::InsufficientData: return 15;
        case ErrorKind::Singular: return 16;
        case ErrorKind::EmptyFingerprint: return 17;
        case ErrorKind::InvalidArgument: return 18;
    }
    return 70;
}

} // namespace xlingmap
