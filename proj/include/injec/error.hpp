#pragma once

#include <stdexcept>
#include <string>

namespace injec {

enum class ErrorCode {
    LoopEdge,
    DuplicateEdge,
    VertexOutOfRange,
    UnknownFixture,
    PartialColoring,
    NotBipartition,
    NotBipartite,
    NotSubcubic,
    NotCubic,
    NotRegular,
    DegreeTooHigh,
    BadParams,
    KTooSmall,
    CapExceeded,
    Syntax,
    InvalidDecomposition,
    DecompositionMismatch,
    Io,
};

inline const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::LoopEdge: return "LoopEdge";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::VertexOutOfRange: return "VertexOutOfRange";
    case ErrorCode::UnknownFixture: return "UnknownFixture";
    case ErrorCode::PartialColoring: return "PartialColoring";
    case ErrorCode::NotBipartition: return "NotBipartition";
    case ErrorCode::NotBipartite: return "NotBipartite";
    case ErrorCode::NotSubcubic: return "NotSubcubic";
    case ErrorCode::NotCubic: return "NotCubic";
    case ErrorCode::NotRegular: return "NotRegular";
    case ErrorCode::DegreeTooHigh: return "DegreeTooHigh";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::KTooSmall: return "KTooSmall";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::Syntax: return "Syntax";
    case ErrorCode::InvalidDecomposition: return "InvalidDecomposition";
    case ErrorCode::DecompositionMismatch: return "DecompositionMismatch";
    case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

/// Every recoverable failure in the library is reported through this type;
/// `code()` lets callers dispatch without parsing the message.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace injec
