#pragma once

#include <stdexcept>
#include <string>

namespace chaosgraph {

enum class ErrorKind {
    InvalidInput,
    LoopEdge,
    DuplicateEdge,
    IsolatedVertex,
    LabelOutOfRange,
    InvalidWeight,
    NumericalFailure,
    EmptySet,
    TooLargeForExact,
    InvalidK,
    SizeLimitExceeded,
    NonSymmetricCoefficients,
    DiagonalSupport,
    InvalidM,
    LayoutSizeMismatch,
    DisconnectedPartition,
    RowCollision,
    BlockSizeError,
    InvalidAlpha,
    WrongOrder,
    CapExceeded,
    MemoryLimit,
    InvalidDistribution,
    OverlappingBlocks,
    BlocksNotInVprime,
    BetaOutOfRange,
    FamilyTooSmall,
    InvalidEpsilon,
};

inline const char* kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::LoopEdge: return "LoopEdge";
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::IsolatedVertex: return "IsolatedVertex";
    case ErrorKind::LabelOutOfRange: return "LabelOutOfRange";
    case ErrorKind::InvalidWeight: return "InvalidWeight";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::TooLargeForExact: return "TooLargeForExact";
    case ErrorKind::InvalidK: return "InvalidK";
    case ErrorKind::SizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorKind::NonSymmetricCoefficients: return "NonSymmetricCoefficients";
    case ErrorKind::DiagonalSupport: return "DiagonalSupport";
    case ErrorKind::InvalidM: return "InvalidM";
    case ErrorKind::LayoutSizeMismatch: return "LayoutSizeMismatch";
    case ErrorKind::DisconnectedPartition: return "DisconnectedPartition";
    case ErrorKind::RowCollision: return "RowCollision";
    case ErrorKind::BlockSizeError: return "BlockSizeError";
    case ErrorKind::InvalidAlpha: return "InvalidAlpha";
    case ErrorKind::WrongOrder: return "WrongOrder";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::MemoryLimit: return "MemoryLimit";
    case ErrorKind::InvalidDistribution: return "InvalidDistribution";
    case ErrorKind::OverlappingBlocks: return "OverlappingBlocks";
    case ErrorKind::BlocksNotInVprime: return "BlocksNotInVprime";
    case ErrorKind::BetaOutOfRange: return "BetaOutOfRange";
    case ErrorKind::FamilyTooSmall: return "FamilyTooSmall";
    case ErrorKind::InvalidEpsilon: return "InvalidEpsilon";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }
    const char* name() const noexcept { return kind_name(kind_); }

private:
    ErrorKind kind_;
};

// CLI exit status: 3 for numerical trouble, 2 for everything the caller got wrong.
inline int exit_code(ErrorKind k) {
    return k == ErrorKind::NumericalFailure ? 3 : 2;
}

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) {
    throw Error(k, msg);
}

} // namespace chaosgraph
