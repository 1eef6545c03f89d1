#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace roengine {

/// Closed set of failure cases raised by the engine. The HTTP layer maps each
/// one to exactly one (status, code) pair.
enum class ErrorCode {
    // store / model
    DuplicateId,
    DuplicateResource,
    ImmutableObject,
    UnknownTarget,
    EmptyBody,
    SyntaxError,
    ModelError,
    NotFound,
    InvalidArgument,
    IoError,
    // lifecycle
    NotMutable,
    NotPublic,
    NotLive,
    NotReleased,
    RegistryUnavailable,
    // quality
    EmptyHistory,
    UnknownChecklist,
    InvalidChecklist,
    // similarity
    UnknownDocument,
    ContextSizeOutOfRange,
    // evaluation
    UnknownCategory,
    NoPath,
    NoCommonAncestor,
    DatasetTooSmall,
    // search
    UnknownFacet,
    InvalidBox,
    // api
    Unauthorized,
    Forbidden,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::DuplicateResource: return "DuplicateResource";
    case ErrorCode::ImmutableObject: return "ImmutableObject";
    case ErrorCode::UnknownTarget: return "UnknownTarget";
    case ErrorCode::EmptyBody: return "EmptyBody";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::ModelError: return "ModelError";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::NotMutable: return "NotMutable";
    case ErrorCode::NotPublic: return "NotPublic";
    case ErrorCode::NotLive: return "NotLive";
    case ErrorCode::NotReleased: return "NotReleased";
    case ErrorCode::RegistryUnavailable: return "RegistryUnavailable";
    case ErrorCode::EmptyHistory: return "EmptyHistory";
    case ErrorCode::UnknownChecklist: return "UnknownChecklist";
    case ErrorCode::InvalidChecklist: return "InvalidChecklist";
    case ErrorCode::UnknownDocument: return "UnknownDocument";
    case ErrorCode::ContextSizeOutOfRange: return "ContextSizeOutOfRange";
    case ErrorCode::UnknownCategory: return "UnknownCategory";
    case ErrorCode::NoPath: return "NoPath";
    case ErrorCode::NoCommonAncestor: return "NoCommonAncestor";
    case ErrorCode::DatasetTooSmall: return "DatasetTooSmall";
    case ErrorCode::UnknownFacet: return "UnknownFacet";
    case ErrorCode::InvalidBox: return "InvalidBox";
    case ErrorCode::Unauthorized: return "Unauthorized";
    case ErrorCode::Forbidden: return "Forbidden";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Parse failure with a 1-based source position.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t line, std::size_t column, const std::string& message)
        : Error(ErrorCode::SyntaxError,
                "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace roengine
