#pragma once

#include <stdexcept>
#include <string>

namespace segreg {

enum class ErrorCode {
    FileNotFound,
    UnsupportedFormat,
    CorruptImage,
    DimensionMismatch,
    EmptyImage,
    GridTooFine,
    NoEdges,
    InvalidSpec,
    InvalidArgument,
    Io,
};

class SegError : public std::runtime_error {
public:
    SegError(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
    throw SegError(code, message);
}

}  // namespace segreg
