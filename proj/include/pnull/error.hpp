#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pnull {

enum class ErrorKind {
    IndexOutOfRange,
    LengthMismatch,
    InvalidArgument,
    InvalidPresentation,
    BeyondHorizon,
    NotANode,
    Unsupported,
    WitnessNotFound,
    Integrity,
    CapExceeded,
    Parse,
};

std::string_view to_string(ErrorKind kind);

/// Every failure in the library surfaces as an Error carrying a kind, so
/// the CLI can map it to a report status without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

}  // namespace pnull
