#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rsp {

enum class ErrorKind {
    NonNormalizedTarget,
    NegativeAlpha,
    BadQubitCount,
    ZeroProbabilityBranch,
    NonUnitary,
    NonNormalizedState,
    SameQubit,
    DuplicateTarget,
    DimensionMismatch,
    QubitOutOfRange,
    MalformedMessage,
    InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Thrown by every library operation whose precondition fails. The kind is
/// stable and is what callers (and the CLI's exit-code mapping) switch on.
class RspError : public std::runtime_error {
  public:
    RspError(ErrorKind kind, const std::string &detail)
        : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
          kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

} // namespace rsp
