#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bjlevel {

/// Machine-readable error categories. The CLI maps input errors to exit code 2
/// and internal errors to exit code 3.
enum class ErrorCode {
  DimensionMismatch,
  MalformedInput,
  ZeroVector,
  NotUnitVector,
  NotPolyhedral,
  NotLevelVector,
  DependentBasis,
  NotSupporting,
  MixedArithmetic,
  TooLarge,
  Internal,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  bool is_internal() const noexcept { return code_ == ErrorCode::Internal; }

 private:
  ErrorCode code_;
};

/// Raised when a computed result contradicts a fact the algorithm relies
/// on (for example inconsistent scales after an isometry certificate).
class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what)
      : Error(ErrorCode::Internal, what) {}
};

}  // namespace bjlevel
